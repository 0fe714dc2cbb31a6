#pragma once

#include <cstdint>

namespace driftsvm {

/// Running confusion counts; truth is the first index, prediction the second.
struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;

  void record(int truth, int predicted) {
    if (truth > 0) {
      (predicted > 0 ? tp : fn) += 1;
    } else {
      (predicted > 0 ? fp : tn) += 1;
    }
  }

  std::uint64_t positives() const { return tp + fn; }
  std::uint64_t negatives() const { return tn + fp; }
};

/// Arithmetic mean of the true positive and true negative rates. Throws
/// std::domain_error while either class is unseen; callers report that as
/// missing, never as zero.
double balanced_accuracy(const ConfusionCounts& c);

}  // namespace driftsvm
