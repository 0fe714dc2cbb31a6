#pragma once

#include <cstdint>
#include <vector>

namespace driftsvm {

/// One stream element: feature vector, true label (+1 or -1), and the
/// position at which it arrived in the stream.
struct Sample {
  std::vector<double> features;
  int label = 1;
  std::uint64_t arrival_index = 0;
};

/// Per-class cost multipliers for the soft-margin penalty. The effective box
/// bound of a sample with label y is C * for_label(y).
struct ClassWeights {
  double positive = 1.0;
  double negative = 1.0;
  double for_label(int y) const { return y > 0 ? positive : negative; }
};

/// Linear decision function f(x) = <w, x> + b. The offset is treated as the
/// weight of an always-1 extra feature and is regularized together with w,
/// which is what lets the dual solver handle it without an equality
/// constraint.
struct LinearModel {
  std::vector<double> w;
  double b = 0.0;
  double C = 1.0;
  ClassWeights weights;
};

/// Dual weights from the most recent fit, index-aligned with the basket that
/// was fitted. objective is the dual objective 0.5*(<w,w> + b^2) - sum(alpha).
struct DualState {
  std::vector<double> alphas;
  double objective = 0.0;
};

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace driftsvm
