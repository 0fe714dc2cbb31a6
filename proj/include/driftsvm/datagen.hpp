#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "driftsvm/types.hpp"

namespace driftsvm {

enum class Dataset { Parallel, LinearShift, Opposite, Cross, Parabola, SEA3D };

const char* to_string(Dataset d);
Dataset dataset_from_string(const std::string& s);

/// Parameters for one synthetic stream. The 2-D datasets draw each sample's
/// class first (majority:minority = class_ratio:1, minority labeled +1), then
/// its position around the class mean at t = arrival_index / n_total.
struct DriftSpec {
  Dataset dataset = Dataset::Parallel;
  std::size_t n_total = 10000;
  std::size_t n_train = 1000;
  std::uint64_t seed = 0;
  double noise_sigma = 0.5;      // 2-D datasets only
  double class_ratio = 3.0;      // majority : minority
  double drift_magnitude = 6.0;  // 0 disables drift entirely
};

struct LabeledStream {
  std::vector<Sample> samples;
  std::size_t dimension = 2;
  std::string name;
  // SEA3D only: the per-100-sample-block thresholds, exposed so tests can
  // recompute noiseless labels. Not part of the on-disk serialization.
  std::vector<double> sea_thetas;
};

/// Mean of one class at stream fraction t in [0, 1). label +1 is the
/// minority class C2. Exposed for geometry tests.
std::array<double, 2> class_mean(Dataset dataset, int label, double t,
                                 double magnitude);

LabeledStream gen_2d_drift(const DriftSpec& spec);
LabeledStream gen_sea3d(const DriftSpec& spec);
LabeledStream generate(const DriftSpec& spec);

/// Prefix/suffix split preserving order. Throws std::invalid_argument unless
/// 0 < n_train < stream length.
std::pair<std::vector<Sample>, std::vector<Sample>> split_train_test(
    const LabeledStream& stream, std::size_t n_train);

/// Canonical serialization: one record per line,
/// `arrival_index, f1, ..., fd, label`, 17 significant digits.
void write_stream(std::ostream& out, const LabeledStream& stream);
LabeledStream read_stream(std::istream& in, std::string name);

}  // namespace driftsvm
