#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "driftsvm/types.hpp"

namespace driftsvm {

/// Frozen z-score transform fitted on training data. Features whose
/// population standard deviation is below 1e-12 get std 1 so constant
/// features pass through centered instead of exploding.
struct Normalizer {
  std::vector<double> mean;
  std::vector<double> std_dev;

  std::vector<double> apply(const std::vector<double>& x) const;
  Sample apply(const Sample& s) const;
  std::vector<Sample> apply(const std::vector<Sample>& samples) const;
};

Normalizer fit_normalizer(const std::vector<Sample>& train);

struct GridSearchSpec {
  std::vector<double> c_grid;
  int folds = 5;
  int repetitions = 2;
};

struct GridSearchResult {
  double best_c = 1.0;
  std::size_t best_index = 0;
  std::vector<double> mean_scores;  // one per grid entry, grid order
};

/// Repeated stratified k-fold cross-validation over the C grid. Fold
/// assignment depends only on the seed and the class labels (train order is
/// canonicalized by arrival index first), folds preserve the class ratio by
/// largest-remainder allocation, and the score is the mean balanced accuracy
/// over folds and repetitions. Ties go to the earliest grid position.
GridSearchResult grid_search_c(const std::vector<Sample>& train,
                               const GridSearchSpec& spec,
                               const ClassWeights& weights, std::uint64_t seed);

/// Threshold maximizing balanced accuracy of "positive iff score >= t" over
/// candidate thresholds at midpoints of consecutive distinct scores plus
/// +-infinity sentinels. Ties resolve toward the candidate closest to zero
/// (the more negative one at equal distance).
double optimize_threshold(const std::vector<std::pair<double, int>>& scores);

}  // namespace driftsvm
