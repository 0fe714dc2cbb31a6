#include "driftsvm/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "driftsvm/metrics.hpp"
#include "driftsvm/model.hpp"
#include "driftsvm/rng.hpp"

namespace driftsvm {

std::vector<double> Normalizer::apply(const std::vector<double>& x) const {
  if (x.size() != mean.size()) {
    throw std::invalid_argument("normalizer: dimension mismatch");
  }
  std::vector<double> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    out[k] = (x[k] - mean[k]) / std_dev[k];
  }
  return out;
}

Sample Normalizer::apply(const Sample& s) const {
  Sample out = s;
  out.features = apply(s.features);
  return out;
}

std::vector<Sample> Normalizer::apply(const std::vector<Sample>& samples) const {
  std::vector<Sample> out;
  out.reserve(samples.size());
  for (const Sample& s : samples) out.push_back(apply(s));
  return out;
}

Normalizer fit_normalizer(const std::vector<Sample>& train) {
  if (train.empty()) throw std::invalid_argument("fit_normalizer: no data");
  const std::size_t d = train.front().features.size();
  const double n = static_cast<double>(train.size());

  Normalizer norm;
  norm.mean.assign(d, 0.0);
  norm.std_dev.assign(d, 0.0);
  for (const Sample& s : train) {
    if (s.features.size() != d) {
      throw std::invalid_argument("fit_normalizer: inconsistent dimensions");
    }
    for (std::size_t k = 0; k < d; ++k) norm.mean[k] += s.features[k];
  }
  for (std::size_t k = 0; k < d; ++k) norm.mean[k] /= n;
  for (const Sample& s : train) {
    for (std::size_t k = 0; k < d; ++k) {
      const double c = s.features[k] - norm.mean[k];
      norm.std_dev[k] += c * c;
    }
  }
  for (std::size_t k = 0; k < d; ++k) {
    norm.std_dev[k] = std::sqrt(norm.std_dev[k] / n);
    if (norm.std_dev[k] < 1e-12) {
      std::clog << "fit_normalizer: feature " << k
                << " is (near) constant, std floored to 1\n";
      norm.std_dev[k] = 1.0;
    }
  }
  return norm;
}

GridSearchResult grid_search_c(const std::vector<Sample>& train,
                               const GridSearchSpec& spec,
                               const ClassWeights& weights,
                               std::uint64_t seed) {
  if (spec.c_grid.empty()) {
    throw std::invalid_argument("grid_search_c: empty grid");
  }
  if (spec.folds < 2) {
    throw std::invalid_argument("grid_search_c: need at least 2 folds");
  }
  if (spec.repetitions < 1) {
    throw std::invalid_argument("grid_search_c: need at least 1 repetition");
  }
  for (double c : spec.c_grid) {
    if (c <= 0.0) throw std::invalid_argument("grid_search_c: C must be positive");
  }

  // Canonical order by arrival index makes fold assignment independent of
  // how the caller happened to arrange the list.
  std::vector<std::size_t> canon(train.size());
  for (std::size_t i = 0; i < canon.size(); ++i) canon[i] = i;
  std::sort(canon.begin(), canon.end(), [&](std::size_t a, std::size_t b) {
    return train[a].arrival_index < train[b].arrival_index;
  });

  std::vector<std::size_t> pos_idx, neg_idx;
  for (std::size_t i : canon) {
    (train[i].label > 0 ? pos_idx : neg_idx).push_back(i);
  }
  if (pos_idx.empty() || neg_idx.empty()) {
    throw std::invalid_argument("grid_search_c: training data has a single class");
  }
  const std::size_t folds = static_cast<std::size_t>(spec.folds);
  if (pos_idx.size() < folds || neg_idx.size() < folds) {
    throw std::invalid_argument(
        "grid_search_c: a fold would lose one class entirely");
  }

  // fold_of[rep][i] = fold of training index i in that repetition.
  std::vector<std::vector<int>> fold_of(
      static_cast<std::size_t>(spec.repetitions),
      std::vector<int>(train.size(), -1));
  for (int rep = 0; rep < spec.repetitions; ++rep) {
    std::mt19937_64 rng(mix_seed(seed, 0xf01d + static_cast<std::uint64_t>(rep)));
    for (const std::vector<std::size_t>* cls : {&pos_idx, &neg_idx}) {
      std::vector<std::size_t> shuffled = *cls;
      shuffle_portable(shuffled, rng);
      // Largest-remainder allocation with equal quotas: the first
      // (count mod folds) folds take one extra element.
      const std::size_t base = shuffled.size() / folds;
      const std::size_t extra = shuffled.size() % folds;
      std::size_t at = 0;
      for (std::size_t f = 0; f < folds; ++f) {
        const std::size_t take = base + (f < extra ? 1 : 0);
        for (std::size_t j = 0; j < take; ++j) {
          fold_of[static_cast<std::size_t>(rep)][shuffled[at++]] =
              static_cast<int>(f);
        }
      }
    }
  }

  GridSearchResult out;
  out.mean_scores.assign(spec.c_grid.size(), 0.0);
  for (std::size_t ci = 0; ci < spec.c_grid.size(); ++ci) {
    const double C = spec.c_grid[ci];
    double score_sum = 0.0;
    for (int rep = 0; rep < spec.repetitions; ++rep) {
      const std::vector<int>& assignment =
          fold_of[static_cast<std::size_t>(rep)];
      for (std::size_t f = 0; f < folds; ++f) {
        std::size_t fit_count = 0;
        for (std::size_t i : canon) {
          if (assignment[i] != static_cast<int>(f)) ++fit_count;
        }
        Basket basket(fit_count);
        for (std::size_t i : canon) {
          if (assignment[i] != static_cast<int>(f)) {
            basket.push_back(make_entry(train[i]));
          }
        }
        std::mt19937_64 fit_rng(mix_seed(
            seed, 0xc0de + ((ci * static_cast<std::size_t>(spec.repetitions) +
                             static_cast<std::size_t>(rep)) *
                                folds +
                            f)));
        FitResult fit = fit_dcd(basket, C, weights, nullptr,
                                kOfflineEpochsPerSample *
                                    static_cast<long>(basket.size()),
                                solver_tolerance(C), fit_rng);
        ConfusionCounts counts;
        for (std::size_t i : canon) {
          if (assignment[i] == static_cast<int>(f)) {
            const double v = decision_value(fit.model, train[i].features);
            counts.record(train[i].label, v >= 0.0 ? 1 : -1);
          }
        }
        score_sum += balanced_accuracy(counts);
      }
    }
    out.mean_scores[ci] =
        score_sum / (static_cast<double>(spec.repetitions) *
                     static_cast<double>(folds));
  }

  out.best_index = 0;
  for (std::size_t ci = 1; ci < out.mean_scores.size(); ++ci) {
    if (out.mean_scores[ci] > out.mean_scores[out.best_index]) {
      out.best_index = ci;
    }
  }
  out.best_c = spec.c_grid[out.best_index];
  return out;
}

double optimize_threshold(const std::vector<std::pair<double, int>>& scores) {
  if (scores.empty()) {
    throw std::invalid_argument("optimize_threshold: no scores");
  }
  std::vector<std::pair<double, int>> sorted = scores;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();

  std::uint64_t total_pos = 0;
  for (const auto& [v, y] : sorted) {
    if (y > 0) ++total_pos;
  }
  const std::uint64_t total_neg = n - total_pos;
  if (total_pos == 0 || total_neg == 0) {
    throw std::invalid_argument("optimize_threshold: need both classes");
  }

  const double inf = std::numeric_limits<double>::infinity();
  double best_t = 0.0;
  double best_ba = -1.0;
  auto consider = [&](double t, std::uint64_t below_pos,
                      std::uint64_t below_neg) {
    // Samples strictly below the threshold are predicted negative.
    const std::uint64_t tp = total_pos - below_pos;
    const std::uint64_t tn = below_neg;
    const double ba = 0.5 * (static_cast<double>(tp) / total_pos +
                             static_cast<double>(tn) / total_neg);
    const bool better =
        ba > best_ba ||
        (ba == best_ba && (std::fabs(t) < std::fabs(best_t) ||
                           (std::fabs(t) == std::fabs(best_t) && t < best_t)));
    if (better) {
      best_ba = ba;
      best_t = t;
    }
  };

  std::uint64_t below_pos = 0, below_neg = 0;
  consider(-inf, 0, 0);
  for (std::size_t k = 0; k < n; ++k) {
    (sorted[k].second > 0 ? below_pos : below_neg) += 1;
    if (k + 1 < n) {
      if (sorted[k].first < sorted[k + 1].first) {
        consider(0.5 * (sorted[k].first + sorted[k + 1].first), below_pos,
                 below_neg);
      }
    } else {
      consider(inf, below_pos, below_neg);
    }
  }
  return best_t;
}

}  // namespace driftsvm
