#include "driftsvm/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "driftsvm/rng.hpp"

namespace driftsvm {

const char* to_string(IncludeRule r) {
  switch (r) {
    case IncludeRule::AddAll: return "ADD_ALL";
    case IncludeRule::OnlyMisclassified: return "ONLY_MISCLASSIFIED";
    case IncludeRule::OnlyWithinMargin: return "ONLY_WITHIN_MARGIN";
  }
  throw std::invalid_argument("bad IncludeRule");
}

const char* to_string(ExcludeRule r) {
  switch (r) {
    case ExcludeRule::RemoveOldest: return "REMOVE_OLDEST";
    case ExcludeRule::RemoveFarthest: return "REMOVE_FARTHEST";
    case ExcludeRule::RemoveNonBorder: return "REMOVE_NON_BORDER";
  }
  throw std::invalid_argument("bad ExcludeRule");
}

const char* to_string(BalanceRule r) {
  switch (r) {
    case BalanceRule::DontHandle: return "DONT_HANDLE_RATIO";
    case BalanceRule::KeepRatio: return "KEEP_RATIO_AS_IT_IS";
    case BalanceRule::BalancedRatio: return "BALANCED_RATIO";
  }
  throw std::invalid_argument("bad BalanceRule");
}

const char* to_string(FlagKind k) {
  switch (k) {
    case FlagKind::KeepRatioFallback: return "KEEP_RATIO_FALLBACK";
    case FlagKind::KsvKeptLast: return "KSV_KEPT_LAST";
  }
  throw std::invalid_argument("bad FlagKind");
}

IncludeRule include_rule_from_string(const std::string& s) {
  if (s == "ADD_ALL") return IncludeRule::AddAll;
  if (s == "ONLY_MISCLASSIFIED") return IncludeRule::OnlyMisclassified;
  if (s == "ONLY_WITHIN_MARGIN") return IncludeRule::OnlyWithinMargin;
  throw std::invalid_argument("unknown include rule '" + s + "'");
}

ExcludeRule exclude_rule_from_string(const std::string& s) {
  if (s == "REMOVE_OLDEST") return ExcludeRule::RemoveOldest;
  if (s == "REMOVE_FARTHEST") return ExcludeRule::RemoveFarthest;
  if (s == "REMOVE_NON_BORDER") return ExcludeRule::RemoveNonBorder;
  throw std::invalid_argument("unknown exclude rule '" + s + "'");
}

BalanceRule balance_rule_from_string(const std::string& s) {
  if (s == "DONT_HANDLE_RATIO") return BalanceRule::DontHandle;
  if (s == "KEEP_RATIO_AS_IT_IS") return BalanceRule::KeepRatio;
  if (s == "BALANCED_RATIO") return BalanceRule::BalancedRatio;
  throw std::invalid_argument("unknown balance rule '" + s + "'");
}

bool should_include(const StrategyConfig& config, const LinearModel& model,
                    const std::vector<double>& x, int y) {
  switch (config.include) {
    case IncludeRule::AddAll:
      return true;
    case IncludeRule::OnlyMisclassified:
      return y * decision_value(model, x) < 0.0;
    case IncludeRule::OnlyWithinMargin:
      return y * decision_value(model, x) < 1.0;
  }
  throw std::invalid_argument("bad IncludeRule");
}

namespace {

double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

double median_inplace(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Ring-deviation scores for REMOVE_NON_BORDER: per-class centroids over the
// whole basket, each class's median centroid distance as its ring radius,
// and for each entry the absolute deviation of its distance from that radius.
std::vector<double> non_border_scores(const Basket& basket) {
  const std::size_t n = basket.size();
  const std::size_t d = basket[0].sample.features.size();
  std::vector<double> centroid_pos(d, 0.0), centroid_neg(d, 0.0);
  std::size_t n_pos = 0, n_neg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const BasketEntry& e = basket[i];
    auto& c = e.current_label > 0 ? centroid_pos : centroid_neg;
    for (std::size_t k = 0; k < d; ++k) c[k] += e.sample.features[k];
    (e.current_label > 0 ? n_pos : n_neg) += 1;
  }
  if (n_pos > 0) for (auto& v : centroid_pos) v /= static_cast<double>(n_pos);
  if (n_neg > 0) for (auto& v : centroid_neg) v /= static_cast<double>(n_neg);

  std::vector<double> dist(n);
  std::vector<double> pos_d, neg_d;
  pos_d.reserve(n_pos);
  neg_d.reserve(n_neg);
  for (std::size_t i = 0; i < n; ++i) {
    const BasketEntry& e = basket[i];
    dist[i] = euclidean(e.sample.features,
                        e.current_label > 0 ? centroid_pos : centroid_neg);
    (e.current_label > 0 ? pos_d : neg_d).push_back(dist[i]);
  }
  const double radius_pos = n_pos > 0 ? median_inplace(pos_d) : 0.0;
  const double radius_neg = n_neg > 0 ? median_inplace(neg_d) : 0.0;

  std::vector<double> score(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = basket[i].current_label > 0 ? radius_pos : radius_neg;
    score[i] = std::fabs(dist[i] - r);
  }
  return score;
}

// Shared core of the lazy rule; pointers keep the hot path copy-free.
inline bool needs_retrain_impl(const LinearModel& model, const Sample* added,
                               const double* removed_alpha) {
  if (removed_alpha && *removed_alpha > 0.0) return true;
  if (added) {
    const double yf = added->label * decision_value(model, added->features);
    if (yf < 1.0) return true;
  }
  return false;
}

}  // namespace

RemovalChoice choose_removal(const StrategyConfig& config, const Basket& basket,
                             const LinearModel& model, int incoming_label) {
  if (basket.empty()) throw std::logic_error("choose_removal: empty basket");
  const std::size_t n = basket.size();

  // Balancing narrows the candidate set before the exclusion rule ranks it.
  RemovalChoice choice;
  bool restrict_to_label = false;
  int wanted_label = 0;
  switch (config.balance) {
    case BalanceRule::DontHandle:
      break;
    case BalanceRule::KeepRatio:
      if (basket.count_for(incoming_label) == 0) {
        choice.keep_ratio_fallback = true;  // no candidate of that class
      } else {
        restrict_to_label = true;
        wanted_label = incoming_label;
      }
      break;
    case BalanceRule::BalancedRatio: {
      const std::size_t pos = basket.positive_count();
      const std::size_t neg = basket.negative_count();
      // Equal counts leave the candidate set unrestricted.
      if (pos != neg) {
        restrict_to_label = true;
        wanted_label = pos > neg ? 1 : -1;
      }
      break;
    }
  }

  if (config.exclude == ExcludeRule::RemoveOldest) {
    // Arrival order is basket order, so the first candidate is the oldest.
    for (std::size_t i = 0; i < n; ++i) {
      if (!restrict_to_label || basket[i].current_label == wanted_label) {
        choice.index = i;
        return choice;
      }
    }
    throw std::logic_error("choose_removal: no removal candidate");
  }

  std::vector<double> score;
  if (config.exclude == ExcludeRule::RemoveNonBorder) {
    score = non_border_scores(basket);
  }

  bool found = false;
  std::size_t best = 0;
  double best_score = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const BasketEntry& e = basket[i];
    if (restrict_to_label && e.current_label != wanted_label) continue;
    const double s = config.exclude == ExcludeRule::RemoveFarthest
                         ? std::fabs(decision_value(model, e.sample.features))
                         : score[i];
    // Strict > keeps ties on the earliest (oldest) candidate.
    if (!found || s > best_score) {
      best = i;
      best_score = s;
      found = true;
    }
  }
  if (!found) throw std::logic_error("choose_removal: no removal candidate");
  choice.index = best;
  return choice;
}

bool needs_retrain(const LinearModel& model, const std::optional<Sample>& added,
                   std::optional<double> removed_alpha) {
  return needs_retrain_impl(model, added ? &*added : nullptr,
                            removed_alpha ? &*removed_alpha : nullptr);
}

double remove_entry(OnlineState& state, std::size_t index) {
  if (index >= state.basket.size() ||
      state.dual.alphas.size() != state.basket.size()) {
    throw std::logic_error("remove_entry: misaligned state");
  }
  const BasketEntry& victim = state.basket[index];
  const double alpha = state.dual.alphas[index];
  // Skipping the subtraction at alpha = 0 keeps no-op steps bit-identical.
  if (alpha > 0.0) {
    const double ay = alpha * victim.current_label;
    const std::vector<double>& x = victim.sample.features;
    for (std::size_t k = 0; k < state.model.w.size(); ++k) {
      state.model.w[k] -= ay * x[k];
    }
    state.model.b -= ay;
  }
  state.basket.erase(index);
  state.dual.alphas.erase(state.dual.alphas.begin() +
                          static_cast<std::ptrdiff_t>(index));
  return alpha;
}

bool apply_ksv(Basket& basket, DualState& dual) {
  if (dual.alphas.size() != basket.size()) {
    throw std::logic_error("apply_ksv: dual misaligned with basket");
  }
  bool any_positive = false;
  for (double a : dual.alphas) {
    if (a > 0.0) {
      any_positive = true;
      break;
    }
  }
  if (!any_positive) {
    // Pruning would empty the basket: keep the largest-alpha entry, earliest
    // arrival among ties.
    std::size_t keep = 0;
    for (std::size_t i = 1; i < basket.size(); ++i) {
      if (dual.alphas[i] > dual.alphas[keep]) keep = i;
    }
    for (std::size_t i = basket.size(); i-- > 0;) {
      if (i == keep) continue;
      basket.erase(i);
      dual.alphas.erase(dual.alphas.begin() + static_cast<std::ptrdiff_t>(i));
    }
    return true;
  }
  for (std::size_t i = basket.size(); i-- > 0;) {
    if (dual.alphas[i] == 0.0) {
      basket.erase(i);
      dual.alphas.erase(dual.alphas.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }
  return false;
}

int relabel_all(Basket& basket, const LinearModel& model) {
  int changed = 0;
  for (std::size_t i = 0; i < basket.size(); ++i) {
    const double f = decision_value(model, basket[i].sample.features);
    const int label = f >= 0.0 ? 1 : -1;
    if (label != basket[i].current_label) {
      basket.set_current_label(i, label);
      ++changed;
    }
  }
  return changed;
}

OnlineState init_basket(const std::vector<Sample>& training,
                        const StrategyConfig& config, double C,
                        const ClassWeights& weights, std::uint64_t seed) {
  if (training.empty()) {
    throw std::invalid_argument("init_basket: no training data");
  }
  if (config.capacity < 2) {
    throw std::invalid_argument("init_basket: capacity must be at least 2");
  }
  bool has_pos = false, has_neg = false;
  for (const Sample& s : training) {
    (s.label > 0 ? has_pos : has_neg) = true;
  }
  if (!has_pos || !has_neg) {
    throw std::invalid_argument("init_basket: training data has a single class");
  }

  OnlineState state;
  state.config = config;
  state.basket = Basket(config.capacity);
  const std::size_t start =
      training.size() > config.capacity ? training.size() - config.capacity : 0;
  for (std::size_t i = start; i < training.size(); ++i) {
    state.basket.push_back(make_entry(training[i]));
  }
  state.reference_positive = state.basket.positive_count();
  state.reference_negative = state.basket.negative_count();

  state.rng.seed(mix_seed(seed, 0x5eed));
  FitResult fit = fit_dcd(state.basket, C, weights, nullptr,
                          kOfflineEpochsPerSample *
                              static_cast<long>(state.basket.size()),
                          solver_tolerance(C), state.rng);
  state.model = std::move(fit.model);
  state.dual = std::move(fit.dual);
  for (std::size_t i = 0; i < state.basket.size(); ++i) {
    state.basket[i].alpha = state.dual.alphas[i];
  }
  return state;
}

StepOutcome process_sample(OnlineState& state, const Sample& s) {
  if (s.features.size() != state.model.w.size()) {
    throw std::invalid_argument("process_sample: dimension mismatch");
  }
  StepOutcome out;
  if (!should_include(state.config, state.model, s.features, s.label)) {
    return out;
  }
  out.included = true;

  double removed_alpha = 0.0;
  bool removed = false;
  if (state.basket.at_capacity()) {
    RemovalChoice victim =
        choose_removal(state.config, state.basket, state.model, s.label);
    if (victim.keep_ratio_fallback) {
      out.keep_ratio_fallback = true;
      state.flags.push_back({FlagKind::KeepRatioFallback, s.arrival_index});
    }
    removed = true;
    out.removed = true;
    out.removed_index = victim.index;
    out.removed_alpha = remove_entry(state, victim.index);
    removed_alpha = out.removed_alpha;
  }

  state.basket.push_back(make_entry(s));
  state.dual.alphas.push_back(0.0);

  const double C = state.model.C;
  const ClassWeights weights = state.model.weights;
  auto sync_alphas = [&]() {
    for (std::size_t i = 0; i < state.basket.size(); ++i) {
      state.basket[i].alpha = state.dual.alphas[i];
    }
  };

  if (needs_retrain_impl(state.model, &s, removed ? &removed_alpha : nullptr)) {
    FitResult fit = fit_dcd(state.basket, C, weights, &state.dual,
                            kOnlineMaxEpochs, solver_tolerance(C), state.rng);
    state.model = std::move(fit.model);
    state.dual = std::move(fit.dual);
    sync_alphas();
    out.retrained = true;
    ++state.update_count;
    ++state.retrain_count;
  } else {
    ++state.skip_count;
  }

  if (state.config.keep_only_sv) {
    if (apply_ksv(state.basket, state.dual)) {
      out.ksv_kept_last = true;
      state.flags.push_back({FlagKind::KsvKeptLast, s.arrival_index});
    }
  }

  if (state.config.relabel) {
    out.labels_changed = relabel_all(state.basket, state.model);
    if (out.labels_changed > 0) {
      FitResult fit = fit_dcd(state.basket, C, weights, &state.dual,
                              kOnlineMaxEpochs, solver_tolerance(C), state.rng);
      state.model = std::move(fit.model);
      state.dual = std::move(fit.dual);
      sync_alphas();
      out.relabel_refit = true;
      ++state.retrain_count;
    }
  }

  return out;
}

}  // namespace driftsvm
