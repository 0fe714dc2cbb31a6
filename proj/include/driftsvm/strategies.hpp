#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "driftsvm/basket.hpp"
#include "driftsvm/model.hpp"
#include "driftsvm/types.hpp"

namespace driftsvm {

enum class IncludeRule { AddAll, OnlyMisclassified, OnlyWithinMargin };
enum class ExcludeRule { RemoveOldest, RemoveFarthest, RemoveNonBorder };
enum class BalanceRule { DontHandle, KeepRatio, BalancedRatio };

const char* to_string(IncludeRule r);
const char* to_string(ExcludeRule r);
const char* to_string(BalanceRule r);
IncludeRule include_rule_from_string(const std::string& s);
ExcludeRule exclude_rule_from_string(const std::string& s);
BalanceRule balance_rule_from_string(const std::string& s);

/// One cell of the strategy grid: how samples enter, leave, and whether the
/// basket is rebalanced, pruned to support vectors, or relabeled.
struct StrategyConfig {
  IncludeRule include = IncludeRule::AddAll;
  ExcludeRule exclude = ExcludeRule::RemoveOldest;
  BalanceRule balance = BalanceRule::DontHandle;
  bool keep_only_sv = false;
  bool relabel = false;
  std::size_t capacity = 1000;
};

/// Unusual events worth surfacing in result rows.
enum class FlagKind {
  KeepRatioFallback,   // balancing found no candidate of the incoming class
  KsvKeptLast,         // support-vector pruning would have emptied the basket
};

struct FlagEvent {
  FlagKind kind;
  std::uint64_t arrival_index = 0;
};

const char* to_string(FlagKind k);

/// Everything the online learner mutates step by step.
struct OnlineState {
  Basket basket;
  LinearModel model;
  DualState dual;
  StrategyConfig config;
  std::uint64_t update_count = 0;   // refits triggered by the lazy rule
  std::uint64_t retrain_count = 0;  // all warm fits, relabeling refits included
  std::uint64_t skip_count = 0;     // accepted samples that needed no refit
  // Class counts of the basket right after initialization; KEEP_RATIO aims
  // to preserve this ratio.
  std::size_t reference_positive = 0;
  std::size_t reference_negative = 0;
  std::mt19937_64 rng;
  std::vector<FlagEvent> flags;
};

/// What one process_sample call did, for tests and counters.
struct StepOutcome {
  bool included = false;
  bool removed = false;
  bool retrained = false;
  bool relabel_refit = false;
  bool keep_ratio_fallback = false;
  bool ksv_kept_last = false;
  std::size_t removed_index = 0;
  double removed_alpha = 0.0;
  int labels_changed = 0;
};

/// Admission gate. ADD_ALL admits everything; ONLY_MISCLASSIFIED admits when
/// y*f(x) < 0; ONLY_WITHIN_MARGIN admits when y*f(x) < 1.
bool should_include(const StrategyConfig& config, const LinearModel& model,
                    const std::vector<double>& x, int y);

struct RemovalChoice {
  std::size_t index = 0;
  bool keep_ratio_fallback = false;
};

/// Picks the victim entry for an insertion of class `incoming_label` into a
/// full basket. Balancing narrows the candidate set first, then the exclusion
/// rule ranks the candidates. Throws std::logic_error if the basket is empty.
RemovalChoice choose_removal(const StrategyConfig& config, const Basket& basket,
                             const LinearModel& model, int incoming_label);

/// The lazy retraining rule: refit only when the added sample lies within the
/// margin (y*f < 1) or when a removed entry carried positive dual weight.
bool needs_retrain(const LinearModel& model, const std::optional<Sample>& added,
                   std::optional<double> removed_alpha);

/// Surgically removes entry `index`: subtracts its dual contribution from the
/// model, erases the entry and its dual slot. Returns the removed alpha.
double remove_entry(OnlineState& state, std::size_t index);

/// Drops every entry with zero dual weight. If that would empty the basket,
/// the entry with the largest alpha is kept instead and the function returns
/// true so the caller can flag it.
bool apply_ksv(Basket& basket, DualState& dual);

/// Rewrites each entry's working label to the sign of the current decision
/// value (ties go positive). Returns how many labels changed.
int relabel_all(Basket& basket, const LinearModel& model);

/// Builds the starting state: fills the basket with the most recent training
/// samples that fit, runs a cold fit with the offline epoch budget, and
/// records the filled basket's class counts as the KEEP_RATIO reference.
OnlineState init_basket(const std::vector<Sample>& training,
                        const StrategyConfig& config, double C,
                        const ClassWeights& weights, std::uint64_t seed);

/// One online step: admission gate, eviction if full, insertion, lazy refit,
/// then optional support-vector pruning and relabeling.
StepOutcome process_sample(OnlineState& state, const Sample& s);

}  // namespace driftsvm
