#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "driftsvm/metrics.hpp"
#include "driftsvm/pipeline.hpp"
#include "driftsvm/strategies.hpp"

namespace driftsvm {

/// The running balanced accuracy is sampled every this many test steps.
inline constexpr std::size_t kTrajectoryStride = 50;

enum class RunMode { Adaptive, Static, PassiveAggressive };
const char* to_string(RunMode m);

struct TrajectoryPoint {
  std::uint64_t arrival_index = 0;
  double ba = 0.0;
};

/// Everything one prequential run produces.
struct EvalRecord {
  RunMode mode = RunMode::Adaptive;
  StrategyConfig strategy;  // meaningful for Adaptive runs only
  double C = 1.0;
  ClassWeights weights;
  std::uint64_t seed = 0;
  std::string dataset;
  double final_ba = 0.0;
  std::vector<TrajectoryPoint> trajectory;
  std::uint64_t update_count = 0;
  std::uint64_t retrain_count = 0;
  std::uint64_t skip_count = 0;
  ConfusionCounts counts;
  double threshold = 0.0;
  double wall_time_s = 0.0;
  std::vector<FlagEvent> flags;
};

/// Test-then-train evaluation: fit normalizer, initial model, and decision
/// threshold on the training prefix, then walk the test stream predicting
/// each sample before revealing its label. Adaptive mode maintains the
/// basket via process_sample; Static never updates; PassiveAggressive
/// applies pa_update to every revealed sample and keeps no basket.
EvalRecord run_prequential(const std::vector<Sample>& train,
                           const std::vector<Sample>& test, RunMode mode,
                           const StrategyConfig& strategy, double C,
                           const ClassWeights& weights, std::uint64_t seed,
                           const std::string& dataset_tag);

}  // namespace driftsvm
