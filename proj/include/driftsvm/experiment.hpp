#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "driftsvm/pipeline.hpp"
#include "driftsvm/prequential.hpp"
#include "driftsvm/strategies.hpp"

namespace driftsvm {

/// One experiment grid: datasets x seeds x strategy cells, plus baselines.
/// Defaults mirror the standard synthetic protocol (10000-sample streams,
/// 1000 training samples, 5x2 CV over a 9-point C grid).
struct ExperimentPlan {
  std::vector<std::string> datasets;  // dataset names or "file:PATH"
  std::vector<std::uint64_t> seeds;
  std::vector<IncludeRule> include{IncludeRule::AddAll};
  std::vector<ExcludeRule> exclude{ExcludeRule::RemoveOldest};
  std::vector<BalanceRule> balance{BalanceRule::DontHandle};
  std::vector<bool> ksv{false};
  std::vector<bool> relabel{false};
  std::vector<std::size_t> capacities{1000};
  GridSearchSpec grid;
  ClassWeights weights;
  bool baseline_static = true;
  bool baseline_pa = true;
  std::size_t n_total = 10000;
  std::size_t n_train = 1000;
  double noise_sigma = 0.5;
  double class_ratio = 3.0;
  double drift_magnitude = 6.0;
  int workers = 0;  // 0 = one worker per available core
  std::string out_dir = "results";
  bool quiet = false;  // suppress progress lines on stdout

  std::size_t cell_count() const;
  std::size_t baseline_count() const;
  std::size_t run_count() const;
};

/// Plan with the default 9-point logarithmic C grid filled in.
ExperimentPlan default_plan();

/// Parses the flat key/value plan format (see README). Unknown keys, bad
/// enum values, and empty ranges are errors naming the key and line.
ExperimentPlan parse_plan_text(const std::string& text,
                               const std::string& origin);
ExperimentPlan parse_plan_file(const std::string& path);

struct PlanOutputs {
  std::string results_path;
  std::string summary_path;
  std::string trajectories_path;
  std::size_t cells = 0;
  std::size_t runs = 0;
};

/// Executes the whole grid. C is tuned once per (dataset, seed) and shared
/// by every cell and baseline of that pair. Runs execute in parallel up to
/// the worker budget; output order is the deterministic grid order. Failed
/// runs become rows with the error column set; the plan always completes.
PlanOutputs run_plan(const ExperimentPlan& plan);

/// One parsed results.csv row; string fields are verbatim cells.
struct ResultRow {
  std::string run_id, dataset, seed, include, exclude, balance, ksv, relabel,
      capacity, flags, error;
  double C = 0.0, final_ba = 0.0, wall_time_s = 0.0;
  std::uint64_t update_count = 0, retrain_count = 0;
  bool ok = false;  // parsed numerics present and error empty
};

std::vector<ResultRow> read_results_csv(const std::string& path);

/// summary.csv is a pure function of results.csv: mean and standard error
/// of final_ba per strategy cell (baselines included), grouped across
/// datasets and seeds, in first-appearance order. Error rows are skipped.
void write_summary_csv(const std::string& results_path,
                       const std::string& summary_path);

/// Per-dataset best-cell table (columns DATASET, ADD, REM, BAL, KSV, REL,
/// SIZE, PERF, SVM/PA) rendered from a results.csv.
std::string table_report(const std::string& results_path);

}  // namespace driftsvm
