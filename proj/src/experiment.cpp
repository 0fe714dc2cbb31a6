#include "driftsvm/experiment.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "driftsvm/datagen.hpp"

namespace driftsvm {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void plan_error(const std::string& origin, std::size_t line,
                             const std::string& msg) {
  std::ostringstream os;
  os << origin << ":" << line << ": " << msg;
  throw std::invalid_argument(os.str());
}

std::uint64_t parse_u64(const std::string& tok, const std::string& origin,
                        std::size_t line, const std::string& key) {
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    plan_error(origin, line, "invalid integer '" + tok + "' for key '" + key + "'");
  }
}

double parse_double(const std::string& tok, const std::string& origin,
                    std::size_t line, const std::string& key) {
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    plan_error(origin, line, "invalid number '" + tok + "' for key '" + key + "'");
  }
}

bool parse_bool(const std::string& tok, const std::string& origin,
                std::size_t line, const std::string& key) {
  if (tok == "true") return true;
  if (tok == "false") return false;
  plan_error(origin, line,
             "invalid boolean '" + tok + "' for key '" + key + "' (use true/false)");
}

// Integer list with inclusive "A..B [step S]" ranges mixed in.
std::vector<std::uint64_t> parse_u64_list(const std::string& value,
                                          const std::string& origin,
                                          std::size_t line,
                                          const std::string& key) {
  std::vector<std::uint64_t> out;
  auto toks = split_ws(value);
  for (std::size_t i = 0; i < toks.size();) {
    std::size_t dots = toks[i].find("..");
    if (dots != std::string::npos) {
      std::uint64_t lo = parse_u64(toks[i].substr(0, dots), origin, line, key);
      std::uint64_t hi = parse_u64(toks[i].substr(dots + 2), origin, line, key);
      std::uint64_t step = 1;
      if (i + 1 < toks.size() && toks[i + 1] == "step") {
        if (i + 2 >= toks.size())
          plan_error(origin, line, "'step' without a value for key '" + key + "'");
        step = parse_u64(toks[i + 2], origin, line, key);
        i += 3;
      } else {
        i += 1;
      }
      if (step == 0) plan_error(origin, line, "step 0 for key '" + key + "'");
      if (hi < lo)
        plan_error(origin, line, "descending range for key '" + key + "'");
      for (std::uint64_t v = lo;; v += step) {
        out.push_back(v);
        if (v > hi - step || v + step > hi) break;
      }
    } else {
      out.push_back(parse_u64(toks[i], origin, line, key));
      i += 1;
    }
  }
  if (out.empty()) plan_error(origin, line, "empty list for key '" + key + "'");
  return out;
}

std::vector<double> parse_c_grid(const std::string& value,
                                 const std::string& origin, std::size_t line) {
  auto toks = split_ws(value);
  std::vector<double> out;
  if (!toks.empty() && toks[0] == "logspace") {
    if (toks.size() != 4)
      plan_error(origin, line, "c_grid logspace wants: logspace E0 E1 N");
    double e0 = parse_double(toks[1], origin, line, "c_grid");
    double e1 = parse_double(toks[2], origin, line, "c_grid");
    std::uint64_t n = parse_u64(toks[3], origin, line, "c_grid");
    if (n == 0) plan_error(origin, line, "c_grid logspace with zero points");
    for (std::uint64_t k = 0; k < n; ++k) {
      double e = (n == 1) ? e0 : e0 + (e1 - e0) * double(k) / double(n - 1);
      out.push_back(std::pow(10.0, e));
    }
  } else {
    for (const auto& t : toks)
      out.push_back(parse_double(t, origin, line, "c_grid"));
  }
  if (out.empty()) plan_error(origin, line, "empty list for key 'c_grid'");
  for (double c : out)
    if (!(c > 0.0)) plan_error(origin, line, "c_grid values must be positive");
  return out;
}

std::string fmt_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_wall(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Error messages travel in a CSV cell, so strip the delimiters.
std::string sanitize_cell(std::string s) {
  for (char& c : s) {
    if (c == ',') c = ';';
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

std::string flags_cell(const std::vector<FlagEvent>& flags) {
  std::size_t fallback = 0, kept_last = 0;
  for (const auto& f : flags) {
    if (f.kind == FlagKind::KeepRatioFallback) ++fallback;
    if (f.kind == FlagKind::KsvKeptLast) ++kept_last;
  }
  std::string out;
  if (fallback > 0) {
    out += to_string(FlagKind::KeepRatioFallback);
    out += ":" + std::to_string(fallback);
  }
  if (kept_last > 0) {
    if (!out.empty()) out += ";";
    out += to_string(FlagKind::KsvKeptLast);
    out += ":" + std::to_string(kept_last);
  }
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

const char* kResultsHeader =
    "run_id,dataset,seed,include,exclude,balance,ksv,relabel,capacity,C,"
    "final_ba,update_count,retrain_count,wall_time_s,flags,error";

}  // namespace

std::size_t ExperimentPlan::cell_count() const {
  return include.size() * exclude.size() * balance.size() * ksv.size() *
         relabel.size() * capacities.size();
}

std::size_t ExperimentPlan::baseline_count() const {
  return (baseline_static ? 1u : 0u) + (baseline_pa ? 1u : 0u);
}

std::size_t ExperimentPlan::run_count() const {
  return datasets.size() * seeds.size() * (cell_count() + baseline_count());
}

ExperimentPlan default_plan() {
  ExperimentPlan plan;
  plan.grid.folds = 5;
  plan.grid.repetitions = 2;
  plan.grid.c_grid.clear();
  for (int k = 0; k < 9; ++k)
    plan.grid.c_grid.push_back(std::pow(10.0, 0.0 - 4.0 * k / 8.0));
  return plan;
}

ExperimentPlan parse_plan_text(const std::string& text,
                               const std::string& origin) {
  ExperimentPlan plan = default_plan();
  std::map<std::string, std::size_t> seen;

  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      plan_error(origin, lineno, "expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) plan_error(origin, lineno, "missing key before '='");
    if (value.empty())
      plan_error(origin, lineno, "empty value for key '" + key + "'");
    if (seen.count(key))
      plan_error(origin, lineno,
                 "duplicate key '" + key + "' (first on line " +
                     std::to_string(seen[key]) + ")");
    seen[key] = lineno;

    try {
      if (key == "datasets") {
        plan.datasets = split_ws(value);
        for (const auto& d : plan.datasets)
          if (d.rfind("file:", 0) != 0) dataset_from_string(d);
      } else if (key == "seeds") {
        plan.seeds = parse_u64_list(value, origin, lineno, key);
      } else if (key == "include") {
        plan.include.clear();
        for (const auto& t : split_ws(value))
          plan.include.push_back(include_rule_from_string(t));
      } else if (key == "exclude") {
        plan.exclude.clear();
        for (const auto& t : split_ws(value))
          plan.exclude.push_back(exclude_rule_from_string(t));
      } else if (key == "balance") {
        plan.balance.clear();
        for (const auto& t : split_ws(value))
          plan.balance.push_back(balance_rule_from_string(t));
      } else if (key == "ksv") {
        plan.ksv.clear();
        for (const auto& t : split_ws(value))
          plan.ksv.push_back(parse_bool(t, origin, lineno, key));
      } else if (key == "relabel") {
        plan.relabel.clear();
        for (const auto& t : split_ws(value))
          plan.relabel.push_back(parse_bool(t, origin, lineno, key));
      } else if (key == "capacity") {
        plan.capacities.clear();
        for (std::uint64_t v : parse_u64_list(value, origin, lineno, key)) {
          if (v < 2)
            plan_error(origin, lineno, "capacity must be at least 2");
          plan.capacities.push_back(static_cast<std::size_t>(v));
        }
      } else if (key == "c_grid") {
        plan.grid.c_grid = parse_c_grid(value, origin, lineno);
      } else if (key == "folds") {
        std::uint64_t v = parse_u64(value, origin, lineno, key);
        if (v < 2) plan_error(origin, lineno, "folds must be at least 2");
        plan.grid.folds = static_cast<std::size_t>(v);
      } else if (key == "repetitions") {
        std::uint64_t v = parse_u64(value, origin, lineno, key);
        if (v < 1) plan_error(origin, lineno, "repetitions must be at least 1");
        plan.grid.repetitions = static_cast<std::size_t>(v);
      } else if (key == "weight_positive") {
        plan.weights.positive = parse_double(value, origin, lineno, key);
        if (!(plan.weights.positive > 0.0))
          plan_error(origin, lineno, "weight_positive must be positive");
      } else if (key == "weight_negative") {
        plan.weights.negative = parse_double(value, origin, lineno, key);
        if (!(plan.weights.negative > 0.0))
          plan_error(origin, lineno, "weight_negative must be positive");
      } else if (key == "baseline_static") {
        plan.baseline_static = parse_bool(value, origin, lineno, key);
      } else if (key == "baseline_pa") {
        plan.baseline_pa = parse_bool(value, origin, lineno, key);
      } else if (key == "n_total") {
        plan.n_total = static_cast<std::size_t>(parse_u64(value, origin, lineno, key));
      } else if (key == "n_train") {
        plan.n_train = static_cast<std::size_t>(parse_u64(value, origin, lineno, key));
      } else if (key == "noise_sigma") {
        plan.noise_sigma = parse_double(value, origin, lineno, key);
        if (!(plan.noise_sigma > 0.0))
          plan_error(origin, lineno, "noise_sigma must be positive");
      } else if (key == "class_ratio") {
        plan.class_ratio = parse_double(value, origin, lineno, key);
        if (!(plan.class_ratio > 0.0))
          plan_error(origin, lineno, "class_ratio must be positive");
      } else if (key == "drift_magnitude") {
        plan.drift_magnitude = parse_double(value, origin, lineno, key);
        if (plan.drift_magnitude < 0.0)
          plan_error(origin, lineno, "drift_magnitude must be non-negative");
      } else if (key == "workers") {
        plan.workers = static_cast<int>(parse_u64(value, origin, lineno, key));
      } else if (key == "out") {
        plan.out_dir = value;
      } else {
        plan_error(origin, lineno, "unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      std::string msg = e.what();
      // Errors from enum parsing lack position info; add it.
      if (msg.rfind(origin + ":", 0) != 0)
        plan_error(origin, lineno, msg + " (key '" + key + "')");
      throw;
    }
  }

  if (plan.datasets.empty())
    throw std::invalid_argument(origin + ": missing required key 'datasets'");
  if (plan.seeds.empty())
    throw std::invalid_argument(origin + ": missing required key 'seeds'");
  if (plan.n_train == 0 || plan.n_train >= plan.n_total)
    throw std::invalid_argument(origin +
                                ": n_train must be positive and below n_total");
  return plan;
}

ExperimentPlan parse_plan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open plan file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_plan_text(buf.str(), path);
}

namespace {

struct PairData {
  std::vector<Sample> train, test;
  double best_c = 0.0;
  bool has_c = false;
  std::string error;
};

struct RunDesc {
  std::size_t pair = 0;
  RunMode mode = RunMode::Adaptive;
  StrategyConfig cfg;
  std::string dataset_tag;
  std::uint64_t seed = 0;
};

struct RunSlot {
  EvalRecord rec;
  std::string error;
};

}  // namespace

PlanOutputs run_plan(const ExperimentPlan& plan) {
  if (plan.datasets.empty() || plan.seeds.empty())
    throw std::invalid_argument("plan needs at least one dataset and one seed");
  if (plan.cell_count() == 0)
    throw std::invalid_argument("plan has an empty strategy axis");

  const std::size_t n_ds = plan.datasets.size();
  const std::size_t n_seed = plan.seeds.size();
  const std::size_t n_pairs = n_ds * n_seed;
  const std::size_t total = plan.run_count();
  const int nt = plan.workers > 0 ? plan.workers : omp_get_max_threads();

  if (!plan.quiet)
    std::cout << "plan: " << n_ds << " dataset(s) x " << n_seed
              << " seed(s) x (" << plan.cell_count() << " cells + "
              << plan.baseline_count() << " baselines) = " << total
              << " runs, " << nt << " worker(s)\n";

  // External streams are read once, up front, so the parallel phases touch
  // no shared disk state.
  std::map<std::string, LabeledStream> file_streams;
  std::map<std::string, std::string> file_errors;
  for (const auto& d : plan.datasets) {
    if (d.rfind("file:", 0) != 0) continue;
    std::string path = d.substr(5);
    if (file_streams.count(path) || file_errors.count(path)) continue;
    try {
      std::ifstream stream_in(path);
      if (!stream_in)
        throw std::invalid_argument("cannot open stream file: " + path);
      file_streams.emplace(path, read_stream(stream_in, path));
    } catch (const std::exception& e) {
      file_errors.emplace(path, e.what());
    }
  }

  // Phase A: per (dataset, seed) pair, build the stream and tune C once.
  std::vector<PairData> pairs(n_pairs);
  if (!plan.quiet)
    std::cout << "phase A: tuning C for " << n_pairs << " pair(s)\n";
#pragma omp parallel for schedule(dynamic) num_threads(nt)
  for (long long pi = 0; pi < static_cast<long long>(n_pairs); ++pi) {
    const std::size_t di = static_cast<std::size_t>(pi) / n_seed;
    const std::size_t si = static_cast<std::size_t>(pi) % n_seed;
    PairData& pd = pairs[static_cast<std::size_t>(pi)];
    try {
      LabeledStream stream;
      const std::string& name = plan.datasets[di];
      if (name.rfind("file:", 0) == 0) {
        std::string path = name.substr(5);
        auto err = file_errors.find(path);
        if (err != file_errors.end()) throw std::invalid_argument(err->second);
        stream = file_streams.at(path);
      } else {
        DriftSpec spec;
        spec.dataset = dataset_from_string(name);
        spec.n_total = plan.n_total;
        spec.n_train = plan.n_train;
        spec.seed = plan.seeds[si];
        spec.noise_sigma = plan.noise_sigma;
        spec.class_ratio = plan.class_ratio;
        spec.drift_magnitude = plan.drift_magnitude;
        stream = generate(spec);
      }
      auto parts = split_train_test(stream, plan.n_train);
      Normalizer norm = fit_normalizer(parts.first);
      GridSearchResult gs = grid_search_c(norm.apply(parts.first), plan.grid,
                                          plan.weights, plan.seeds[si]);
      pd.best_c = gs.best_c;
      pd.has_c = true;
      pd.train = std::move(parts.first);
      pd.test = std::move(parts.second);
    } catch (const std::exception& e) {
      pd.error = e.what();
    }
  }

  // Deterministic grid order: dataset, seed, strategy cells, baselines.
  std::vector<RunDesc> descs;
  descs.reserve(total);
  for (std::size_t di = 0; di < n_ds; ++di) {
    for (std::size_t si = 0; si < n_seed; ++si) {
      RunDesc base;
      base.pair = di * n_seed + si;
      base.dataset_tag = plan.datasets[di];
      base.seed = plan.seeds[si];
      for (IncludeRule inc : plan.include)
        for (ExcludeRule exc : plan.exclude)
          for (BalanceRule bal : plan.balance)
            for (bool k : plan.ksv)
              for (bool r : plan.relabel)
                for (std::size_t cap : plan.capacities) {
                  RunDesc d = base;
                  d.mode = RunMode::Adaptive;
                  d.cfg.include = inc;
                  d.cfg.exclude = exc;
                  d.cfg.balance = bal;
                  d.cfg.keep_only_sv = k;
                  d.cfg.relabel = r;
                  d.cfg.capacity = cap;
                  descs.push_back(std::move(d));
                }
      if (plan.baseline_static) {
        RunDesc d = base;
        d.mode = RunMode::Static;
        descs.push_back(std::move(d));
      }
      if (plan.baseline_pa) {
        RunDesc d = base;
        d.mode = RunMode::PassiveAggressive;
        descs.push_back(std::move(d));
      }
    }
  }

  // Phase B: every run is independent given its pair's stream and C.
  std::vector<RunSlot> slots(descs.size());
  if (!plan.quiet)
    std::cout << "phase B: running " << descs.size() << " run(s)\n";
#pragma omp parallel for schedule(dynamic) num_threads(nt)
  for (long long ri = 0; ri < static_cast<long long>(descs.size()); ++ri) {
    const RunDesc& d = descs[static_cast<std::size_t>(ri)];
    RunSlot& slot = slots[static_cast<std::size_t>(ri)];
    const PairData& pd = pairs[d.pair];
    if (!pd.error.empty()) {
      slot.error = pd.error;
      continue;
    }
    try {
      slot.rec = run_prequential(pd.train, pd.test, d.mode, d.cfg, pd.best_c,
                                 plan.weights, d.seed, d.dataset_tag);
    } catch (const std::exception& e) {
      slot.error = e.what();
    }
  }

  std::filesystem::create_directories(plan.out_dir);
  PlanOutputs out;
  out.cells = plan.cell_count();
  out.runs = descs.size();
  out.results_path = plan.out_dir + "/results.csv";
  out.summary_path = plan.out_dir + "/summary.csv";
  out.trajectories_path = plan.out_dir + "/trajectories.csv";

  {
    std::ofstream res(out.results_path);
    if (!res)
      throw std::invalid_argument("cannot write " + out.results_path);
    res << kResultsHeader << "\n";
    for (std::size_t ri = 0; ri < descs.size(); ++ri) {
      const RunDesc& d = descs[ri];
      const RunSlot& slot = slots[ri];
      const PairData& pd = pairs[d.pair];
      char id[16];
      std::snprintf(id, sizeof id, "r%06zu", ri);
      res << id << ',' << d.dataset_tag << ',' << d.seed << ',';
      if (d.mode == RunMode::Adaptive) {
        res << to_string(d.cfg.include) << ',' << to_string(d.cfg.exclude)
            << ',' << to_string(d.cfg.balance) << ','
            << (d.cfg.keep_only_sv ? "true" : "false") << ','
            << (d.cfg.relabel ? "true" : "false") << ',' << d.cfg.capacity
            << ',';
      } else {
        res << to_string(d.mode) << ",-,-,-,-,-,";
      }
      res << (pd.has_c ? fmt_g17(pd.best_c) : "") << ',';
      if (slot.error.empty()) {
        res << fmt_g17(slot.rec.final_ba) << ',' << slot.rec.update_count
            << ',' << slot.rec.retrain_count << ','
            << fmt_wall(slot.rec.wall_time_s) << ','
            << flags_cell(slot.rec.flags) << ",\n";
      } else {
        res << ",,,,," << sanitize_cell(slot.error) << "\n";
      }
    }
  }

  {
    std::ofstream tra(out.trajectories_path);
    if (!tra)
      throw std::invalid_argument("cannot write " + out.trajectories_path);
    tra << "run_id,arrival_index,ba\n";
    for (std::size_t ri = 0; ri < descs.size(); ++ri) {
      if (!slots[ri].error.empty()) continue;
      char id[16];
      std::snprintf(id, sizeof id, "r%06zu", ri);
      for (const auto& p : slots[ri].rec.trajectory)
        tra << id << ',' << p.arrival_index << ',' << fmt_g17(p.ba) << "\n";
    }
  }

  write_summary_csv(out.results_path, out.summary_path);
  if (!plan.quiet) std::cout << "wrote " << out.results_path << "\n";
  return out;
}

std::vector<ResultRow> read_results_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open results file: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("empty results file: " + path);
  {
    auto cells = split_csv_line(line);
    if (cells.empty() || cells[0] != "run_id")
      throw std::invalid_argument("unrecognized results header in " + path);
  }
  std::vector<ResultRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != 16)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected 16 cells, got " +
                                  std::to_string(cells.size()));
    ResultRow r;
    r.run_id = cells[0];
    r.dataset = cells[1];
    r.seed = cells[2];
    r.include = cells[3];
    r.exclude = cells[4];
    r.balance = cells[5];
    r.ksv = cells[6];
    r.relabel = cells[7];
    r.capacity = cells[8];
    r.flags = cells[14];
    r.error = cells[15];
    r.ok = r.error.empty() && !cells[10].empty();
    if (r.ok) {
      r.C = std::stod(cells[9]);
      r.final_ba = std::stod(cells[10]);
      r.update_count = std::stoull(cells[11]);
      r.retrain_count = std::stoull(cells[12]);
      r.wall_time_s = std::stod(cells[13]);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_summary_csv(const std::string& results_path,
                       const std::string& summary_path) {
  auto rows = read_results_csv(results_path);

  struct Agg {
    std::string include, exclude, balance, ksv, relabel, capacity;
    std::vector<double> bas;
  };
  std::vector<Agg> groups;
  std::map<std::string, std::size_t> index;
  for (const auto& r : rows) {
    if (!r.ok) continue;
    std::string key = r.include + "," + r.exclude + "," + r.balance + "," +
                      r.ksv + "," + r.relabel + "," + r.capacity;
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, groups.size()).first;
      groups.push_back({r.include, r.exclude, r.balance, r.ksv, r.relabel,
                        r.capacity, {}});
    }
    groups[it->second].bas.push_back(r.final_ba);
  }

  std::ofstream out(summary_path);
  if (!out) throw std::invalid_argument("cannot write " + summary_path);
  out << "include,exclude,balance,ksv,relabel,capacity,n,mean_ba,stderr_ba\n";
  for (const auto& g : groups) {
    const std::size_t n = g.bas.size();
    double mean = 0.0;
    for (double v : g.bas) mean += v;
    mean /= double(n);
    double se = 0.0;
    if (n > 1) {
      double ss = 0.0;
      for (double v : g.bas) ss += (v - mean) * (v - mean);
      se = std::sqrt(ss / double(n - 1)) / std::sqrt(double(n));
    }
    out << g.include << ',' << g.exclude << ',' << g.balance << ',' << g.ksv
        << ',' << g.relabel << ',' << g.capacity << ',' << n << ','
        << fmt_g17(mean) << ',' << fmt_g17(se) << "\n";
  }
}

namespace {

char include_code(const std::string& s) {
  if (s == "ADD_ALL") return 'a';
  if (s == "ONLY_MISCLASSIFIED") return 'm';
  if (s == "ONLY_WITHIN_MARGIN") return 'w';
  return '?';
}

char exclude_code(const std::string& s) {
  if (s == "REMOVE_OLDEST") return 'o';
  if (s == "REMOVE_FARTHEST") return 'f';
  if (s == "REMOVE_NON_BORDER") return 'b';
  return '?';
}

char balance_code(const std::string& s) {
  if (s == "DONT_HANDLE_RATIO") return 'n';
  if (s == "KEEP_RATIO_AS_IT_IS") return 'k';
  if (s == "BALANCED_RATIO") return 'b';
  return '?';
}

char bool_code(const std::string& s) { return s == "true" ? 'y' : 'n'; }

std::string fmt_pct(double ba) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", 100.0 * ba);
  return buf;
}

}  // namespace

std::string table_report(const std::string& results_path) {
  auto rows = read_results_csv(results_path);

  std::vector<std::string> dataset_order;
  std::map<std::string, std::map<std::string, std::vector<double>>> cells;
  std::map<std::string, std::vector<double>> statics, pas;
  for (const auto& r : rows) {
    if (std::find(dataset_order.begin(), dataset_order.end(), r.dataset) ==
        dataset_order.end())
      dataset_order.push_back(r.dataset);
    if (!r.ok) continue;
    if (r.include == "STATIC") {
      statics[r.dataset].push_back(r.final_ba);
    } else if (r.include == "PA") {
      pas[r.dataset].push_back(r.final_ba);
    } else {
      std::string key = r.include + "," + r.exclude + "," + r.balance + "," +
                        r.ksv + "," + r.relabel + "," + r.capacity;
      cells[r.dataset][key].push_back(r.final_ba);
    }
  }

  std::ostringstream os;
  os << "DATASET        ADD REM BAL KSV REL  SIZE   PERF    SVM     PA\n";
  for (const auto& ds : dataset_order) {
    std::string best_key;
    double best_mean = 0.0;
    bool have = false;
    for (const auto& [key, bas] : cells[ds]) {
      double mean = 0.0;
      for (double v : bas) mean += v;
      mean /= double(bas.size());
      bool better = !have || mean > best_mean;
      if (!better && mean == best_mean) {
        // Deterministic tie rule: the smaller basket wins, then the
        // lexicographically smaller cell.
        auto cap = [](const std::string& k) {
          return std::stoull(k.substr(k.rfind(',') + 1));
        };
        if (cap(key) < cap(best_key) ||
            (cap(key) == cap(best_key) && key < best_key))
          better = true;
      }
      if (better) {
        best_key = key;
        best_mean = mean;
        have = true;
      }
    }

    char line[160];
    std::string svm = "-", pa = "-";
    if (statics.count(ds)) {
      double m = 0.0;
      for (double v : statics[ds]) m += v;
      svm = fmt_pct(m / double(statics[ds].size()));
    }
    if (pas.count(ds)) {
      double m = 0.0;
      for (double v : pas[ds]) m += v;
      pa = fmt_pct(m / double(pas[ds].size()));
    }
    if (have) {
      auto parts = split_csv_line(best_key);
      std::snprintf(line, sizeof line,
                    "%-14s  %c   %c   %c   %c   %c  %5s  %5s  %5s  %5s\n",
                    ds.c_str(), include_code(parts[0]), exclude_code(parts[1]),
                    balance_code(parts[2]), bool_code(parts[3]),
                    bool_code(parts[4]), parts[5].c_str(),
                    fmt_pct(best_mean).c_str(), svm.c_str(), pa.c_str());
    } else {
      std::snprintf(line, sizeof line,
                    "%-14s  -   -   -   -   -      -      -  %5s  %5s\n",
                    ds.c_str(), svm.c_str(), pa.c_str());
    }
    os << line;
  }
  return os.str();
}

}  // namespace driftsvm
