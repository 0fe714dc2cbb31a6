// Runs the same experiment grid twice, once on a single worker and once on
// all cores, times both, and checks the outputs are byte-identical apart
// from the wall_time_s column. Exit status 0 means they matched.

#include <omp.h>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "driftsvm/experiment.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// results.csv with the wall_time_s cell (column 14 of 16) blanked out.
std::string without_wall_column(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t begin = 0;
    int col = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        if (col != 13) out << line.substr(begin, i - begin);
        if (i < line.size()) out << ',';
        begin = i + 1;
        ++col;
      }
    }
    out << '\n';
  }
  return out.str();
}

double run_timed(driftsvm::ExperimentPlan plan, int workers,
                 const std::string& out_dir) {
  plan.workers = workers;
  plan.out_dir = out_dir;
  auto t0 = std::chrono::steady_clock::now();
  driftsvm::run_plan(plan);
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = false;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--quick") quick = true;
  }

  std::string plan_text = quick ? R"(
datasets = LinearShift
seeds = 1
include = ADD_ALL ONLY_WITHIN_MARGIN
exclude = REMOVE_OLDEST
capacity = 100
c_grid = logspace 0 -2 3
n_total = 2000
n_train = 300
)"
                                : R"(
datasets = LinearShift
seeds = 1 2
include = ADD_ALL ONLY_WITHIN_MARGIN
exclude = REMOVE_OLDEST REMOVE_FARTHEST
capacity = 100 400
c_grid = logspace 0 -2 5
n_total = 6000
n_train = 600
)";

  try {
    driftsvm::ExperimentPlan plan =
        driftsvm::parse_plan_text(plan_text, "<bench>");

    double serial = run_timed(plan, 1, "bench_out/serial");
    double parallel = run_timed(plan, 0, "bench_out/parallel");

    std::cout << "serial   (1 worker):  " << serial << " s\n";
    std::cout << "parallel (" << omp_get_max_threads()
              << " workers): " << parallel << " s\n";
    std::cout << "speedup: " << serial / parallel << "x\n";

    bool ok = true;
    if (without_wall_column("bench_out/serial/results.csv") !=
        without_wall_column("bench_out/parallel/results.csv")) {
      std::cout << "MISMATCH in results.csv\n";
      ok = false;
    }
    if (read_file("bench_out/serial/summary.csv") !=
        read_file("bench_out/parallel/summary.csv")) {
      std::cout << "MISMATCH in summary.csv\n";
      ok = false;
    }
    if (read_file("bench_out/serial/trajectories.csv") !=
        read_file("bench_out/parallel/trajectories.csv")) {
      std::cout << "MISMATCH in trajectories.csv\n";
      ok = false;
    }
    std::cout << (ok ? "outputs identical apart from timing\n"
                     : "outputs differ\n");
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
