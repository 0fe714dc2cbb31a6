#include "driftsvm/datagen.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "driftsvm/rng.hpp"

namespace driftsvm {

const char* to_string(Dataset d) {
  switch (d) {
    case Dataset::Parallel: return "Parallel";
    case Dataset::LinearShift: return "LinearShift";
    case Dataset::Opposite: return "Opposite";
    case Dataset::Cross: return "Cross";
    case Dataset::Parabola: return "Parabola";
    case Dataset::SEA3D: return "SEA3D";
  }
  throw std::invalid_argument("bad Dataset");
}

Dataset dataset_from_string(const std::string& s) {
  if (s == "Parallel") return Dataset::Parallel;
  if (s == "LinearShift") return Dataset::LinearShift;
  if (s == "Opposite") return Dataset::Opposite;
  if (s == "Cross") return Dataset::Cross;
  if (s == "Parabola") return Dataset::Parabola;
  if (s == "SEA3D") return Dataset::SEA3D;
  throw std::invalid_argument("unknown dataset '" + s + "'");
}

namespace {

constexpr double kDeg30Cos = 0.86602540378443864676;  // cos(30 deg)
constexpr double kDeg30Sin = 0.5;
constexpr double kDeg75Cos = 0.25881904510252076235;  // cos(75 deg)
constexpr double kDeg75Sin = 0.96592582628906828675;

}  // namespace

std::array<double, 2> class_mean(Dataset dataset, int label, double t,
                                 double magnitude) {
  // Initial means: majority C1 (label -1) at (-2, 0), minority C2 (+1) at
  // (+2, 0). The initial optimal boundary is the vertical axis.
  const bool minority = label > 0;
  const double m = magnitude;
  switch (dataset) {
    case Dataset::Parallel:
      // Both means slide along the boundary direction; the separator never
      // has to move.
      return {minority ? 2.0 : -2.0, m * t};
    case Dataset::LinearShift:
      // Shared velocity along the boundary normal; the majority mean crosses
      // the initial boundary at t = 2/m.
      return {(minority ? 2.0 : -2.0) + m * t, 0.0};
    case Dataset::Opposite: {
      // Velocities +-m at 30 degrees; closest simultaneous approach is 2.0.
      const double vx = m * kDeg30Cos * t;
      const double vy = m * kDeg30Sin * t;
      return minority ? std::array<double, 2>{2.0 - vx, -vy}
                      : std::array<double, 2>{-2.0 + vx, vy};
    }
    case Dataset::Cross: {
      // The two trajectory segments intersect, but the classes pass the
      // crossing point at different times.
      if (minority) {
        return {2.0 - m * kDeg75Cos * t, m * kDeg75Sin * t};
      }
      return {-2.0 + m * kDeg30Cos * t, m * kDeg30Sin * t};
    }
    case Dataset::Parabola: {
      // Majority fixed; minority arcs over it with height 4, landing on the
      // far side. The horizontal travel scales with the drift magnitude.
      if (!minority) return {-2.0, 0.0};
      const double x = 2.0 - m * t;
      const double u = (x + 1.0) / 3.0;
      return {x, 4.0 * (1.0 - u * u)};
    }
    case Dataset::SEA3D:
      break;
  }
  throw std::invalid_argument("class_mean: not a 2-D drift dataset");
}

LabeledStream gen_2d_drift(const DriftSpec& spec) {
  if (spec.dataset == Dataset::SEA3D) {
    throw std::invalid_argument("gen_2d_drift: SEA3D is not a 2-D drift dataset");
  }
  if (spec.n_train >= spec.n_total) {
    throw std::invalid_argument("gen_2d_drift: n_train must be below n_total");
  }
  if (spec.noise_sigma <= 0.0 || spec.class_ratio <= 0.0) {
    throw std::invalid_argument("gen_2d_drift: sigma and ratio must be positive");
  }

  LabeledStream out;
  out.dimension = 2;
  out.name = to_string(spec.dataset);
  out.samples.reserve(spec.n_total);

  std::mt19937_64 rng(mix_seed(spec.seed, 0xd47a));
  const double minority_p = 1.0 / (1.0 + spec.class_ratio);
  for (std::size_t i = 0; i < spec.n_total; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(spec.n_total);
    const int label = uniform01(rng) < minority_p ? 1 : -1;
    const std::array<double, 2> mean =
        class_mean(spec.dataset, label, t, spec.drift_magnitude);
    const auto [g0, g1] = normal_pair(rng);
    Sample s;
    s.arrival_index = i;
    s.label = label;
    s.features = {mean[0] + spec.noise_sigma * g0,
                  mean[1] + spec.noise_sigma * g1};
    out.samples.push_back(std::move(s));
  }
  return out;
}

LabeledStream gen_sea3d(const DriftSpec& spec) {
  if (spec.dataset != Dataset::SEA3D) {
    throw std::invalid_argument("gen_sea3d: dataset must be SEA3D");
  }
  if (spec.n_train >= spec.n_total) {
    throw std::invalid_argument("gen_sea3d: n_train must be below n_total");
  }

  LabeledStream out;
  out.dimension = 3;
  out.name = to_string(spec.dataset);
  out.samples.reserve(spec.n_total);

  std::mt19937_64 rng(mix_seed(spec.seed, 0x5ea3));
  double theta = 0.0;
  for (std::size_t i = 0; i < spec.n_total; ++i) {
    if (i % 100 == 0) {
      theta = 6.0 + 8.0 * uniform01(rng);
      out.sea_thetas.push_back(theta);
    }
    Sample s;
    s.arrival_index = i;
    s.features = {10.0 * uniform01(rng), 10.0 * uniform01(rng),
                  10.0 * uniform01(rng)};
    int label = s.features[0] + s.features[1] <= theta ? 1 : -1;
    if (uniform01(rng) < 0.10) label = -label;
    s.label = label;
    out.samples.push_back(std::move(s));
  }
  return out;
}

LabeledStream generate(const DriftSpec& spec) {
  return spec.dataset == Dataset::SEA3D ? gen_sea3d(spec) : gen_2d_drift(spec);
}

std::pair<std::vector<Sample>, std::vector<Sample>> split_train_test(
    const LabeledStream& stream, std::size_t n_train) {
  if (n_train == 0 || n_train >= stream.samples.size()) {
    throw std::invalid_argument("split_train_test: n_train out of range");
  }
  std::vector<Sample> train(stream.samples.begin(),
                            stream.samples.begin() + static_cast<std::ptrdiff_t>(n_train));
  std::vector<Sample> test(stream.samples.begin() + static_cast<std::ptrdiff_t>(n_train),
                           stream.samples.end());
  return {std::move(train), std::move(test)};
}

void write_stream(std::ostream& out, const LabeledStream& stream) {
  char buf[64];
  for (const Sample& s : stream.samples) {
    out << s.arrival_index;
    for (double f : s.features) {
      std::snprintf(buf, sizeof buf, "%.17g", f);
      out << ", " << buf;
    }
    out << ", " << s.label << "\n";
  }
}

LabeledStream read_stream(std::istream& in, std::string name) {
  LabeledStream out;
  out.name = std::move(name);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::string cleaned = line;
    for (char& c : cleaned) {
      if (c == ',') c = ' ';
    }
    std::istringstream fields(cleaned);
    Sample s;
    if (!(fields >> s.arrival_index)) {
      throw std::invalid_argument("stream line " + std::to_string(line_no) +
                                  ": bad arrival index");
    }
    std::vector<double> values;
    double v;
    while (fields >> v) values.push_back(v);
    if (values.size() < 2) {
      throw std::invalid_argument("stream line " + std::to_string(line_no) +
                                  ": need at least one feature and a label");
    }
    const double label = values.back();
    values.pop_back();
    if (label != 1.0 && label != -1.0) {
      throw std::invalid_argument("stream line " + std::to_string(line_no) +
                                  ": label must be 1 or -1");
    }
    s.label = static_cast<int>(label);
    s.features = std::move(values);
    if (!out.samples.empty() &&
        s.features.size() != out.samples.front().features.size()) {
      throw std::invalid_argument("stream line " + std::to_string(line_no) +
                                  ": inconsistent feature count");
    }
    if (s.arrival_index != out.samples.size()) {
      throw std::invalid_argument("stream line " + std::to_string(line_no) +
                                  ": arrival index must equal the position");
    }
    out.samples.push_back(std::move(s));
  }
  if (out.samples.empty()) {
    throw std::invalid_argument("stream file is empty");
  }
  out.dimension = out.samples.front().features.size();
  return out;
}

}  // namespace driftsvm
