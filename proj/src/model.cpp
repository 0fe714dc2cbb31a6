#include "driftsvm/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "driftsvm/rng.hpp"

namespace driftsvm {

double solver_tolerance(double C) { return std::min(0.01 * C, 0.01); }

double decision_value(const LinearModel& model, const std::vector<double>& x) {
  if (x.size() != model.w.size()) {
    throw std::invalid_argument("decision_value: dimension mismatch");
  }
  return dot(model.w, x) + model.b;
}

LinearModel pa_update(const LinearModel& model, const std::vector<double>& x,
                      int y, double C, const ClassWeights& weights) {
  if (x.size() != model.w.size()) {
    throw std::invalid_argument("pa_update: dimension mismatch");
  }
  const double f = dot(model.w, x) + model.b;
  const double loss = 1.0 - y * f;
  if (loss <= 0.0) return model;

  const double q = dot(x, x) + 1.0;
  const double bound = C * weights.for_label(y);
  // Identical rounding to one coordinate-descent step from alpha = 0: the
  // loss is the negated gradient and IEEE negation commutes with division.
  const double tau = std::min(bound, loss / q);

  LinearModel out = model;
  const double yd = y;
  for (std::size_t k = 0; k < x.size(); ++k) out.w[k] += tau * yd * x[k];
  out.b += tau * yd;
  return out;
}

double kkt_violation(const Basket& basket, const DualState& dual,
                     const LinearModel& model, double C,
                     const ClassWeights& weights) {
  if (dual.alphas.size() != basket.size()) {
    throw std::logic_error("kkt_violation: dual misaligned with basket");
  }
  double viol = 0.0;
  for (std::size_t i = 0; i < basket.size(); ++i) {
    const BasketEntry& e = basket[i];
    const double yd = e.current_label;
    const double G = yd * decision_value(model, e.sample.features) - 1.0;
    const double bound = C * weights.for_label(e.current_label);
    const double a = dual.alphas[i];
    double pg = G;
    if (a <= 0.0) pg = std::min(G, 0.0);
    else if (a >= bound) pg = std::max(G, 0.0);
    viol = std::max(viol, std::fabs(pg));
  }
  return viol;
}

FitResult fit_dcd(const Basket& basket, double C, const ClassWeights& weights,
                  const DualState* warm, long max_epochs, double tolerance,
                  std::mt19937_64& rng) {
  if (basket.empty()) throw std::logic_error("fit_dcd: empty basket");
  if (C <= 0.0) throw std::invalid_argument("fit_dcd: C must be positive");
  if (tolerance <= 0.0) {
    throw std::invalid_argument("fit_dcd: tolerance must be positive");
  }
  if (max_epochs <= 0) {
    throw std::invalid_argument("fit_dcd: epoch budget must be positive");
  }
  if (warm && warm->alphas.size() != basket.size()) {
    throw std::logic_error("fit_dcd: warm duals misaligned with basket");
  }

  const std::size_t n = basket.size();
  const std::size_t d = basket[0].sample.features.size();

  // Flatten deque access out of the sweep loop and clip warm duals into the
  // current box (labels or C may have changed since they were produced).
  std::vector<const BasketEntry*> entries(n);
  std::vector<double> bounds(n);
  std::vector<double> alpha(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    entries[i] = &basket[i];
    if (entries[i]->sample.features.size() != d) {
      throw std::invalid_argument("fit_dcd: inconsistent feature dimensions");
    }
    bounds[i] = C * weights.for_label(entries[i]->current_label);
    if (warm) alpha[i] = std::clamp(warm->alphas[i], 0.0, bounds[i]);
  }

  std::vector<double> w(d, 0.0);
  double b = 0.0;
  // Left-to-right accumulation over basket order; used both to seed the
  // sweeps and to restate w, b exactly from the final duals.
  auto rebuild = [&]() {
    std::fill(w.begin(), w.end(), 0.0);
    b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double ay = alpha[i] * entries[i]->current_label;
      const std::vector<double>& x = entries[i]->sample.features;
      for (std::size_t k = 0; k < d; ++k) w[k] += ay * x[k];
      b += ay;
    }
  };
  rebuild();

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;

  long performed = 0;
  double viol = 0.0;
  while (performed < max_epochs) {
    shuffle_portable(order, rng);
    viol = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      const std::size_t i = order[s];
      const BasketEntry& e = *entries[i];
      const double yd = e.current_label;
      const std::vector<double>& x = e.sample.features;
      const double f = dot(w, x) + b;
      const double G = yd * f - 1.0;
      const double a = alpha[i];
      double pg = G;
      if (a <= 0.0) pg = std::min(G, 0.0);
      else if (a >= bounds[i]) pg = std::max(G, 0.0);
      viol = std::max(viol, std::fabs(pg));
      if (pg != 0.0) {
        const double a_new = std::min(std::max(a - G / e.qii, 0.0), bounds[i]);
        const double delta = a_new - a;
        if (delta != 0.0) {
          alpha[i] = a_new;
          for (std::size_t k = 0; k < d; ++k) w[k] += delta * yd * x[k];
          b += delta * yd;
        }
      }
    }
    ++performed;
    if (viol < tolerance) break;
  }

  rebuild();

  FitResult out;
  out.model.w = std::move(w);
  out.model.b = b;
  out.model.C = C;
  out.model.weights = weights;
  out.dual.alphas = std::move(alpha);
  double alpha_sum = 0.0;
  for (double a : out.dual.alphas) alpha_sum += a;
  out.dual.objective =
      0.5 * (dot(out.model.w, out.model.w) + out.model.b * out.model.b) -
      alpha_sum;
  out.epochs = performed;
  out.violation = viol;
  return out;
}

}  // namespace driftsvm
