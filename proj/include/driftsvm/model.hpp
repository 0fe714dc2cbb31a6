#pragma once

#include <cstdint>
#include <random>

#include "driftsvm/basket.hpp"
#include "driftsvm/types.hpp"

namespace driftsvm {

/// Epoch budget for refits during online operation.
inline constexpr long kOnlineMaxEpochs = 10;

/// Cold fits get this many epochs per stored sample.
inline constexpr long kOfflineEpochsPerSample = 100;

/// Stopping tolerance used throughout: min(0.01 * C, 0.01).
double solver_tolerance(double C);

/// f(x) = <w, x> + b. Throws std::invalid_argument on dimension mismatch.
double decision_value(const LinearModel& model, const std::vector<double>& x);

struct FitResult {
  LinearModel model;
  DualState dual;
  long epochs = 0;        // full sweeps actually performed
  double violation = 0.0; // max projected-gradient violation of the last sweep
};

/// Trains the soft-margin linear model on the basket contents by dual
/// coordinate descent. `warm`, when given, must be index-aligned with the
/// basket; its values are clipped into the current box and used as the
/// starting point. Stops after a full sweep whose largest projected-gradient
/// violation is below `tolerance`, or after `max_epochs` sweeps. Coordinate
/// order is re-permuted each epoch from `rng`, so fits are reproducible for a
/// fixed engine state.
FitResult fit_dcd(const Basket& basket, double C, const ClassWeights& weights,
                  const DualState* warm, long max_epochs, double tolerance,
                  std::mt19937_64& rng);

/// Single passive-aggressive step: tau = min(C_y, loss / (<x,x> + 1)) applied
/// along y*x (and y for the offset). No-op when the hinge loss is zero.
/// Bit-identical to one dual coordinate step on a fresh coordinate.
LinearModel pa_update(const LinearModel& model, const std::vector<double>& x,
                      int y, double C, const ClassWeights& weights);

/// Largest violation of the box-constrained optimality conditions over the
/// basket, measured as the projected gradient magnitude under the given
/// model's decision values. Zero at an exact optimum. Throws std::logic_error
/// if `dual` is not aligned with `basket`.
double kkt_violation(const Basket& basket, const DualState& dual,
                     const LinearModel& model, double C,
                     const ClassWeights& weights);

}  // namespace driftsvm
