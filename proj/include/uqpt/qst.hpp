#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uqpt/counts.hpp"
#include "uqpt/measurement.hpp"
#include "uqpt/types.hpp"

namespace uqpt {

struct QstOptions {
  int restarts = 8;             // heuristic start plus random restarts
  int max_iterations = 2000;
  double gradient_tolerance = 1e-9;
  std::uint64_t seed = 1;
  /// Test hook: per-restart objective values, one inner vector per start.
  std::vector<std::vector<double>>* objective_traces = nullptr;
};

struct QstEstimate {
  PureState state;     // canonical phase: first amplitude with |a| > 1e-6 is real >= 0
  double residual;     // final weighted least-squares objective
  bool converged;      // projected gradient norm fell below the tolerance
};

/// Estimate the pure state behind one set of count records (one record per
/// measurement type in `meas`, all summing to the same n_c), up to a global
/// phase.
///
/// The fit minimizes, over unit-norm v,
///   sum_m sum_j (p_model - p_emp)^2 / max(p_emp (1-p_emp)/n_c, 1/(4 n_c^2))
/// with p_model = |E_m^* v|^2 and p_emp the observed frequencies; this is the
/// Gaussian approximation of the multinomial likelihood with a variance floor
/// at empirical frequencies 0 and 1. Optimization runs multi-start projected
/// gradient descent (monotone Armijo line search) over the 2d real
/// coordinates of v, renormalizing after each step.
QstEstimate qst_estimate(const std::vector<CountsRecord>& records, const MeasurementSet& meas,
                         const QstOptions& options = {});

/// One estimate per state label, in the order of `counts.states`. Per-state
/// optimizer seeds are derived from options.seed and the state's position,
/// so the batch gives identical results whether run sequentially or not.
std::vector<std::pair<std::string, QstEstimate>> qst_batch(const CountsFile& counts,
                                                           const MeasurementSet& meas,
                                                           const QstOptions& options = {});

}  // namespace uqpt
