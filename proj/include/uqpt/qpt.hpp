#pragma once

#include <map>
#include <utility>
#include <vector>

#include "uqpt/counts.hpp"
#include "uqpt/measurement.hpp"
#include "uqpt/qst.hpp"
#include "uqpt/types.hpp"

namespace uqpt {

/// Paired estimates of states before and after one application of the
/// process. Column l of y_hat is the image of column l of x_hat: both come
/// from the same initial state j, with delays k and k+1.
struct QptProblem {
  Matrix x_hat;  // d x n_x, unit-norm columns
  Matrix y_hat;  // d x n_x, unit-norm columns
  int n_i = 0;
  int n_s = 0;
  std::vector<std::pair<int, int>> column_map;  // (j, k) of each x column, 1-based
};

/// Per-column phase corrections, zero at the anchor. `dropped` lists columns
/// whose phases could not be chained and were removed before the solve.
struct PhaseAssignment {
  RealVector xi;
  int anchor = 0;
  std::vector<int> dropped;
};

struct QptResult {
  UnitaryMatrix m_hat;
  PhaseAssignment phases;
  double tls_residual = 0.0;  // ||dX||^2 + ||dY||^2 at the optimum
  bool degenerate = false;    // x_hat or the re-phased y lost rank: solution not unique
};

/// Columns ordered as v(j=1,k=1) ... v(1,n_s-1), v(2,1) ... v(n_i,n_s-1);
/// y takes the same state one delay later. Estimates are renormalized
/// defensively on entry.
QptProblem assemble_problem(const std::map<std::pair<int, int>, PureState>& estimates, int n_i,
                            int n_s);

/// Phase difference between columns l1 and l2 preserved by the process:
/// arg( (x_l1^* x_l2) / (y_l1^* y_l2) ). Throws when the y inner product is
/// exactly zero.
double pairwise_phase(const Matrix& x_hat, const Matrix& y_hat, int l1, int l2);

/// Column whose smallest |inner product| with the other columns is largest;
/// ties break to the smallest index. For a single column the min over the
/// empty set counts as +infinity.
int choose_anchor(const Matrix& y_hat);

/// Recover all column phases relative to the anchor. Below `orth_cutoff` two
/// unit vectors count as orthogonal. When the anchor reaches every column
/// directly the phases come straight from the pairwise formula; otherwise
/// phases are chained through a growing resolved set, unresolvable columns
/// are dropped once the resolved set spans C^d, the cutoff is relaxed to 0
/// once, and only then does recovery fail (IdentifiabilityError).
PhaseAssignment recover_phases(const QptProblem& problem, double orth_cutoff = 0.05);

/// Unitary total-least-squares fit of y_tilde ~ M x_hat: the polar factor of
/// y_tilde x_hat^*. `phases` is left empty for the caller to fill.
QptResult solve_unitary_tls(const Matrix& x_hat, const Matrix& y_tilde);

/// Full pipeline: per-state tomography, problem assembly from the "M^k vj"
/// record labels, phase recovery (dropping columns if needed), TLS solve.
QptResult qpt_pipeline(const CountsFile& counts, const MeasurementSet& meas, int n_i, int n_s,
                       const QstOptions& qst_options = {}, double orth_cutoff = 0.05);

/// Standard-setup variant: inputs are trusted as given, outputs ("M vj"
/// records) are estimated; the rest of the pipeline is unchanged.
QptResult sqpt_pipeline(const std::vector<PureState>& known_inputs, const CountsFile& counts,
                        const MeasurementSet& meas, const QstOptions& qst_options = {},
                        double orth_cutoff = 0.05);

}  // namespace uqpt
