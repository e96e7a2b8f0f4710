#pragma once

#include <utility>
#include <vector>

#include "uqpt/types.hpp"

namespace uqpt {

/// Non-orthogonality graph over the columns of a matrix:
/// edge(a, b) iff |x_a^* x_b| >= threshold. Self-edges are always present.
struct OrthogonalityGraph {
  int n_x = 0;
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> adjacency;

  static OrthogonalityGraph from_columns(const Matrix& x, double threshold);
  std::vector<std::vector<int>> connected_components() const;
};

/// Fixpoint of the non-orthogonality expansion started from one column:
/// repeatedly add every column that is non-orthogonal to the current set.
/// Reached in at most n_x steps; returns sorted member indices.
std::vector<int> nonorthogonal_closure(const Matrix& x, int seed_column,
                                       double threshold = 1e-10);

struct IdentifiabilityReport {
  bool identifiable = false;  // every column's closure spans the full space
  bool sufficient = false;    // full rank and some column non-orthogonal to all others
  int anchor = -1;            // witness column for `sufficient`, -1 if none
  std::vector<std::pair<int, int>> closure_ranks;  // (column, rank of its closure)
  double smallest_singular_value = 0.0;
  double anchor_min_dot = 0.0;  // best over columns of (min |dot| with the others)
};

/// Necessary-and-sufficient identifiability check: for every column, the
/// numerical rank of its closure equals the space dimension. Also fills the
/// sufficient-condition fields and the conditioning margins.
IdentifiabilityReport check_identifiable(const Matrix& x, double threshold = 1e-10);

/// Sufficient condition only: rank(x) = d and a column exists whose inner
/// product with every other column clears the threshold. Returns the flag
/// and the anchor index (-1 when the condition fails).
std::pair<bool, int> check_sufficient(const Matrix& x, double threshold = 1e-10);

/// Whether only global phases commute with every projector x_l x_l^*.
/// Decided through the partition of columns into non-orthogonality
/// components: the commutant is trivial exactly when one component's columns
/// span the whole space.
bool commutant_is_trivial(const Matrix& x, double threshold = 1e-10);

struct IndistinguishableGate {
  UnitaryMatrix gate;
  RealVector column_phases;  // M x_l = gate x_l * e^{i phase_l} for every column
  bool rank_deficient_case;  // true: null-space construction; false: split-space
};

/// For a column set that fails the identifiability condition, construct a
/// unitary that differs from `m` by more than a global phase yet produces
/// the same outputs up to per-column phases. Throws when the columns are
/// actually identifiable or when the phase is a multiple of 2*pi.
IndistinguishableGate build_indistinguishable_gate(const Matrix& x, const UnitaryMatrix& m,
                                                   double phase, double threshold = 1e-10);

}  // namespace uqpt
