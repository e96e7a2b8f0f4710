#pragma once

#include "uqpt/rng.hpp"
#include "uqpt/types.hpp"

namespace uqpt {

/// Kronecker product with (a (x) b)[i*rb+k, j*cb+l] = a[i,j] * b[k,l].
Matrix tensor_product(const Matrix& a, const Matrix& b);

/// Unitary drawn by modified Gram-Schmidt orthonormalization of a matrix with
/// i.i.d. circularly-symmetric complex standard normal entries. Deterministic
/// given the generator state; retries a bounded number of times on a
/// numerically rank-deficient draw before giving up.
UnitaryMatrix random_unitary(Eigen::Index dim, Rng& rng);

/// Phase angle that best aligns `estimate` to `reference`:
/// arg(tr(estimate^* reference)). Defined as 0 when the trace vanishes (the
/// metric below then evaluates to 1, the orthogonal case).
double global_phase_alignment(const Matrix& estimate, const Matrix& reference);

/// Distance in [0, 1] between unitaries, invariant under a global phase:
/// (1/sqrt(2d)) * ||reference - estimate * e^{i phi}||_F with phi the
/// optimal alignment angle.
double error_metric(const UnitaryMatrix& estimate, const UnitaryMatrix& reference);

/// f = 1 - epsilon^2.
double fidelity(const UnitaryMatrix& estimate, const UnitaryMatrix& reference);

struct NearestUnitaryResult {
  UnitaryMatrix unitary;
  bool degenerate;  // some singular value below 1e-12: the minimizer is not unique
  double smallest_singular_value;
};

/// Unitary closest to `b` in Frobenius norm: U V^* from the SVD b = U S V^*.
NearestUnitaryResult nearest_unitary(const Matrix& b);

/// Number of singular values above rel_tol * (largest singular value).
int numerical_rank(const Matrix& m, double rel_tol = 1e-8);

double smallest_singular_value(const Matrix& m);
double largest_singular_value(const Matrix& m);

}  // namespace uqpt
