#include "uqpt/linalg.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace uqpt {

Matrix tensor_product(const Matrix& a, const Matrix& b) {
  const Eigen::Index ra = a.rows(), ca = a.cols();
  const Eigen::Index rb = b.rows(), cb = b.cols();
  Matrix out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i) {
    for (Eigen::Index j = 0; j < ca; ++j) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

UnitaryMatrix random_unitary(Eigen::Index dim, Rng& rng) {
  if (dim < 1) throw ValidationError("random_unitary: dim must be >= 1");
  constexpr int kMaxAttempts = 16;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Matrix a(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
      for (Eigen::Index i = 0; i < dim; ++i) a(i, j) = complex_normal(rng);
    }
    // modified Gram-Schmidt: column j is re-projected against each finished
    // column in turn, which keeps the loss of orthogonality bounded
    bool ok = true;
    for (Eigen::Index j = 0; j < dim && ok; ++j) {
      for (Eigen::Index i = 0; i < j; ++i) {
        const Complex proj = a.col(i).dot(a.col(j));
        a.col(j) -= proj * a.col(i);
      }
      const double norm = a.col(j).norm();
      if (norm < 1e-8 * std::sqrt(static_cast<double>(dim))) {
        ok = false;
        break;
      }
      a.col(j) /= norm;
    }
    if (ok) return UnitaryMatrix(std::move(a));
  }
  throw ValidationError("random_unitary: repeated rank-deficient draws");
}

double global_phase_alignment(const Matrix& estimate, const Matrix& reference) {
  const Complex t = (estimate.adjoint() * reference).trace();
  if (t == Complex(0.0, 0.0)) return 0.0;
  return std::arg(t);
}

double error_metric(const UnitaryMatrix& estimate, const UnitaryMatrix& reference) {
  if (estimate.dim() != reference.dim()) {
    throw ValidationError("error_metric: dimension mismatch");
  }
  const double d = static_cast<double>(reference.dim());
  const double phi = global_phase_alignment(estimate.entries(), reference.entries());
  const Complex rot = std::polar(1.0, phi);
  const double dist = (reference.entries() - rot * estimate.entries()).norm();
  return std::min(1.0, dist / std::sqrt(2.0 * d));
}

double fidelity(const UnitaryMatrix& estimate, const UnitaryMatrix& reference) {
  const double eps = error_metric(estimate, reference);
  return 1.0 - eps * eps;
}

NearestUnitaryResult nearest_unitary(const Matrix& b) {
  if (b.rows() != b.cols() || b.rows() < 1) {
    throw ValidationError("nearest_unitary: matrix must be square");
  }
  Eigen::JacobiSVD<Matrix> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double smin = svd.singularValues().minCoeff();
  Matrix u = svd.matrixU() * svd.matrixV().adjoint();
  return NearestUnitaryResult{UnitaryMatrix(std::move(u)), smin < 1e-12, smin};
}

int numerical_rank(const Matrix& m, double rel_tol) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cutoff = rel_tol * sv(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff && sv(i) > 0.0) ++rank;
  }
  return rank;
}

double smallest_singular_value(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().minCoeff();
}

double largest_singular_value(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().maxCoeff();
}

}  // namespace uqpt
