#include "uqpt/types.hpp"

#include <cmath>

namespace uqpt {

PureState::PureState(Vector amplitudes) : amp_(std::move(amplitudes)) {
  if (!is_power_of_two(amp_.size())) {
    throw ValidationError("pure state dimension must be a power of two, got " +
                          std::to_string(amp_.size()));
  }
  if (!amp_.allFinite()) {
    throw ValidationError("pure state has non-finite amplitudes");
  }
  const double norm2 = amp_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kUnitNormTol) {
    throw ValidationError("pure state is not unit-norm: ||v||^2 = " + std::to_string(norm2));
  }
}

PureState PureState::normalized(Vector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !amplitudes.allFinite()) {
    throw ValidationError("cannot normalize a zero or non-finite vector");
  }
  return PureState(Vector(amplitudes / norm), Unchecked{});
}

UnitaryMatrix::UnitaryMatrix(Matrix entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1) {
    throw ValidationError("unitary matrix must be square and non-empty");
  }
  if (!m_.allFinite()) {
    throw ValidationError("unitary matrix has non-finite entries");
  }
  const Eigen::Index d = m_.rows();
  const double defect = (m_.adjoint() * m_ - Matrix::Identity(d, d)).norm();
  if (defect > kUnitaryTolPerDim * static_cast<double>(d)) {
    throw ValidationError("matrix is not unitary: ||U*U - I||_F = " + std::to_string(defect));
  }
}

UnitaryMatrix UnitaryMatrix::identity(Eigen::Index dim) {
  return UnitaryMatrix(Matrix::Identity(dim, dim));
}

}  // namespace uqpt
