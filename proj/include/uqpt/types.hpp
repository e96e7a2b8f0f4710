#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace uqpt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using CountVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// Bad arguments, malformed labels, inconsistent record sets.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File-level failures (missing file, unparsable content).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Phase recovery ran out of usable inner products: the column set does not
/// pin the process down. `unresolved` holds the column indices whose phases
/// could not be chained to the anchor.
struct IdentifiabilityError : std::runtime_error {
  std::vector<int> unresolved;
  IdentifiabilityError(const std::string& msg, std::vector<int> cols)
      : std::runtime_error(msg), unresolved(std::move(cols)) {}
};

inline constexpr double kUnitNormTol = 1e-10;
inline constexpr double kUnitaryTolPerDim = 1e-8;

inline bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

/// Unit-norm complex state vector of dimension 2^n_qb. The constructor
/// enforces | ||v||^2 - 1 | <= 1e-10; use `normalized` to rescale first.
class PureState {
 public:
  explicit PureState(Vector amplitudes);
  static PureState normalized(Vector amplitudes);

  const Vector& amplitudes() const { return amp_; }
  Eigen::Index dim() const { return amp_.size(); }
  Complex operator[](Eigen::Index i) const { return amp_(i); }

 private:
  struct Unchecked {};
  PureState(Vector amplitudes, Unchecked) : amp_(std::move(amplitudes)) {}
  Vector amp_;
};

/// d x d complex matrix with ||U*U - I||_F <= 1e-8 * d.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(Matrix entries);
  static UnitaryMatrix identity(Eigen::Index dim);

  const Matrix& entries() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

}  // namespace uqpt
