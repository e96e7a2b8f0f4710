#pragma once

#include <string>
#include <vector>

#include "uqpt/rng.hpp"
#include "uqpt/types.hpp"

namespace uqpt {

enum class PauliAxis { X, Y, Z };

char axis_letter(PauliAxis axis);
PauliAxis axis_from_letter(char c);  // throws ValidationError on anything but X/Y/Z

/// 2x2 eigenvector matrix of the single-qubit measurement along the axis.
/// Columns are the measurement eigenvectors; Z is the computational basis.
Matrix pauli_matrix(PauliAxis axis);

struct MeasurementType {
  std::vector<PauliAxis> axes;  // one per qubit, first qubit first
  std::string label;            // concatenated axis letters, e.g. "ZX"
};

/// A family of parallel per-qubit measurements, each characterized by the
/// tensor product of its 2x2 per-qubit eigenvector matrices.
class MeasurementSet {
 public:
  /// The canonical 2*n_qb+1 types: all-Z first, then for i = 1..n_qb and
  /// S in {X, Y} the pattern Z^(n_qb-i) S X^(i-1).
  /// For two qubits: ZZ, ZX, ZY, XX, YX.
  static MeasurementSet defaults(int n_qb);

  /// Arbitrary axis-label list (all labels the same length), e.g. the
  /// hardware set ZZ, ZX, ZY, XX, YY.
  static MeasurementSet from_labels(const std::vector<std::string>& labels);

  int n_qb() const { return n_qb_; }
  Eigen::Index dim() const { return Eigen::Index(1) << n_qb_; }
  int size() const { return static_cast<int>(types_.size()); }
  const std::vector<MeasurementType>& types() const { return types_; }
  const MeasurementType& type(int i) const { return types_.at(i); }
  const Matrix& eigenvectors(int i) const { return matrices_.at(i); }

  /// Index of the type with this label, or -1.
  int find(const std::string& label) const;

 private:
  MeasurementSet(int n_qb, std::vector<MeasurementType> types);
  int n_qb_;
  std::vector<MeasurementType> types_;
  std::vector<Matrix> matrices_;
};

/// Born rule: element-wise |E^* v|^2. Entries are non-negative and sum to 1.
RealVector born_probabilities(const Matrix& eigenvectors, const PureState& state);

/// Multinomial draw with n_c trials, realized by sequential binomial
/// conditioning so the outcome stream depends only on the generator sequence.
CountVector sample_counts(const RealVector& probs, std::int64_t n_c, Rng& rng);

/// Deterministic expected counts: round(n_c * p) with a largest-remainder
/// fix-up so the total is exactly n_c.
CountVector expected_counts(const RealVector& probs, std::int64_t n_c);

/// Outcome j as a binary string of n_qb bits ("00", "01", ...).
std::string outcome_label(Eigen::Index j, int n_qb);

}  // namespace uqpt
