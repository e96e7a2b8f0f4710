#include "uqpt/measurement.hpp"

#include <algorithm>
#include <cmath>

namespace uqpt {

char axis_letter(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::X: return 'X';
    case PauliAxis::Y: return 'Y';
    case PauliAxis::Z: return 'Z';
  }
  throw ValidationError("unreachable axis value");
}

PauliAxis axis_from_letter(char c) {
  switch (c) {
    case 'X': return PauliAxis::X;
    case 'Y': return PauliAxis::Y;
    case 'Z': return PauliAxis::Z;
    default:
      throw ValidationError(std::string("invalid measurement axis '") + c + "'");
  }
}

Matrix pauli_matrix(PauliAxis axis) {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix m(2, 2);
  switch (axis) {
    case PauliAxis::X:
      m << Complex(s), Complex(s), Complex(s), Complex(-s);
      break;
    case PauliAxis::Y:
      m << Complex(s), Complex(s), Complex(0.0, s), Complex(0.0, -s);
      break;
    case PauliAxis::Z:
      m = Matrix::Identity(2, 2);
      break;
  }
  return m;
}

namespace {
Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}
}  // namespace

MeasurementSet::MeasurementSet(int n_qb, std::vector<MeasurementType> types)
    : n_qb_(n_qb), types_(std::move(types)) {
  matrices_.reserve(types_.size());
  for (const auto& t : types_) {
    Matrix m = pauli_matrix(t.axes[0]);
    for (int q = 1; q < n_qb_; ++q) m = kron(m, pauli_matrix(t.axes[q]));
    matrices_.push_back(std::move(m));
  }
}

MeasurementSet MeasurementSet::defaults(int n_qb) {
  if (n_qb < 1 || n_qb > 6) {
    throw ValidationError("default measurement set supports 1..6 qubits");
  }
  std::vector<MeasurementType> types;
  types.push_back({std::vector<PauliAxis>(n_qb, PauliAxis::Z), std::string(n_qb, 'Z')});
  for (int i = 1; i <= n_qb; ++i) {
    for (PauliAxis s : {PauliAxis::X, PauliAxis::Y}) {
      std::vector<PauliAxis> axes;
      axes.insert(axes.end(), n_qb - i, PauliAxis::Z);
      axes.push_back(s);
      axes.insert(axes.end(), i - 1, PauliAxis::X);
      std::string label;
      for (PauliAxis a : axes) label += axis_letter(a);
      types.push_back({std::move(axes), std::move(label)});
    }
  }
  return MeasurementSet(n_qb, std::move(types));
}

MeasurementSet MeasurementSet::from_labels(const std::vector<std::string>& labels) {
  if (labels.empty()) throw ValidationError("measurement label list is empty");
  const int n_qb = static_cast<int>(labels.front().size());
  if (n_qb < 1) throw ValidationError("empty measurement label");
  std::vector<MeasurementType> types;
  for (const auto& label : labels) {
    if (static_cast<int>(label.size()) != n_qb) {
      throw ValidationError("measurement label '" + label + "' has inconsistent length");
    }
    std::vector<PauliAxis> axes;
    for (char c : label) axes.push_back(axis_from_letter(c));
    types.push_back({std::move(axes), label});
  }
  return MeasurementSet(n_qb, std::move(types));
}

int MeasurementSet::find(const std::string& label) const {
  for (int i = 0; i < size(); ++i) {
    if (types_[i].label == label) return i;
  }
  return -1;
}

RealVector born_probabilities(const Matrix& eigenvectors, const PureState& state) {
  if (eigenvectors.rows() != state.dim() || eigenvectors.cols() != state.dim()) {
    throw ValidationError("born_probabilities: dimension mismatch");
  }
  return (eigenvectors.adjoint() * state.amplitudes()).cwiseAbs2();
}

CountVector sample_counts(const RealVector& probs, std::int64_t n_c, Rng& rng) {
  if (n_c < 1) throw ValidationError("sample_counts: n_c must be >= 1");
  if ((probs.array() < 0.0).any()) {
    throw ValidationError("sample_counts: negative probability");
  }
  if (std::abs(probs.sum() - 1.0) > 1e-8) {
    throw ValidationError("sample_counts: probabilities do not sum to 1");
  }
  const Eigen::Index d = probs.size();
  CountVector counts = CountVector::Zero(d);
  std::int64_t remaining = n_c;
  double mass_left = 1.0;
  for (Eigen::Index j = 0; j + 1 < d; ++j) {
    double p = mass_left > 0.0 ? probs(j) / mass_left : 0.0;
    p = std::clamp(p, 0.0, 1.0);
    std::int64_t c = 0;
    for (std::int64_t t = 0; t < remaining; ++t) {
      if (uniform01(rng) < p) ++c;
    }
    counts(j) = c;
    remaining -= c;
    mass_left -= probs(j);
  }
  counts(d - 1) = remaining;
  return counts;
}

CountVector expected_counts(const RealVector& probs, std::int64_t n_c) {
  if (n_c < 1) throw ValidationError("expected_counts: n_c must be >= 1");
  const Eigen::Index d = probs.size();
  CountVector counts(d);
  std::vector<std::pair<double, Eigen::Index>> remainders(d);
  std::int64_t total = 0;
  for (Eigen::Index j = 0; j < d; ++j) {
    const double exact = static_cast<double>(n_c) * probs(j);
    counts(j) = static_cast<std::int64_t>(std::floor(exact));
    remainders[j] = {exact - std::floor(exact), j};
    total += counts(j);
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (Eigen::Index i = 0; total < n_c; ++i, ++total) {
    counts(remainders[static_cast<size_t>(i) % remainders.size()].second) += 1;
  }
  return counts;
}

std::string outcome_label(Eigen::Index j, int n_qb) {
  std::string s(n_qb, '0');
  for (int b = 0; b < n_qb; ++b) {
    if ((j >> (n_qb - 1 - b)) & 1) s[b] = '1';
  }
  return s;
}

}  // namespace uqpt
