#include "uqpt/setup.hpp"

#include <cmath>

#include "uqpt/linalg.hpp"

namespace uqpt {

std::vector<PureState> hadamard_states(int n_qb) {
  if (n_qb < 1 || n_qb > 6) throw ValidationError("hadamard_states: 1..6 qubits supported");
  const double s = 1.0 / std::sqrt(2.0);
  Matrix factor(2, 2);
  factor << Complex(1.0), Complex(s), Complex(0.0), Complex(s);
  Matrix all = factor;
  for (int q = 1; q < n_qb; ++q) all = tensor_product(all, factor);
  std::vector<PureState> out;
  for (Eigen::Index k = 0; k < all.cols(); ++k) {
    out.push_back(PureState::normalized(all.col(k)));
  }
  return out;
}

PureState imperfect_hadamard_state(int n_qb, int k, double angle_std, Rng& rng) {
  if (n_qb < 1 || n_qb > 6) throw ValidationError("imperfect_hadamard_state: 1..6 qubits");
  const Eigen::Index d = Eigen::Index(1) << n_qb;
  if (k < 1 || k > d) throw ValidationError("imperfect_hadamard_state: k out of range");
  const double s = 1.0 / std::sqrt(2.0);
  Matrix qubit(2, 1);
  Matrix state(1, 1);
  state(0, 0) = 1.0;
  for (int q = 0; q < n_qb; ++q) {
    const bool apply = ((k - 1) >> (n_qb - 1 - q)) & 1;  // bit q of k-1, first qubit = MSB
    if (!apply) {
      qubit(0, 0) = 1.0;
      qubit(1, 0) = 0.0;
    } else {
      const double theta = angle_std * gaussian(rng);
      const double phi = angle_std * gaussian(rng);
      const Complex e = std::polar(1.0, phi);
      // extra rotation in front of the ideal gate; H|0> = (1,1)/sqrt2
      qubit(0, 0) = s * (std::cos(theta) - std::sin(theta) * e);
      qubit(1, 0) = s * (std::sin(theta) + std::cos(theta) * e);
    }
    state = tensor_product(state, qubit);
  }
  return PureState::normalized(state.col(0));
}

PureState add_systematic_error(const PureState& state, double std, Rng& rng) {
  if (std < 0.0) throw ValidationError("add_systematic_error: std must be >= 0");
  if (std == 0.0) return state;
  const Eigen::Index d = state.dim();
  Vector v(d);
  if (std::isinf(std)) {
    for (Eigen::Index i = 0; i < d; ++i) v(i) = complex_normal(rng);
  } else {
    v = state.amplitudes();
    for (Eigen::Index i = 0; i < d; ++i) v(i) += std * complex_normal(rng);
  }
  return PureState::normalized(v);
}

std::vector<PureState> anchored_pair_states(int n_qb) {
  const Eigen::Index d = Eigen::Index(1) << n_qb;
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<PureState> out;
  Vector first = Vector::Zero(d);
  first(0) = 1.0;
  out.push_back(PureState(first));
  for (Eigen::Index k = 1; k < d; ++k) {
    Vector v = Vector::Zero(d);
    v(0) = s;
    v(k) = s;
    out.push_back(PureState(v));
  }
  return out;
}

UnitaryMatrix cnot_gate() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 3) = 1.0;
  m(3, 2) = 1.0;
  return UnitaryMatrix(std::move(m));
}

UnitaryMatrix chain_demo_gate() {
  const double r = std::sqrt(2.0);
  Matrix m(4, 4);
  m << 1.0, -r, 0.0, 1.0,
       1.0, r, 0.0, 1.0,
       1.0, 0.0, -r, -1.0,
       1.0, 0.0, r, -1.0;
  return UnitaryMatrix(Matrix(0.5 * m));
}

UnitaryMatrix partial_mixer_gate() {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix m = Matrix::Identity(4, 4);
  m(2, 2) = s;
  m(2, 3) = -s;
  m(3, 2) = s;
  m(3, 3) = s;
  return UnitaryMatrix(std::move(m));
}

std::vector<PureState> initial_states(const SetupSpec& spec, Rng& rng) {
  std::vector<PureState> states;
  switch (spec.family) {
    case StateFamily::HadamardFamily: {
      const Eigen::Index d = Eigen::Index(1) << spec.n_qb;
      if (spec.n_i != d) {
        throw ValidationError("initial_states: the Hadamard family needs n_i = 2^n_qb");
      }
      if (spec.hadamard_angle_std > 0.0) {
        for (int k = 1; k <= spec.n_i; ++k) {
          states.push_back(
              imperfect_hadamard_state(spec.n_qb, k, spec.hadamard_angle_std, rng));
        }
      } else {
        states = hadamard_states(spec.n_qb);
      }
      break;
    }
    case StateFamily::SingleRandom: {
      if (spec.n_i != 1) throw ValidationError("initial_states: SingleRandom needs n_i = 1");
      const Eigen::Index d = Eigen::Index(1) << spec.n_qb;
      Vector v(d);
      for (Eigen::Index i = 0; i < d; ++i) v(i) = complex_normal(rng);
      states.push_back(PureState::normalized(v));
      break;
    }
    case StateFamily::ExplicitList: {
      if (static_cast<int>(spec.explicit_states.size()) != spec.n_i) {
        throw ValidationError("initial_states: explicit list must have n_i states");
      }
      states = spec.explicit_states;
      break;
    }
  }
  if (spec.systematic_error_std != 0.0) {
    for (auto& st : states) st = add_systematic_error(st, spec.systematic_error_std, rng);
  }
  return states;
}

CountsFile simulate_setup(const SetupSpec& spec, const UnitaryMatrix& m,
                          const MeasurementSet& meas, Rng& rng) {
  if (spec.n_qb != meas.n_qb()) throw ValidationError("simulate_setup: qubit count mismatch");
  if (m.dim() != meas.dim()) throw ValidationError("simulate_setup: gate dimension mismatch");
  if (spec.n_s < 1) throw ValidationError("simulate_setup: n_s must be >= 1");
  if (spec.n_c < 1) throw ValidationError("simulate_setup: n_c must be >= 1");

  const std::vector<PureState> inputs = initial_states(spec, rng);

  CountsFile file;
  file.n_qb = spec.n_qb;
  file.n_c = spec.n_c;
  for (const auto& t : meas.types()) file.measurements.push_back(t.label);

  // evolved states, delay-major like the experiment tables
  std::vector<std::pair<std::string, Vector>> evolved;
  std::vector<Vector> current;
  for (const auto& st : inputs) current.push_back(st.amplitudes());
  for (int k = 1; k <= spec.n_s; ++k) {
    for (int j = 1; j <= spec.n_i; ++j) {
      current[static_cast<size_t>(j - 1)] = m.entries() * current[static_cast<size_t>(j - 1)];
      evolved.emplace_back(state_label(j, k), current[static_cast<size_t>(j - 1)]);
    }
  }

  for (const auto& [label, v] : evolved) {
    file.states.push_back(label);
    const PureState state = PureState::normalized(v);
    for (int t = 0; t < meas.size(); ++t) {
      const RealVector probs = born_probabilities(meas.eigenvectors(t), state);
      CountsRecord rec;
      rec.state = label;
      rec.measurement = meas.type(t).label;
      rec.counts = spec.exact_counts ? expected_counts(probs, spec.n_c)
                                     : sample_counts(probs, spec.n_c, rng);
      file.records.push_back(std::move(rec));
    }
  }
  return file;
}

}  // namespace uqpt
