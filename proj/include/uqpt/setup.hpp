#pragma once

#include <cstdint>
#include <vector>

#include "uqpt/counts.hpp"
#include "uqpt/measurement.hpp"
#include "uqpt/rng.hpp"
#include "uqpt/types.hpp"

namespace uqpt {

enum class StateFamily {
  HadamardFamily,  // the d easy-to-prepare states below
  SingleRandom,    // one Haar-random state (n_i must be 1)
  ExplicitList,    // states supplied in SetupSpec::explicit_states
};

struct SetupSpec {
  int n_qb = 2;
  int n_i = 4;
  int n_s = 2;
  std::int64_t n_c = 1000;
  StateFamily family = StateFamily::HadamardFamily;
  double systematic_error_std = 0.0;  // may be INFINITY: fully random states
  double hadamard_angle_std = 0.0;    // preparation-gate angle noise, radians
  std::uint64_t seed = 1;
  bool exact_counts = false;  // emit expected counts instead of sampling
  std::vector<PureState> explicit_states;
};

/// The d states prepared by one Hadamard per set bit of the state index:
/// columns of the n_qb-fold tensor power of [[1, 1/sqrt2], [0, 1/sqrt2]].
/// They form a basis and none of them are mutually orthogonal.
std::vector<PureState> hadamard_states(int n_qb);

/// State k in 1..d prepared with noisy Hadamard gates: each applied gate is
/// preceded by an extra rotation with angles drawn i.i.d. N(0, angle_std^2).
/// k = 1 applies no gate and consumes no randomness.
PureState imperfect_hadamard_state(int n_qb, int k, double angle_std, Rng& rng);

/// One shared preparation error per logical state: adds i.i.d. complex
/// Gaussians of the given std to every amplitude, then renormalizes.
/// std = 0 returns the input untouched; std = infinity returns a
/// Haar-uniform state independent of the input.
PureState add_systematic_error(const PureState& state, double std, Rng& rng);

/// d trusted inputs used by standard-setup comparisons: the first basis
/// vector plus its pairwise superpositions with every other basis vector.
std::vector<PureState> anchored_pair_states(int n_qb);

UnitaryMatrix cnot_gate();

/// 2-qubit demonstration target whose repeated application to e1 yields a
/// well-conditioned, non-orthogonal column chain (single-input setups).
UnitaryMatrix chain_demo_gate();

/// 2-qubit gate acting as the identity on one half of the space; a single
/// input state cannot identify it, two can.
UnitaryMatrix partial_mixer_gate();

/// The initial states implied by the spec (family, preparation noise,
/// systematic error), in index order. Draws from `rng` in a fixed order.
std::vector<PureState> initial_states(const SetupSpec& spec, Rng& rng);

/// Simulate the full experiment: every initial state is measured after
/// 1..n_s applications of `m` with every measurement type, n_c copies each.
/// Record labels follow state_label(j, k); states are listed delay-major
/// (all k=1 states first), matching the bundled fixture's layout.
CountsFile simulate_setup(const SetupSpec& spec, const UnitaryMatrix& m,
                          const MeasurementSet& meas, Rng& rng);

}  // namespace uqpt
