#include "uqpt/qpt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "uqpt/linalg.hpp"

namespace uqpt {

QptProblem assemble_problem(const std::map<std::pair<int, int>, PureState>& estimates, int n_i,
                            int n_s) {
  if (n_i < 1 || n_s < 2) {
    throw ValidationError("assemble_problem: need n_i >= 1 and n_s >= 2");
  }
  if (estimates.empty()) throw ValidationError("assemble_problem: no estimates");
  const Eigen::Index d = estimates.begin()->second.dim();
  const int n_x = n_i * (n_s - 1);
  QptProblem problem;
  problem.n_i = n_i;
  problem.n_s = n_s;
  problem.x_hat.resize(d, n_x);
  problem.y_hat.resize(d, n_x);
  int col = 0;
  for (int j = 1; j <= n_i; ++j) {
    for (int k = 1; k <= n_s - 1; ++k, ++col) {
      const auto x_it = estimates.find({j, k});
      const auto y_it = estimates.find({j, k + 1});
      if (x_it == estimates.end() || y_it == estimates.end()) {
        throw ValidationError("assemble_problem: missing estimate for state j=" +
                              std::to_string(j) + ", delay k=" +
                              std::to_string(x_it == estimates.end() ? k : k + 1));
      }
      problem.x_hat.col(col) = x_it->second.amplitudes().normalized();
      problem.y_hat.col(col) = y_it->second.amplitudes().normalized();
      problem.column_map.emplace_back(j, k);
    }
  }
  return problem;
}

double pairwise_phase(const Matrix& x_hat, const Matrix& y_hat, int l1, int l2) {
  const Complex num = x_hat.col(l1).dot(x_hat.col(l2));
  const Complex den = y_hat.col(l1).dot(y_hat.col(l2));
  if (den == Complex(0.0, 0.0)) {
    throw ValidationError("pairwise_phase: columns " + std::to_string(l1) + " and " +
                          std::to_string(l2) + " are orthogonal after the process");
  }
  return std::arg(num / den);
}

int choose_anchor(const Matrix& y_hat) {
  const int n_x = static_cast<int>(y_hat.cols());
  int best = 0;
  double best_min = -1.0;
  for (int l = 0; l < n_x; ++l) {
    double mn = std::numeric_limits<double>::infinity();
    for (int l2 = 0; l2 < n_x; ++l2) {
      if (l2 == l) continue;
      mn = std::min(mn, std::abs(y_hat.col(l).dot(y_hat.col(l2))));
    }
    if (mn > best_min) {  // strict: ties keep the smallest index
      best_min = mn;
      best = l;
    }
  }
  return best;
}

PhaseAssignment recover_phases(const QptProblem& problem, double orth_cutoff) {
  const Matrix& x = problem.x_hat;
  const Matrix& y = problem.y_hat;
  const int n_x = static_cast<int>(y.cols());
  const Eigen::Index d = y.rows();
  if (n_x < 1) throw ValidationError("recover_phases: empty problem");

  PhaseAssignment out;
  out.xi = RealVector::Zero(n_x);
  out.anchor = choose_anchor(y);
  const int l0 = out.anchor;

  Matrix dots(n_x, n_x);
  for (int a = 0; a < n_x; ++a) {
    for (int b = 0; b < n_x; ++b) dots(a, b) = y.col(a).dot(y.col(b));
  }

  // |dot| >= cutoff counts as non-orthogonal; an exactly zero inner product
  // carries no phase information and is never usable
  const auto usable = [](double mag, double cutoff) { return mag >= cutoff && mag > 0.0; };

  double anchor_min = std::numeric_limits<double>::infinity();
  for (int l = 0; l < n_x; ++l) {
    if (l != l0) anchor_min = std::min(anchor_min, std::abs(dots(l0, l)));
  }
  if (usable(anchor_min, orth_cutoff) || n_x == 1) {
    for (int l = 0; l < n_x; ++l) {
      if (l != l0) out.xi(l) = pairwise_phase(x, y, l0, l);
    }
    return out;
  }

  double cutoff = orth_cutoff;
  bool relaxed = false;
  std::vector<bool> resolved(n_x, false);
  resolved[l0] = true;
  for (int l = 0; l < n_x; ++l) {
    if (l != l0 && usable(std::abs(dots(l0, l)), cutoff)) {
      out.xi(l) = pairwise_phase(x, y, l0, l);
      resolved[l] = true;
    }
  }

  // pass counters mirror the loop bounds that guarantee termination
  int passes_without_relax = 0;
  int relax_count = 0;
  while (true) {
    std::vector<int> frontier;
    for (int l = 0; l < n_x; ++l) {
      if (!resolved[l]) frontier.push_back(l);
    }
    if (frontier.empty()) return out;  // everything chained

    const size_t frontier_before = frontier.size();
    for (int lf : frontier) {
      int ls = -1;
      double best = -1.0;
      for (int l = 0; l < n_x; ++l) {
        if (!resolved[l]) continue;
        const double mag = std::abs(dots(l, lf));
        if (!usable(mag, cutoff)) continue;  // orthogonal at the current cutoff
        if (mag > best) {                    // ties keep the smallest resolved index
          best = mag;
          ls = l;
        }
      }
      if (ls < 0) continue;  // nothing usable yet, try the next column
      out.xi(lf) = out.xi(ls) + pairwise_phase(x, y, ls, lf);
      resolved[lf] = true;
    }

    size_t frontier_after = 0;
    for (int l = 0; l < n_x; ++l) {
      if (!resolved[l]) ++frontier_after;
    }
    if (frontier_after == 0) return out;

    if (frontier_after < frontier_before) {
      ++passes_without_relax;
      if (passes_without_relax > n_x) {
        throw ValidationError("recover_phases: pass bound exceeded");  // unreachable
      }
      continue;
    }

    // stuck: maybe the resolved columns already span the whole space
    Matrix span(d, n_x - static_cast<Eigen::Index>(frontier_after));
    Eigen::Index c = 0;
    for (int l = 0; l < n_x; ++l) {
      if (resolved[l]) span.col(c++) = y.col(l);
    }
    if (numerical_rank(span) == d) {
      for (int l = 0; l < n_x; ++l) {
        if (!resolved[l]) out.dropped.push_back(l);
      }
      return out;
    }

    if (!relaxed) {
      relaxed = true;
      ++relax_count;
      if (relax_count > 1) {
        throw ValidationError("recover_phases: relax bound exceeded");  // unreachable
      }
      cutoff = 0.0;
      continue;
    }

    std::vector<int> unresolved;
    for (int l = 0; l < n_x; ++l) {
      if (!resolved[l]) unresolved.push_back(l);
    }
    throw IdentifiabilityError(
        "identifiability violated: " + std::to_string(unresolved.size()) +
            " column(s) stay orthogonal to everything already resolved",
        std::move(unresolved));
  }
}

QptResult solve_unitary_tls(const Matrix& x_hat, const Matrix& y_tilde) {
  if (x_hat.rows() != y_tilde.rows() || x_hat.cols() != y_tilde.cols()) {
    throw ValidationError("solve_unitary_tls: shape mismatch");
  }
  const Eigen::Index d = x_hat.rows();
  const Matrix b = y_tilde * x_hat.adjoint();
  NearestUnitaryResult nu = nearest_unitary(b);
  const bool rank_deficient =
      numerical_rank(x_hat) < d || numerical_rank(y_tilde) < d || nu.degenerate;
  // with M unitary the joint perturbation norm reduces to half the residual
  const double residual = 0.5 * (y_tilde - nu.unitary.entries() * x_hat).squaredNorm();
  return QptResult{std::move(nu.unitary), PhaseAssignment{}, residual, rank_deficient};
}

namespace {

Matrix apply_phases(const Matrix& y_hat, const RealVector& xi) {
  Matrix y_tilde = y_hat;
  for (Eigen::Index l = 0; l < y_hat.cols(); ++l) {
    y_tilde.col(l) *= std::polar(1.0, xi(l));
  }
  return y_tilde;
}

QptResult finish_pipeline(const QptProblem& problem, double orth_cutoff) {
  PhaseAssignment phases = recover_phases(problem, orth_cutoff);
  Matrix y_tilde = apply_phases(problem.y_hat, phases.xi);
  Matrix x = problem.x_hat;
  if (!phases.dropped.empty()) {
    const std::set<int> drop(phases.dropped.begin(), phases.dropped.end());
    const Eigen::Index kept = x.cols() - static_cast<Eigen::Index>(drop.size());
    Matrix xr(x.rows(), kept), yr(x.rows(), kept);
    Eigen::Index c = 0;
    for (Eigen::Index l = 0; l < x.cols(); ++l) {
      if (drop.count(static_cast<int>(l))) continue;
      xr.col(c) = x.col(l);
      yr.col(c) = y_tilde.col(l);
      ++c;
    }
    x = std::move(xr);
    y_tilde = std::move(yr);
  }
  QptResult result = solve_unitary_tls(x, y_tilde);
  result.phases = std::move(phases);
  return result;
}

}  // namespace

QptResult qpt_pipeline(const CountsFile& counts, const MeasurementSet& meas, int n_i, int n_s,
                       const QstOptions& qst_options, double orth_cutoff) {
  const auto estimates = qst_batch(counts, meas, qst_options);
  std::map<std::pair<int, int>, PureState> by_index;
  for (const auto& [label, est] : estimates) {
    int j = 0, k = 0;
    if (!parse_state_label(label, j, k)) {
      throw ValidationError("qpt_pipeline: unrecognized state label '" + label + "'");
    }
    by_index.emplace(std::make_pair(j, k), est.state);
  }
  if (static_cast<int>(by_index.size()) != n_i * n_s) {
    throw ValidationError("qpt_pipeline: expected " + std::to_string(n_i * n_s) +
                          " measured states, found " + std::to_string(by_index.size()));
  }
  const QptProblem problem = assemble_problem(by_index, n_i, n_s);
  return finish_pipeline(problem, orth_cutoff);
}

QptResult sqpt_pipeline(const std::vector<PureState>& known_inputs, const CountsFile& counts,
                        const MeasurementSet& meas, const QstOptions& qst_options,
                        double orth_cutoff) {
  if (known_inputs.empty()) throw ValidationError("sqpt_pipeline: no input states");
  const int n = static_cast<int>(known_inputs.size());
  const auto estimates = qst_batch(counts, meas, qst_options);

  QptProblem problem;
  problem.n_i = n;
  problem.n_s = 2;
  const Eigen::Index d = known_inputs.front().dim();
  problem.x_hat.resize(d, n);
  problem.y_hat.resize(d, n);
  for (int j = 1; j <= n; ++j) {
    problem.x_hat.col(j - 1) = known_inputs[static_cast<size_t>(j - 1)].amplitudes().normalized();
    const std::string label = state_label(j, 1);
    const auto it = std::find_if(estimates.begin(), estimates.end(),
                                 [&](const auto& e) { return e.first == label; });
    if (it == estimates.end()) {
      throw ValidationError("sqpt_pipeline: missing output records for " + label);
    }
    problem.y_hat.col(j - 1) = it->second.state.amplitudes();
    problem.column_map.emplace_back(j, 1);
  }
  return finish_pipeline(problem, orth_cutoff);
}

}  // namespace uqpt
