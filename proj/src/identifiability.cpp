#include "uqpt/identifiability.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

#include "uqpt/linalg.hpp"

namespace uqpt {

OrthogonalityGraph OrthogonalityGraph::from_columns(const Matrix& x, double threshold) {
  OrthogonalityGraph g;
  g.n_x = static_cast<int>(x.cols());
  g.adjacency.resize(g.n_x, g.n_x);
  for (int a = 0; a < g.n_x; ++a) {
    g.adjacency(a, a) = true;
    for (int b = a + 1; b < g.n_x; ++b) {
      const bool edge = std::abs(x.col(a).dot(x.col(b))) >= threshold;
      g.adjacency(a, b) = edge;
      g.adjacency(b, a) = edge;
    }
  }
  return g;
}

std::vector<std::vector<int>> OrthogonalityGraph::connected_components() const {
  std::vector<int> component(n_x, -1);
  std::vector<std::vector<int>> out;
  for (int start = 0; start < n_x; ++start) {
    if (component[start] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<int> stack{start};
    component[start] = id;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      out[id].push_back(v);
      for (int w = 0; w < n_x; ++w) {
        if (adjacency(v, w) && component[w] < 0) {
          component[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

std::vector<int> nonorthogonal_closure(const Matrix& x, int seed_column, double threshold) {
  const int n_x = static_cast<int>(x.cols());
  if (seed_column < 0 || seed_column >= n_x) {
    throw ValidationError("nonorthogonal_closure: seed column out of range");
  }
  std::vector<bool> in_set(n_x, false);
  in_set[seed_column] = true;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int cand = 0; cand < n_x; ++cand) {
      if (in_set[cand]) continue;
      for (int member = 0; member < n_x; ++member) {
        if (!in_set[member]) continue;
        if (std::abs(x.col(member).dot(x.col(cand))) >= threshold) {
          in_set[cand] = true;
          grew = true;
          break;
        }
      }
    }
  }
  std::vector<int> out;
  for (int l = 0; l < n_x; ++l) {
    if (in_set[l]) out.push_back(l);
  }
  return out;
}

namespace {

Matrix columns_of(const Matrix& x, const std::vector<int>& indices) {
  Matrix sub(x.rows(), static_cast<Eigen::Index>(indices.size()));
  for (size_t i = 0; i < indices.size(); ++i) sub.col(static_cast<Eigen::Index>(i)) = x.col(indices[i]);
  return sub;
}

}  // namespace

std::pair<bool, int> check_sufficient(const Matrix& x, double threshold) {
  const Eigen::Index d = x.rows();
  const int n_x = static_cast<int>(x.cols());
  if (numerical_rank(x) < d) return {false, -1};
  for (int l = 0; l < n_x; ++l) {
    bool all_nonorth = true;
    for (int l2 = 0; l2 < n_x && all_nonorth; ++l2) {
      if (l2 == l) continue;
      all_nonorth = std::abs(x.col(l).dot(x.col(l2))) >= threshold;
    }
    if (all_nonorth) return {true, l};
  }
  return {false, -1};
}

IdentifiabilityReport check_identifiable(const Matrix& x, double threshold) {
  const Eigen::Index d = x.rows();
  const int n_x = static_cast<int>(x.cols());
  IdentifiabilityReport report;
  report.identifiable = true;
  for (int l = 0; l < n_x; ++l) {
    const auto closure = nonorthogonal_closure(x, l, threshold);
    const int rank = numerical_rank(columns_of(x, closure));
    report.closure_ranks.emplace_back(l, rank);
    if (rank < d) report.identifiable = false;
  }
  const auto [sufficient, anchor] = check_sufficient(x, threshold);
  report.sufficient = sufficient;
  report.anchor = anchor;
  report.smallest_singular_value = smallest_singular_value(x);
  double best_min = 0.0;
  for (int l = 0; l < n_x; ++l) {
    double mn = std::numeric_limits<double>::infinity();
    for (int l2 = 0; l2 < n_x; ++l2) {
      if (l2 == l) continue;
      mn = std::min(mn, std::abs(x.col(l).dot(x.col(l2))));
    }
    if (n_x == 1) mn = 1.0;
    best_min = std::max(best_min, mn);
  }
  report.anchor_min_dot = best_min;
  return report;
}

bool commutant_is_trivial(const Matrix& x, double threshold) {
  const Eigen::Index d = x.rows();
  const auto graph = OrthogonalityGraph::from_columns(x, threshold);
  for (const auto& component : graph.connected_components()) {
    if (numerical_rank(columns_of(x, component)) == d) return true;
  }
  return false;
}

IndistinguishableGate build_indistinguishable_gate(const Matrix& x, const UnitaryMatrix& m,
                                                   double phase, double threshold) {
  const Eigen::Index d = x.rows();
  const int n_x = static_cast<int>(x.cols());
  if (m.dim() != d) throw ValidationError("build_indistinguishable_gate: dimension mismatch");
  const Complex rot = std::polar(1.0, phase);
  if (std::abs(rot - Complex(1.0, 0.0)) < 1e-12) {
    throw ValidationError("build_indistinguishable_gate: phase must not be a multiple of 2*pi");
  }

  const IdentifiabilityReport report = check_identifiable(x, threshold);
  if (report.identifiable) {
    throw ValidationError(
        "build_indistinguishable_gate: the columns satisfy the identifiability condition");
  }

  Matrix alt;
  RealVector col_phases = RealVector::Zero(n_x);
  bool rank_deficient = numerical_rank(x) < d;
  if (rank_deficient) {
    // some direction is never probed: re-phase the process on that direction
    Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeFullU);
    const Matrix basis = svd.matrixU();  // last column spans the unprobed direction
    Matrix d_phase = Matrix::Identity(d, d);
    d_phase(d - 1, d - 1) = rot;
    alt = m.entries() * basis * d_phase * basis.adjoint();
  } else {
    // full rank but disconnected: re-phase the process on the span of one
    // component; outputs only pick up per-column phases
    int seed = -1;
    for (const auto& [l, rank] : report.closure_ranks) {
      if (rank < d) {
        seed = l;
        break;
      }
    }
    const auto closure = nonorthogonal_closure(x, seed, threshold);
    const Matrix x_s = columns_of(x, closure);
    Eigen::JacobiSVD<Matrix> svd(x_s, Eigen::ComputeFullU);
    const int r_s = numerical_rank(x_s);
    Matrix d_phase = Matrix::Identity(d, d);
    for (int i = 0; i < r_s; ++i) d_phase(i, i) = rot;
    alt = m.entries() * svd.matrixU() * d_phase * svd.matrixU().adjoint();
    for (int l : closure) col_phases(l) = -phase;
  }

  IndistinguishableGate out{UnitaryMatrix(std::move(alt)), std::move(col_phases),
                            rank_deficient};

  // the construction is only returned once its defining properties hold
  const double eps = error_metric(out.gate, m);
  if (!(eps > 0.0)) {
    throw ValidationError("build_indistinguishable_gate: construction collapsed to m");
  }
  for (int l = 0; l < n_x; ++l) {
    const Vector lhs = m.entries() * x.col(l);
    const Vector rhs = out.gate.entries() * x.col(l) * std::polar(1.0, out.column_phases(l));
    if ((lhs - rhs).norm() > 1e-8) {
      throw ValidationError("build_indistinguishable_gate: outputs differ on column " +
                            std::to_string(l));
    }
  }
  return out;
}

}  // namespace uqpt
