#include "uqpt/qst.hpp"

#include <algorithm>
#include <cmath>

#include "uqpt/rng.hpp"

namespace uqpt {

namespace {

struct FitData {
  std::vector<const Matrix*> eigenvectors;  // one per used measurement type
  std::vector<RealVector> freq;             // empirical frequencies
  std::vector<RealVector> weight;           // inverse variance with floor
  Eigen::Index dim = 0;
};

// f(v) = sum_m sum_j w (p - q)^2 with p = |E_m^* v|^2.
// The gradient with respect to the 2d real coordinates of v is packed as a
// complex vector G with grad_re = Re(G), grad_im = Im(G):
//   G = 4 sum_m E_m (w .* (p - q) .* c),   c = E_m^* v.
double evaluate(const FitData& fit, const Vector& v, Vector* grad) {
  double f = 0.0;
  if (grad) grad->setZero(fit.dim);
  for (size_t m = 0; m < fit.eigenvectors.size(); ++m) {
    const Matrix& e = *fit.eigenvectors[m];
    const Vector c = e.adjoint() * v;
    const RealVector p = c.cwiseAbs2();
    const RealVector r = p - fit.freq[m];
    f += (fit.weight[m].array() * r.array().square()).sum();
    if (grad) {
      const Vector scaled =
          (fit.weight[m].array() * r.array()).matrix().cast<Complex>().cwiseProduct(c);
      grad->noalias() += 4.0 * (e * scaled);
    }
  }
  return f;
}

Vector tangent_gradient(const Vector& v, const Vector& grad) {
  // projection onto the tangent space of the unit sphere in R^{2d}
  const double radial = v.dot(grad).real();
  return grad - radial * v;
}

struct StartResult {
  Vector v;
  double objective = 0.0;
  double gradient_norm = 0.0;
  bool converged = false;
};

StartResult minimize_from(const FitData& fit, Vector v0, const QstOptions& options,
                          std::vector<double>* trace) {
  StartResult res;
  Vector v = v0.normalized();
  Vector grad(fit.dim);
  double f = evaluate(fit, v, &grad);
  Vector gt = tangent_gradient(v, grad);
  if (trace) trace->push_back(f);

  double step = 1.0 / std::max(1.0, gt.norm());
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const double gnorm = gt.norm();
    if (gnorm < options.gradient_tolerance) {
      res.converged = true;
      break;
    }
    // Armijo backtracking keeps the objective monotone
    double t = step;
    bool accepted = false;
    Vector v_next, grad_next;
    double f_next = f;
    for (int bt = 0; bt < 60; ++bt) {
      v_next = (v - t * gt).normalized();
      f_next = evaluate(fit, v_next, nullptr);
      if (f_next <= f - 1e-4 * t * gnorm * gnorm) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;  // stalled at numerical resolution

    grad_next.resize(fit.dim);
    f_next = evaluate(fit, v_next, &grad_next);
    Vector gt_next = tangent_gradient(v_next, grad_next);

    // Barzilai-Borwein step for the next iteration, with a positive guard
    const Vector s = v_next - v;
    const Vector y = gt_next - gt;
    const double sy = s.dot(y).real();
    const double ss = s.squaredNorm();
    step = (sy > 1e-300 && std::isfinite(sy)) ? ss / sy : t * 2.0;
    step = std::clamp(step, 1e-12, 1e6);

    v = std::move(v_next);
    f = f_next;
    gt = std::move(gt_next);
    if (trace) trace->push_back(f);
  }
  res.v = std::move(v);
  res.objective = f;
  res.gradient_norm = gt.norm();
  res.converged = res.converged || res.gradient_norm < options.gradient_tolerance;
  return res;
}

Vector canonical_phase(Vector v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-6) {
      v *= std::polar(1.0, -std::arg(v(i)));
      v(i) = Complex(std::abs(v(i)), 0.0);
      break;
    }
  }
  return v;
}

// Frequency-consistent start: moduli from the all-Z record, relative phase
// inside each (2z, 2z+1) amplitude pair from the Z..ZX / Z..ZY records.
// Pair-to-pair phases start at zero; the optimizer and the random restarts
// take it from there.
bool heuristic_start(const FitData& fit, const MeasurementSet& meas,
                     const std::vector<int>& type_of_fit_entry, Vector& out) {
  const int n_qb = meas.n_qb();
  const std::string z_label(n_qb, 'Z');
  std::string zx_label = z_label, zy_label = z_label;
  zx_label.back() = 'X';
  zy_label.back() = 'Y';

  int zi = -1, xi = -1, yi = -1;
  for (size_t m = 0; m < type_of_fit_entry.size(); ++m) {
    const std::string& label = meas.type(type_of_fit_entry[m]).label;
    if (label == z_label) zi = static_cast<int>(m);
    if (label == zx_label) xi = static_cast<int>(m);
    if (label == zy_label) yi = static_cast<int>(m);
  }
  if (zi < 0 || xi < 0 || yi < 0) return false;

  const RealVector& qz = fit.freq[zi];
  const RealVector& qx = fit.freq[xi];
  const RealVector& qy = fit.freq[yi];
  Vector v(fit.dim);
  for (Eigen::Index z = 0; z * 2 < fit.dim; ++z) {
    const Eigen::Index a = 2 * z, b = 2 * z + 1;
    const double ra = std::sqrt(std::max(0.0, qz(a)));
    const double rb = std::sqrt(std::max(0.0, qz(b)));
    const Complex cross(0.5 * (qx(a) - qx(b)), 0.5 * (qy(a) - qy(b)));
    const double phase = (std::abs(cross) > 1e-12) ? std::arg(cross) : 0.0;
    v(a) = Complex(ra, 0.0);
    v(b) = std::polar(rb, phase);
  }
  if (v.norm() < 1e-9) return false;
  out = v.normalized();
  return true;
}

}  // namespace

QstEstimate qst_estimate(const std::vector<CountsRecord>& records, const MeasurementSet& meas,
                         const QstOptions& options) {
  FitData fit;
  fit.dim = meas.dim();
  std::vector<int> type_of_fit_entry;
  std::int64_t n_c = -1;
  for (int t = 0; t < meas.size(); ++t) {
    const std::string& label = meas.type(t).label;
    const CountsRecord* found = nullptr;
    for (const auto& r : records) {
      if (r.measurement == label) {
        found = &r;
        break;
      }
    }
    if (!found) throw ValidationError("missing counts for measurement type " + label);
    if (found->counts.size() != fit.dim) {
      throw ValidationError("counts for " + label + " have wrong length");
    }
    const std::int64_t sum = found->counts.sum();
    if (sum < 1) throw ValidationError("counts for " + label + " are empty");
    if (n_c < 0) n_c = sum;
    if (sum != n_c) {
      throw ValidationError("inconsistent n_c across records: " + std::to_string(sum) +
                            " vs " + std::to_string(n_c));
    }
    const RealVector q = found->counts.cast<double>() / static_cast<double>(n_c);
    const double floor = 1.0 / (4.0 * static_cast<double>(n_c) * static_cast<double>(n_c));
    RealVector w(fit.dim);
    for (Eigen::Index j = 0; j < fit.dim; ++j) {
      const double var = q(j) * (1.0 - q(j)) / static_cast<double>(n_c);
      w(j) = 1.0 / std::max(var, floor);
    }
    fit.eigenvectors.push_back(&meas.eigenvectors(t));
    fit.freq.push_back(q);
    fit.weight.push_back(std::move(w));
    type_of_fit_entry.push_back(t);
  }

  const int restarts = std::max(1, options.restarts);
  StartResult best;
  bool have_best = false;
  for (int start = 0; start < restarts; ++start) {
    Vector v0(fit.dim);
    bool have_start = false;
    if (start == 0) have_start = heuristic_start(fit, meas, type_of_fit_entry, v0);
    if (!have_start) {
      Rng rng = make_rng(derive_seed(options.seed, static_cast<std::uint64_t>(start)));
      for (Eigen::Index i = 0; i < fit.dim; ++i) v0(i) = complex_normal(rng);
      if (v0.norm() < 1e-12) v0(0) = 1.0;
    }
    std::vector<double>* trace = nullptr;
    if (options.objective_traces) {
      options.objective_traces->emplace_back();
      trace = &options.objective_traces->back();
    }
    StartResult res = minimize_from(fit, std::move(v0), options, trace);
    if (!have_best || res.objective < best.objective) {
      best = std::move(res);
      have_best = true;
    }
  }

  return QstEstimate{PureState::normalized(canonical_phase(best.v)), best.objective,
                     best.converged};
}

std::vector<std::pair<std::string, QstEstimate>> qst_batch(const CountsFile& counts,
                                                           const MeasurementSet& meas,
                                                           const QstOptions& options) {
  std::vector<std::pair<std::string, QstEstimate>> out;
  for (size_t s = 0; s < counts.states.size(); ++s) {
    const std::string& label = counts.states[s];
    std::vector<CountsRecord> records;
    for (const auto& r : counts.records) {
      if (r.state == label) records.push_back(r);
    }
    QstOptions per_state = options;
    per_state.seed = derive_seed(options.seed, 0x515ULL, s);
    try {
      out.emplace_back(label, qst_estimate(records, meas, per_state));
    } catch (const ValidationError& e) {
      throw ValidationError("state " + label + ": " + e.what());
    }
  }
  return out;
}

}  // namespace uqpt
