#include "mgt/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mgt {

namespace {

// Root separation below this fraction of the root scale routes the
// coefficient solve through the confluent branch; the Vandermonde system
// conditioning degrades as 1/separation.
constexpr double kConfluentRel = 1e-6;

double max_root_magnitude(const RootTriple& t) {
  return std::max({std::abs(t.lambda1), std::abs(t.lambda2), std::abs(t.lambda3)});
}

ModalCoefficients solve_distinct(const RootTriple& t, const ModalIC& ic) {
  CMat3 v;
  for (int j = 0; j < 3; ++j) {
    const Complex l = t.root(j);
    v(0, j) = 1.0;
    v(1, j) = l;
    v(2, j) = l * l;
  }
  const CVec3 d = solve(v, CVec3{ic.z0, ic.z1, ic.z2});
  ModalCoefficients out{t.kind, {t.lambda1, t.lambda2, t.lambda3}, {d[0], d[1], d[2]}, 1.0};
  out.condition = v.frobenius() * inverse(v).frobenius();
  return out;
}

ModalCoefficients solve_double(Complex ld, Complex ls, RootKind kind, const ModalIC& ic) {
  // z = (A + B t) e^(ld t) + C e^(ls t)
  const Complex gap = ld - ls;
  const Complex c = (ic.z2 - 2.0 * ld * ic.z1 + ld * ld * ic.z0) / (gap * gap);
  const Complex a = ic.z0 - c;
  const Complex b = ic.z1 - ld * ic.z0 + gap * c;
  const double cond = std::max(1.0, std::abs(ld) + std::abs(ls)) / std::norm(gap);
  return {kind, {ld, ld, ls}, {a, b, c}, cond};
}

ModalCoefficients solve_triple(Complex l, const ModalIC& ic) {
  // z = (c0 + c1 t + c2 t^2) e^(l t)
  const Complex c0 = ic.z0;
  const Complex c1 = ic.z1 - l * ic.z0;
  const Complex c2 = 0.5 * (ic.z2 - 2.0 * l * ic.z1 + l * l * ic.z0);
  return {RootKind::TripleReal, {l, l, l}, {c0, c1, c2}, 1.0};
}

}  // namespace

ModalCoefficients modal_coefficients(const RootTriple& t, const ModalIC& ic) {
  switch (t.kind) {
    case RootKind::TripleReal:
      return solve_triple(t.lambda1, ic);
    case RootKind::DoubleReal: {
      const double r1 = t.lambda1.real(), r2 = t.lambda2.real(), r3 = t.lambda3.real();
      if (std::abs(r2 - r1) <= std::abs(r3 - r2)) {
        return solve_double(0.5 * (r1 + r2), r3, RootKind::DoubleReal, ic);
      }
      return solve_double(0.5 * (r2 + r3), r1, RootKind::DoubleReal, ic);
    }
    default: {
      // Near-defective triples are solved through the confluent branch, the
      // stable limit of the Vandermonde system.
      const double scale = std::max(1.0, max_root_magnitude(t));
      const double s12 = std::abs(t.lambda1 - t.lambda2);
      const double s13 = std::abs(t.lambda1 - t.lambda3);
      const double s23 = std::abs(t.lambda2 - t.lambda3);
      const double sep = std::min({s12, s13, s23});
      if (sep < kConfluentRel * scale) {
        if (s12 <= s13 && s12 <= s23) {
          return solve_double(0.5 * (t.lambda1 + t.lambda2), t.lambda3, t.kind, ic);
        }
        if (s13 <= s23) {
          return solve_double(0.5 * (t.lambda1 + t.lambda3), t.lambda2, t.kind, ic);
        }
        return solve_double(0.5 * (t.lambda2 + t.lambda3), t.lambda1, t.kind, ic);
      }
      return solve_distinct(t, ic);
    }
  }
}

ModalState modal_state(const ModalCoefficients& c, double t) {
  ModalState s{0.0, 0.0, 0.0};
  const bool confluent_double =
      c.lambda[0] == c.lambda[1] && c.lambda[0] != c.lambda[2];
  if (c.kind == RootKind::TripleReal) {
    const Complex l = c.lambda[0];
    const Complex e = std::exp(l * t);
    const Complex poly = c.w[0] + (c.w[1] + c.w[2] * t) * t;
    const Complex dpoly = c.w[1] + 2.0 * c.w[2] * t;
    s.z = poly * e;
    s.dz = (dpoly + l * poly) * e;
    s.d2z = (2.0 * c.w[2] + 2.0 * l * dpoly + l * l * poly) * e;
  } else if (c.kind == RootKind::DoubleReal || confluent_double) {
    const Complex ld = c.lambda[0];
    const Complex ls = c.lambda[2];
    const Complex ed = std::exp(ld * t);
    const Complex es = std::exp(ls * t);
    const Complex poly = c.w[0] + c.w[1] * t;
    s.z = poly * ed + c.w[2] * es;
    s.dz = (c.w[1] + ld * poly) * ed + ls * c.w[2] * es;
    s.d2z = (2.0 * ld * c.w[1] + ld * ld * poly) * ed + ls * ls * c.w[2] * es;
  } else {
    for (int j = 0; j < 3; ++j) {
      const Complex l = c.lambda[j];
      const Complex e = c.w[j] * std::exp(l * t);
      s.z += e;
      s.dz += l * e;
      s.d2z += l * l * e;
    }
  }
  return s;
}

Trajectory rk4_oracle(const ModelParams& params, double mu, const ModalIC& ic, double t_end,
                      double dt) {
  if (!(mu > 0.0)) throw InvalidArgument("mu must be positive");
  if (!(t_end > 0.0) || !(dt > 0.0)) throw InvalidArgument("t_end and dt must be positive");
  const RootTriple t = solve_characteristic(params, mu);
  const double lmax = max_root_magnitude(t);
  if (!(dt * lmax < 0.1)) {
    throw InvalidArgument("step too large: dt * max|lambda| = " + std::to_string(dt * lmax) +
                          " must stay below 0.1");
  }

  const int n = std::max(1, static_cast<int>(std::ceil(t_end / dt - 1e-12)));
  const double h = t_end / n;
  const double a = params.alpha;
  const double bmu = params.beta * mu;
  auto deriv = [&](const CVec3& u) -> CVec3 {
    return {u[1], u[2], -(mu * u[0] + bmu * u[1] + u[2]) / a};
  };

  Trajectory traj;
  traj.times.reserve(n + 1);
  traj.states.reserve(n + 1);
  CVec3 u{ic.z0, ic.z1, ic.z2};
  traj.times.push_back(0.0);
  traj.states.push_back({u[0], u[1], u[2]});
  for (int i = 1; i <= n; ++i) {
    const CVec3 k1 = deriv(u);
    CVec3 tmp;
    for (int j = 0; j < 3; ++j) tmp[j] = u[j] + 0.5 * h * k1[j];
    const CVec3 k2 = deriv(tmp);
    for (int j = 0; j < 3; ++j) tmp[j] = u[j] + 0.5 * h * k2[j];
    const CVec3 k3 = deriv(tmp);
    for (int j = 0; j < 3; ++j) tmp[j] = u[j] + h * k3[j];
    const CVec3 k4 = deriv(tmp);
    for (int j = 0; j < 3; ++j) {
      u[j] += (h / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
    traj.times.push_back(i * h);
    traj.states.push_back({u[0], u[1], u[2]});
  }
  return traj;
}

Trajectory sample_exact(const ModalCoefficients& coeffs, double t_end, double dt) {
  if (!(t_end > 0.0) || !(dt > 0.0)) throw InvalidArgument("t_end and dt must be positive");
  const int n = std::max(1, static_cast<int>(std::ceil(t_end / dt - 1e-12)));
  const double h = t_end / n;
  Trajectory traj;
  traj.times.reserve(n + 1);
  traj.states.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    traj.times.push_back(i * h);
    traj.states.push_back(modal_state(coeffs, i * h));
  }
  return traj;
}

DecayCertificate decay_certificate(const ModelParams& params, const ModeSet& modes,
                                   const std::vector<ModalIC>& ics, const GlobalMetric& metric,
                                   const std::vector<double>& times) {
  params.require_dissipative();
  if (ics.size() != modes.size()) {
    throw InvalidArgument("one initial condition per mode required");
  }
  if (metric.mus.size() != modes.size()) {
    throw InvalidArgument("metric was built over a different mode set");
  }
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (metric.mus[i] != modes[i]) {
      throw InvalidArgument("metric/mode mismatch at mode " + std::to_string(i + 1));
    }
  }
  if (times.size() < 2) throw InvalidArgument("time grid needs at least 2 samples");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0 || (i > 0 && times[i] <= times[i - 1])) {
      throw InvalidArgument("time grid must be non-negative and strictly ascending");
    }
  }

  const double smax = sigma_max(params, modes);
  // Undetected inter-sample violations: refuse grids coarser than 8 samples
  // per decade of decay.
  const double span = times.back() - times.front();
  const double decades = std::abs(smax) * span / std::log(10.0);
  if (static_cast<double>(times.size()) < 8.0 * decades) {
    throw InvalidArgument("time grid too coarse: need at least 8 samples per decade of decay (" +
                          std::to_string(static_cast<int>(std::ceil(8.0 * decades))) +
                          " for this grid span)");
  }

  // Per-mode closed forms, evaluated blockwise; modes are orthogonal in the
  // block-diagonal metric, so norms add squarewise.
  std::vector<ModalCoefficients> coeffs;
  coeffs.reserve(modes.size());
  bool confluent = false;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    coeffs.push_back(modal_coefficients(solve_characteristic(params, modes[i]), ics[i]));
    confluent = confluent || coeffs.back().lambda[0] == coeffs.back().lambda[1];
  }

  // The orthonormal-expansion identity needs genuinely distinct eigenvectors
  // in every block.
  const bool pure = !metric.adjusted && !confluent;
  // Coefficients in the orthonormal frame: d_hat_j = d_j * c_j.
  std::vector<std::array<double, 3>> dhat_sq;
  std::vector<std::array<double, 3>> dhat_rate;
  if (pure) {
    dhat_sq.resize(modes.size());
    dhat_rate.resize(modes.size());
    for (std::size_t i = 0; i < modes.size(); ++i) {
      const RootTriple t = solve_characteristic(params, modes[i]);
      const auto cs = normalization_constants(metric.space.requested, modes[i], t);
      for (int j = 0; j < 3; ++j) {
        dhat_sq[i][j] = std::norm(coeffs[i].w[j]) * cs[j] * cs[j];
        dhat_rate[i][j] = t.root(j).real();
      }
    }
  }

  auto norm_at = [&](double t) -> double {
    double sum = 0.0;
    for (std::size_t i = 0; i < modes.size(); ++i) {
      const ModalState s = modal_state(coeffs[i], t);
      sum += quad_form(metric.block_matrix(i), s.vec());
    }
    return std::sqrt(std::max(sum, 0.0));
  };

  DecayCertificate cert;
  cert.sigma_max = smax;
  cert.initial_norm = norm_at(0.0);
  cert.times = times;
  cert.norms.reserve(times.size());
  cert.envelope_margin = std::numeric_limits<double>::infinity();
  double max_expansion_dev = 0.0;
  for (double t : times) {
    const double nt = norm_at(t);
    cert.norms.push_back(nt);
    cert.envelope_margin =
        std::min(cert.envelope_margin, std::exp(smax * t) * cert.initial_norm - nt);
    if (pure) {
      double sum = 0.0;
      for (std::size_t i = 0; i < modes.size(); ++i) {
        for (int j = 0; j < 3; ++j) {
          sum += dhat_sq[i][j] * std::exp(2.0 * dhat_rate[i][j] * t);
        }
      }
      const double nsq = nt * nt;
      max_expansion_dev =
          std::max(max_expansion_dev, std::abs(sum - nsq) / std::max(nsq, 1e-300));
    }
  }
  if (pure) cert.expansion_residual = max_expansion_dev;
  return cert;
}

std::optional<OptimalityWitness> optimality_witness(const ModelParams& params,
                                                    const ModeSet& modes, double omega) {
  params.require_dissipative();
  const double smax = sigma_max(params, modes);
  if (!(omega < smax)) {
    throw InvalidArgument("omega must be below sigma_max = " + std::to_string(smax));
  }

  auto best_in = [&](double mu, int n) -> std::optional<OptimalityWitness> {
    const RootTriple t = solve_characteristic(params, mu);
    int arg = -1;
    double best = omega;
    for (int j = 0; j < 3; ++j) {
      const double re = t.root(j).real();
      if (re > best) {
        best = re;
        arg = j;
      }
    }
    if (arg < 0) return std::nullopt;
    return OptimalityWitness{n, arg + 1, best};
  };

  std::optional<OptimalityWitness> found;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const auto w = best_in(modes[i], static_cast<int>(i) + 1);
    if (w && (!found || w->rate > found->rate)) found = w;
  }
  if (found) return found;

  if (modes.extendable()) {
    // The real roots approach -1/beta from the left as mu grows, so a mode
    // with lambda_1 above any omega < -1/beta exists.
    constexpr int kMaxModes = 1 << 24;
    for (int n = static_cast<int>(modes.size()) + 1; n <= kMaxModes; n *= 2) {
      const auto w = best_in(modes.dirichlet_mu(n), n);
      if (w) return w;
    }
  }
  return std::nullopt;
}

double energy_derivative_check(const ModelParams& params, double mu,
                                  const Trajectory& traj) {
  params.require_dissipative();
  if (traj.times.size() < 3) throw InvalidArgument("trajectory needs at least 3 samples");
  const double h = traj.times[1] - traj.times[0];
  for (std::size_t i = 1; i < traj.times.size(); ++i) {
    if (std::abs(traj.times[i] - traj.times[i - 1] - h) > 1e-9 * std::max(1.0, h)) {
      throw InvalidArgument("trajectory grid must be uniform");
    }
  }
  const RootTriple t = solve_characteristic(params, mu);
  if (h * max_root_magnitude(t) > 0.2) {
    throw InvalidArgument("grid too coarse to resolve the dynamics: h * max|lambda| > 0.2");
  }

  const Mat3 e = energy_weight(params, mu);
  std::vector<double> energy(traj.states.size());
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    energy[i] = 0.5 * quad_form(e, traj.states[i].vec());
  }
  const double drain = (params.beta - params.alpha) * mu;
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < traj.states.size(); ++i) {
    const double dedt = (energy[i + 1] - energy[i - 1]) / (2.0 * h);
    const double v2 = std::norm(traj.states[i].dz);
    worst = std::max(worst, std::abs(dedt + drain * v2));
  }
  return worst;
}

}  // namespace mgt
