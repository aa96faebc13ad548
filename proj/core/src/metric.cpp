#include "mgt/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mgt {

namespace {

void require_positive_mu(double mu) {
  if (!(mu > 0.0)) throw InvalidArgument("mu must be positive");
}

void require_nondefective(const RootTriple& t) {
  if (t.defective()) throw DefectiveMode(t.mu);
}

}  // namespace

ResolvedSpace resolve_space(Space s) {
  switch (s) {
    case Space::H1: return {s, Space::H1, false};
    case Space::H2: return {s, Space::H1, true};
    case Space::H3: return {s, Space::H3, false};
    case Space::H4: return {s, Space::H3, true};
  }
  return {s, Space::H1, false};
}

const char* to_string(Space s) {
  switch (s) {
    case Space::H1: return "h1";
    case Space::H2: return "h2";
    case Space::H3: return "h3";
    case Space::H4: return "h4";
  }
  return "?";
}

Space space_from_string(const std::string& name) {
  if (name == "h1" || name == "H1") return Space::H1;
  if (name == "h2" || name == "H2") return Space::H2;
  if (name == "h3" || name == "H3") return Space::H3;
  if (name == "h4" || name == "H4") return Space::H4;
  throw InvalidArgument("unknown space '" + name + "' (expected h1|h2|h3|h4)");
}

NaturalWeight natural_weight(Space space, double mu) {
  require_positive_mu(mu);
  const ResolvedSpace rs = resolve_space(space);
  NaturalWeight w{rs, mu, {}};
  if (rs.resolved == Space::H1) {
    w.diag = {mu, mu, 1.0};
  } else {
    w.diag = {mu * mu, mu, 1.0};
  }
  return w;
}

std::array<double, 3> normalization_constants(Space space, double mu, const RootTriple& triple) {
  require_nondefective(triple);
  const NaturalWeight w = natural_weight(space, mu);
  std::array<double, 3> c{};
  for (int j = 0; j < 3; ++j) {
    const double m2 = std::norm(triple.root(j));
    c[j] = std::sqrt(w.diag[0] + w.diag[1] * m2 + w.diag[2] * m2 * m2);
  }
  return c;
}

ModalFrame modal_frame(Space space, double mu, const RootTriple& triple) {
  const std::array<double, 3> c = normalization_constants(space, mu, triple);
  ModalFrame f{resolve_space(space), mu, c, {}};
  for (int j = 0; j < 3; ++j) {
    const Complex l = triple.root(j);
    f.columns(0, j) = 1.0 / c[j];
    f.columns(1, j) = l / c[j];
    f.columns(2, j) = l * l / c[j];
  }
  return f;
}

ModalGram modal_gram(Space space, double mu, const RootTriple& triple) {
  const ModalFrame f = modal_frame(space, mu, triple);
  const CMat3 cinv = inverse(f.columns);
  const CMat3 g = cinv.adjoint() * cinv;
  ModalGram out{f.space, mu, {}, g.max_imag()};
  const Mat3 r = g.real_part();
  out.gram = 0.5 * (r + r.transpose());
  return out;
}

Mat3 companion_matrix(const ModelParams& p, double mu) {
  require_positive_mu(mu);
  Mat3 m;
  m(0, 1) = 1.0;
  m(1, 2) = 1.0;
  m(2, 0) = -mu / p.alpha;
  m(2, 1) = -p.beta * mu / p.alpha;
  m(2, 2) = -1.0 / p.alpha;
  return m;
}

double normality_residual(const ModelParams& params, double mu, const Mat3& gram) {
  const Mat3 m = companion_matrix(params, mu);
  const Mat3 adj = inverse(gram) * (m.transpose() * gram);
  const Mat3 comm = m * adj - adj * m;
  const double mf = m.frobenius();
  return comm.frobenius() / (mf * mf);
}

EquivalenceBounds equivalence_bounds(const Mat3& gram, const NaturalWeight& weight) {
  Mat3 s;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      s(i, j) = gram(i, j) / std::sqrt(weight.diag[i] * weight.diag[j]);
  const std::array<double, 3> ev = sym3_eigenvalues(s);
  if (!(ev[0] > 0.0)) throw InvalidArgument("pencil is not positive definite");
  return {std::sqrt(ev[0]), std::sqrt(ev[2])};
}

GlobalEquivalence global_equivalence_bounds(const ModelParams& params, Space space,
                                            const ModeSet& modes, int n0) {
  if (n0 < 1 || static_cast<std::size_t>(n0) > modes.size()) {
    throw InvalidArgument("band start n0 out of range");
  }
  GlobalEquivalence out;
  out.n0 = n0;
  out.m_star = std::numeric_limits<double>::infinity();
  out.M_star = 0.0;
  out.per_mode.reserve(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const double mu = modes[i];
    const RootTriple t = solve_characteristic(params, mu);
    const ModalGram g = modal_gram(space, mu, t);
    const EquivalenceBounds b = equivalence_bounds(g.gram, natural_weight(space, mu));
    out.per_mode.push_back(b);
    if (static_cast<int>(i) + 1 >= n0) {
      out.m_star = std::min(out.m_star, b.m);
      out.M_star = std::max(out.M_star, b.M);
    }
  }
  return out;
}

Mat3 gram_asymptotics(Space space, const ModelParams& p, double mu) {
  p.require_dissipative();
  require_positive_mu(mu);
  const double a = p.alpha;
  const double b = p.beta;
  Mat3 g;
  if (resolve_space(space).resolved == Space::H1) {
    g(0, 0) = (2.0 * a * b * b + 3.0 * a + b) / (2.0 * a * b * b) * mu;
    g(0, 1) = g(1, 0) = (a + b) / (2.0 * a * b) * mu;
    g(0, 2) = g(2, 0) = (4.0 * a * a * b * b + b * b + 3.0 * a * a) / (4.0 * a * b * b * b);
    g(1, 1) = (a + b) / (2.0 * a) * mu;
    g(1, 2) = g(2, 1) = (a + b) * (a + b) / (4.0 * a * b * b);
    g(2, 2) = (a + b) / (2.0 * b);
  } else {
    g(0, 0) = mu * mu;
    g(0, 1) = g(1, 0) = (3.0 * a * b - a * a + b * b) / (2.0 * a * b * b) * mu;
    g(0, 2) = g(2, 0) = a / b * mu;
    g(1, 1) = (a * a + a * b + b * b) / (2.0 * a * b) * mu;
    g(1, 2) = g(2, 1) = (6.0 * a * a * b - 3.0 * a * a * a + 2.0 * a * b * b + b * b * b) /
                        (4.0 * a * b * b * b);
    g(2, 2) = (3.0 * a * a + a * b + b * b) / (2.0 * b * b);
  }
  return g;
}

Mat3 energy_weight(const ModelParams& p, double mu) {
  p.require_dissipative();
  require_positive_mu(mu);
  const double a = p.alpha;
  Mat3 e;
  e(0, 0) = mu;
  e(0, 1) = e(1, 0) = a * mu;
  e(1, 1) = a * p.beta * mu + 1.0;
  e(1, 2) = e(2, 1) = a;
  e(2, 2) = a * a;
  return e;
}

DefectiveMetric defective_metric(const ModelParams& params, double mu, double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  const RootTriple t = solve_characteristic(params, mu);
  if (!t.defective()) {
    throw InvalidArgument("mode mu=" + std::to_string(mu) +
                          " is not defective; use modal_gram instead");
  }

  // Generalized eigenvector chains of the companion block at a root l are
  // v1 = (1, l, l^2), v2 = d(v1)/dl, v3 = d^2(v1)/dl^2 / 2.
  Mat3 p;  // basis P, chain vectors scaled by eps^position
  double sigma_block;
  if (t.kind == RootKind::TripleReal) {
    const double l = t.lambda1.real();
    sigma_block = l;
    p(0, 0) = 1.0;       p(0, 1) = 0.0;           p(0, 2) = 0.0;
    p(1, 0) = l;         p(1, 1) = 1.0;           p(1, 2) = 0.0;
    p(2, 0) = l * l;     p(2, 1) = 2.0 * l;       p(2, 2) = 1.0;
    p(0, 1) *= epsilon;  p(1, 1) *= epsilon;      p(2, 1) *= epsilon;
    p(0, 2) *= epsilon * epsilon;
    p(1, 2) *= epsilon * epsilon;
    p(2, 2) *= epsilon * epsilon;
  } else {
    // Ascending order keeps the doubled value adjacent; the remaining entry
    // is the simple root.
    const double r1 = t.lambda1.real(), r2 = t.lambda2.real(), r3 = t.lambda3.real();
    double ld, ls;
    if (std::abs(r2 - r1) <= std::abs(r3 - r2)) {
      ld = 0.5 * (r1 + r2);
      ls = r3;
    } else {
      ld = 0.5 * (r2 + r3);
      ls = r1;
    }
    sigma_block = std::max(ld, ls);
    // Columns: chain (v1, eps*v2) at the double root, then the simple one.
    p(0, 0) = 1.0;       p(0, 1) = 0.0;               p(0, 2) = 1.0;
    p(1, 0) = ld;        p(1, 1) = epsilon;           p(1, 2) = ls;
    p(2, 0) = ld * ld;   p(2, 1) = 2.0 * ld * epsilon; p(2, 2) = ls * ls;
  }

  const Mat3 pinv = inverse(p);
  DefectiveMetric out{mu, epsilon, pinv.transpose() * pinv, sigma_block, p};
  return out;
}

const Mat3& GlobalMetric::block_matrix(std::size_t i) const {
  if (const auto* g = std::get_if<ModalGram>(&blocks[i])) return g->gram;
  return std::get<DefectiveMetric>(blocks[i]).gram;
}

GlobalMetric global_metric(const ModelParams& params, const ModeSet& modes, Space space,
                           std::optional<double> epsilon) {
  params.require_dissipative();
  if (modes.empty()) throw InvalidArgument("mode set must be non-empty");
  if (epsilon && !(*epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");

  GlobalMetric gm{params, resolve_space(space), {}, {}, false, 0.0};
  gm.mus.assign(modes.mus().begin(), modes.mus().end());
  const double essential = -1.0 / params.beta;

  double used_eps = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const double mu = modes[i];
    const RootTriple t = solve_characteristic(params, mu);
    if (!t.defective()) {
      gm.blocks.emplace_back(modal_gram(space, mu, t));
      continue;
    }
    // sigma_block < -1/beta always (real roots stay left of the essential
    // point), so half the gap keeps sigma_block + eps < -1/beta.
    double sb = std::max({t.lambda1.real(), t.lambda2.real(), t.lambda3.real()});
    const double half_gap = 0.5 * (essential - sb);
    double eps = epsilon.value_or(half_gap);
    if (!(sb + eps < essential)) eps = half_gap;
    DefectiveMetric dm = defective_metric(params, mu, eps);
    used_eps = used_eps == 0.0 ? dm.epsilon : std::min(used_eps, dm.epsilon);
    gm.blocks.emplace_back(std::move(dm));
    gm.adjusted = true;
  }
  gm.epsilon = used_eps;
  return gm;
}

}  // namespace mgt
