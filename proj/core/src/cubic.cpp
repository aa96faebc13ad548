#include "mgt/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mgt {

namespace {

constexpr double kDiscZeroRel = 1e-9;   // |w| <= kDiscZeroRel * (4 b^3/a) mu^2  => Zero
constexpr double kPQZeroRel = 1e-9;     // triple-root test on the depressed coefficients
constexpr int kMaxPolish = 5;

double eval_real(const ModelParams& pr, double mu, double x) {
  return ((pr.alpha * x + 1.0) * x + pr.beta * mu) * x + mu;
}

double eval_deriv(const ModelParams& pr, double mu, double x) {
  return (3.0 * pr.alpha * x + 2.0) * x + pr.beta * mu;
}

// Newton polish on the original cubic; a bounded number of steps, stopping
// once the residual no longer improves.
double polish_real(const ModelParams& pr, double mu, double x) {
  double fx = eval_real(pr, mu, x);
  for (int it = 0; it < kMaxPolish; ++it) {
    const double dfx = eval_deriv(pr, mu, x);
    if (dfx == 0.0) break;
    const double next = x - fx / dfx;
    const double fnext = eval_real(pr, mu, next);
    if (!(std::abs(fnext) < std::abs(fx))) break;
    x = next;
    fx = fnext;
  }
  return x;
}

std::complex<double> polish_complex(const ModelParams& pr, double mu, std::complex<double> z) {
  std::complex<double> fz = characteristic_value(pr, mu, z);
  for (int it = 0; it < kMaxPolish; ++it) {
    const std::complex<double> dfz = (3.0 * pr.alpha * z + 2.0) * z + pr.beta * mu;
    if (dfz == std::complex<double>(0.0)) break;
    const std::complex<double> next = z - fz / dfz;
    const std::complex<double> fnext = characteristic_value(pr, mu, next);
    if (!(std::abs(fnext) < std::abs(fz))) break;
    z = next;
    fz = fnext;
  }
  return z;
}

// The simple quadratic from deflating the depressed cubic by its real root:
// xi^2 + xi1*xi + (xi1^2 + p).  With one real root and a conjugate pair this
// discriminant is negative; returns (re, im) of the upper-half-plane root.
std::pair<double, double> deflated_pair(double p, double xi1) {
  const double re = -0.5 * xi1;
  const double disc = 3.0 * xi1 * xi1 + 4.0 * p;  // = -(quadratic discriminant)
  const double im = 0.5 * std::sqrt(std::max(disc, 0.0));
  return {re, im};
}

void require_positive_mu(double mu) {
  if (!(mu > 0.0)) throw InvalidArgument("mu must be positive");
}

}  // namespace

const char* to_string(RootKind k) {
  switch (k) {
    case RootKind::OneRealPlusPair: return "one_real_plus_pair";
    case RootKind::ThreeRealDistinct: return "three_real_distinct";
    case RootKind::DoubleReal: return "double_real";
    case RootKind::TripleReal: return "triple_real";
  }
  return "?";
}

const char* to_string(DiscSign s) {
  switch (s) {
    case DiscSign::Positive: return "positive";
    case DiscSign::Negative: return "negative";
    case DiscSign::Zero: return "zero";
  }
  return "?";
}

const char* to_string(MassRegime r) {
  switch (r) {
    case MassRegime::NoRealMasses: return "no_real_masses";
    case MassRegime::TwoMasses: return "two_masses";
    case MassRegime::CoincidentMasses: return "coincident_masses";
  }
  return "?";
}

std::complex<double> characteristic_value(const ModelParams& pr, double mu,
                                          std::complex<double> lambda) {
  return ((pr.alpha * lambda + 1.0) * lambda + pr.beta * mu) * lambda + mu;
}

DepressedCubic depress(const ModelParams& pr, double mu) {
  require_positive_mu(mu);
  const double a = pr.alpha;
  DepressedCubic d;
  d.shift = 1.0 / (3.0 * a);
  d.p = pr.beta * mu / a - 1.0 / (3.0 * a * a);
  d.q = 2.0 / (27.0 * a * a * a) - pr.beta * mu / (3.0 * a * a) + mu / a;
  return d;
}

CriticalMasses critical_masses(const ModelParams& pr) {
  const double r = pr.beta / pr.alpha;
  CriticalMasses cm;
  cm.c1 = 27.0 - 18.0 * r - r * r;
  cm.c2 = cm.c1 * cm.c1 - 64.0 * r * r * r;
  // c2 is a difference of like-sized quantities near the coincident locus
  // (beta/alpha = 9 or 1); treat it as zero within its cancellation scale.
  const double c2_scale = cm.c1 * cm.c1 + 64.0 * r * r * r;
  const double c2_tol = 32.0 * std::numeric_limits<double>::epsilon() * c2_scale;

  const double denom = 8.0 * pr.beta * pr.beta * pr.beta;
  if (std::abs(cm.c2) <= c2_tol) {
    const double m = pr.alpha * (-cm.c1) / denom;
    cm.m1 = m;
    cm.m2 = m;
    cm.regime = m > 0.0 ? MassRegime::CoincidentMasses : MassRegime::NoRealMasses;
  } else if (cm.c2 > 0.0) {
    const double s = std::sqrt(cm.c2);
    cm.m1 = pr.alpha * (-cm.c1 - s) / denom;
    cm.m2 = pr.alpha * (-cm.c1 + s) / denom;
    cm.regime = *cm.m2 > 0.0 ? MassRegime::TwoMasses : MassRegime::NoRealMasses;
  } else {
    cm.regime = MassRegime::NoRealMasses;
  }
  return cm;
}

DiscriminantReport discriminant(const ModelParams& pr, double mu) {
  require_positive_mu(mu);
  const double a = pr.alpha;
  const double r = pr.beta / a;
  const double lead = 4.0 * pr.beta * pr.beta * pr.beta / a;
  DiscriminantReport rep;
  rep.w = lead * mu * mu + (27.0 - r * r - 18.0 * r) * mu + 4.0 / (a * a);
  rep.d = (mu / (a * a)) * rep.w;
  const double tol = kDiscZeroRel * lead * mu * mu;
  if (std::abs(rep.w) <= tol) {
    rep.sign = DiscSign::Zero;
  } else {
    rep.sign = rep.w > 0.0 ? DiscSign::Positive : DiscSign::Negative;
  }
  return rep;
}

RootKind classify_mode(const ModelParams& pr, double mu) {
  const DiscriminantReport rep = discriminant(pr, mu);
  if (rep.sign == DiscSign::Positive) return RootKind::OneRealPlusPair;
  if (rep.sign == DiscSign::Negative) return RootKind::ThreeRealDistinct;
  const DepressedCubic dc = depress(pr, mu);
  const double p_scale = std::max(pr.beta * mu / pr.alpha, 1.0 / (3.0 * pr.alpha * pr.alpha));
  const double q_scale = std::max({2.0 / (27.0 * pr.alpha * pr.alpha * pr.alpha),
                                   pr.beta * mu / (3.0 * pr.alpha * pr.alpha), mu / pr.alpha});
  if (std::abs(dc.p) <= kPQZeroRel * p_scale && std::abs(dc.q) <= kPQZeroRel * q_scale) {
    return RootKind::TripleReal;
  }
  return RootKind::DoubleReal;
}

RootTriple solve_characteristic(const ModelParams& pr, double mu) {
  require_positive_mu(mu);
  const DepressedCubic dc = depress(pr, mu);
  const RootKind kind = classify_mode(pr, mu);
  const double p = dc.p;
  const double q = dc.q;

  RootTriple out;
  out.mu = mu;
  out.kind = kind;

  switch (kind) {
    case RootKind::TripleReal: {
      // p = q = 0: the shifted cubic is xi^3, so the root is exactly -shift.
      const double l = -dc.shift;
      out.lambda1 = out.lambda2 = out.lambda3 = l;
      break;
    }
    case RootKind::DoubleReal: {
      // gcd(f, f') is linear; its root is the double root.  From one Euclid
      // division step, f = (...)*f' + r1*lambda + r0 with:
      const double r1 = (2.0 / 9.0) * (3.0 * pr.beta * mu - 1.0 / pr.alpha);
      const double r0 = mu * (1.0 - pr.beta / (9.0 * pr.alpha));
      double ld = -r0 / r1;
      // Polish on f' (the double root is a simple root of the derivative).
      double g = eval_deriv(pr, mu, ld);
      for (int it = 0; it < kMaxPolish; ++it) {
        const double dg = 6.0 * pr.alpha * ld + 2.0;
        if (dg == 0.0) break;
        const double next = ld - g / dg;
        const double gnext = eval_deriv(pr, mu, next);
        if (!(std::abs(gnext) < std::abs(g))) break;
        ld = next;
        g = gnext;
      }
      double ls = polish_real(pr, mu, -1.0 / pr.alpha - 2.0 * ld);
      double roots[3] = {ld, ld, ls};
      std::sort(roots, roots + 3);
      out.lambda1 = roots[0];
      out.lambda2 = roots[1];
      out.lambda3 = roots[2];
      break;
    }
    case RootKind::ThreeRealDistinct: {
      // d < 0 forces p < 0; the trigonometric form gives all three roots.
      const double mp3 = std::sqrt(-p / 3.0);
      const double arg = std::clamp(3.0 * q / (2.0 * p * mp3), -1.0, 1.0);
      const double theta = std::acos(arg);
      double roots[3];
      for (int k = 0; k < 3; ++k) {
        const double xi = 2.0 * mp3 * std::cos(theta / 3.0 - 2.0 * M_PI * k / 3.0);
        roots[k] = polish_real(pr, mu, xi - dc.shift);
      }
      std::sort(roots, roots + 3);
      out.lambda1 = roots[0];
      out.lambda2 = roots[1];
      out.lambda3 = roots[2];
      break;
    }
    case RootKind::OneRealPlusPair: {
      // Stable Cardano for the single real root: pick the cube root of the
      // larger-magnitude branch, recover the partner as -p/(3u).
      const double disc2 = 0.25 * q * q + p * p * p / 27.0;
      const double s = std::sqrt(std::max(disc2, 0.0));
      double u3 = (q >= 0.0) ? (-0.5 * q - s) : (-0.5 * q + s);
      double xi1;
      if (u3 == 0.0) {
        xi1 = 0.0;  // p = q = 0 handled above; defensive only
      } else {
        const double u = std::cbrt(u3);
        xi1 = u - p / (3.0 * u);
      }
      const double l1 = polish_real(pr, mu, xi1 - dc.shift);
      // Conjugate pair from the deflated quadratic, polished in complex
      // arithmetic on the original cubic.
      const double xi1_pol = l1 + dc.shift;
      auto [re_xi, im_xi] = deflated_pair(p, xi1_pol);
      std::complex<double> z(re_xi - dc.shift, im_xi);
      z = polish_complex(pr, mu, z);
      const double aa = z.real();
      const double bb = std::abs(z.imag());
      out.lambda1 = l1;
      out.lambda2 = {aa, bb};
      out.lambda3 = {aa, -bb};
      out.pair_real = aa;
      out.pair_imag = bb;
      break;
    }
  }
  return out;
}

double RootResiduals::max_abs() const {
  double m = std::max({vieta_sum, vieta_pair_sum, vieta_product});
  if (pair_real_eq) m = std::max(m, *pair_real_eq);
  if (pair_imag_eq) m = std::max(m, *pair_imag_eq);
  return m;
}

RootResiduals verify_root_identities(const ModelParams& pr, const RootTriple& t) {
  const std::complex<double> l1 = t.lambda1, l2 = t.lambda2, l3 = t.lambda3;
  RootResiduals res;
  res.vieta_sum = std::abs(l1 + l2 + l3 + 1.0 / pr.alpha);
  res.vieta_pair_sum = std::abs(l1 * l2 + l1 * l3 + l2 * l3 - pr.beta * t.mu / pr.alpha);
  res.vieta_product = std::abs(l1 * l2 * l3 + t.mu / pr.alpha);
  if (t.kind == RootKind::OneRealPlusPair && t.pair_real && t.pair_imag) {
    const double a = *t.pair_real;
    const double b = *t.pair_imag;
    res.pair_real_eq = std::abs(8.0 * pr.alpha * a * a * a + 8.0 * a * a +
                                2.0 * a * (1.0 / pr.alpha + pr.beta * t.mu) +
                                t.mu * (pr.beta / pr.alpha - 1.0));
    res.pair_imag_eq =
        std::abs(b * b - (3.0 * pr.alpha * a * a + 2.0 * a + pr.beta * t.mu) / pr.alpha);
  }
  return res;
}

}  // namespace mgt
