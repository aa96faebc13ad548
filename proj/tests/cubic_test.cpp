#include "mgt/cubic.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "mgt/errors.hpp"
#include "oracles.hpp"

using namespace mgt;

namespace {

// Quadratic discriminant factor w(mu), written out independently of the
// library's discriminant().
double w_direct(const ModelParams& p, double mu) {
  const double r = p.beta / p.alpha;
  return 4.0 * p.beta * p.beta * p.beta / p.alpha * mu * mu + (27.0 - r * r - 18.0 * r) * mu +
         4.0 / (p.alpha * p.alpha);
}

// Stratified random dissipative parameters: the ratio alpha/beta cycles
// through (0, 1/9), {1/9}, (1/9, 1).
ModelParams random_dissipative(std::mt19937_64& rng, int stratum) {
  const double beta = oracle::log_uniform(rng, 0.2, 5.0);
  double ratio;
  switch (stratum % 3) {
    case 0: ratio = oracle::uniform(rng, 0.01, 1.0 / 9.0 - 1e-4); break;
    case 1: ratio = 1.0 / 9.0; break;
    default: ratio = oracle::uniform(rng, 1.0 / 9.0 + 1e-4, 0.99); break;
  }
  return ModelParams(ratio * beta, beta);
}

}  // namespace

TEST_CASE("depress: shifted coefficients") {
  SUBCASE("triple-root locus has p = q = 0") {
    const DepressedCubic d = depress(ModelParams(1.0 / 3.0, 3.0), 1.0 / 3.0);
    CHECK(std::abs(d.p) <= 1e-12);
    CHECK(std::abs(d.q) <= 1e-12);
  }
  SUBCASE("mu -> 0 limit") {
    const DepressedCubic d = depress(ModelParams(1.0, 1.0), 1e-13);
    CHECK(d.p == doctest::Approx(-1.0 / 3.0).epsilon(1e-11));
    CHECK(d.q == doctest::Approx(2.0 / 27.0).epsilon(1e-11));
  }
  SUBCASE("re-expanding the shifted cubic reproduces the monic form") {
    const ModelParams p(1.0 / 6.0, 11.0 / 6.0);
    const double mu = 1.0;
    const DepressedCubic d = depress(p, mu);
    // (l + s)^3 + p (l + s) + q = l^3 + 3s l^2 + (3s^2 + p) l + (s^3 + p s + q)
    const double s = d.shift;
    CHECK(3.0 * s == doctest::Approx(1.0 / p.alpha).epsilon(1e-12));
    CHECK(3.0 * s * s + d.p == doctest::Approx(p.beta * mu / p.alpha).epsilon(1e-12));
    CHECK(s * s * s + d.p * s + d.q == doctest::Approx(mu / p.alpha).epsilon(1e-12));
  }
  SUBCASE("rejects non-positive mu") {
    CHECK_THROWS_AS(depress(ModelParams(1.0, 2.0), 0.0), InvalidArgument);
    CHECK_THROWS_AS(depress(ModelParams(1.0, 2.0), -1.0), InvalidArgument);
  }
}

TEST_CASE("critical_masses") {
  SUBCASE("coincident masses at alpha/beta = 1/9") {
    const CriticalMasses cm = critical_masses(ModelParams(1.0 / 3.0, 3.0));
    CHECK(cm.c1 == doctest::Approx(-216.0).epsilon(1e-12));
    CHECK(std::abs(cm.c2) <= 1e-7);
    CHECK(cm.regime == MassRegime::CoincidentMasses);
    REQUIRE(cm.m1);
    REQUIRE(cm.m2);
    CHECK(std::abs(*cm.m1 - 1.0 / 3.0) <= 1e-12);
    CHECK(std::abs(*cm.m2 - 1.0 / 3.0) <= 1e-12);
  }
  SUBCASE("no real masses for 1/9 < alpha/beta < 1") {
    const CriticalMasses cm = critical_masses(ModelParams(1.0, 2.0));
    CHECK(cm.c1 == doctest::Approx(-13.0));
    CHECK(cm.c2 == doctest::Approx(-343.0));
    CHECK(cm.regime == MassRegime::NoRealMasses);
    CHECK_FALSE(cm.m1);
    CHECK_FALSE(cm.m2);
  }
  SUBCASE("two masses bracketing mu = 1 at alpha=1/6, beta=11/6") {
    const ModelParams p(1.0 / 6.0, 11.0 / 6.0);
    const CriticalMasses cm = critical_masses(p);
    CHECK(cm.c2 == doctest::Approx(80.0).epsilon(1e-10));
    CHECK(cm.regime == MassRegime::TwoMasses);
    REQUIRE(cm.m1);
    REQUIRE(cm.m2);
    CHECK(*cm.m1 == doctest::Approx(0.9570).epsilon(1e-3));
    CHECK(*cm.m2 == doctest::Approx(1.0175).epsilon(1e-3));
    CHECK(*cm.m1 < 1.0);
    CHECK(1.0 < *cm.m2);
    // Independent route: bisection on the quadratic factor.
    auto w = [&](double mu) { return w_direct(p, mu); };
    const double m1_oracle = oracle::bisect(w, 0.5, 1.0);
    const double m2_oracle = oracle::bisect(w, 1.0, 1.5);
    CHECK(*cm.m1 == doctest::Approx(m1_oracle).epsilon(1e-9));
    CHECK(*cm.m2 == doctest::Approx(m2_oracle).epsilon(1e-9));
    // The masses are zeros of w to relative 1e-9 (term scale of w at m).
    auto w_scale = [&](double m) {
      const double r = p.beta / p.alpha;
      return 4.0 * std::pow(p.beta, 3) / p.alpha * m * m +
             std::abs(27.0 - r * r - 18.0 * r) * m + 4.0 / (p.alpha * p.alpha);
    };
    CHECK(std::abs(w(*cm.m1)) <= 1e-9 * w_scale(*cm.m1));
    CHECK(std::abs(w(*cm.m2)) <= 1e-9 * w_scale(*cm.m2));
  }
  SUBCASE("non-dissipative parameters report no positive masses") {
    const CriticalMasses cm = critical_masses(ModelParams(2.0, 1.0));
    CHECK(cm.regime == MassRegime::NoRealMasses);
  }
}

TEST_CASE("discriminant sign classification") {
  CHECK(discriminant(ModelParams(1.0 / 3.0, 3.0), 1.0 / 3.0).sign == DiscSign::Zero);
  CHECK(discriminant(ModelParams(1.0 / 6.0, 11.0 / 6.0), 1.0).sign == DiscSign::Negative);
  CHECK(discriminant(ModelParams(1.0, 2.0), 1.0).sign == DiscSign::Positive);

  SUBCASE("d factors as (mu/alpha^2) w") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
      const ModelParams p = random_dissipative(rng, i);
      const double mu = oracle::log_uniform(rng, 1e-2, 1e2);
      const DiscriminantReport rep = discriminant(p, mu);
      const double expect = mu / (p.alpha * p.alpha) * rep.w;
      CHECK(std::abs(rep.d - expect) <= 1e-10 * std::max(1.0, std::abs(expect)));
      // Same sign as the depressed-cubic discriminant computed directly.
      const DepressedCubic dc = depress(p, mu);
      const double d_direct = 4.0 * dc.p * dc.p * dc.p + 27.0 * dc.q * dc.q;
      if (rep.sign != DiscSign::Zero) {
        CHECK((d_direct > 0.0) == (rep.sign == DiscSign::Positive));
      }
    }
  }
}

TEST_CASE("solve_characteristic: pinned cases") {
  SUBCASE("triple root at -3/beta") {
    const RootTriple t = solve_characteristic(ModelParams(1.0 / 3.0, 3.0), 1.0 / 3.0);
    CHECK(t.kind == RootKind::TripleReal);
    CHECK(std::abs(t.lambda1.real() + 1.0) <= 1e-9);
    CHECK(t.lambda1 == t.lambda2);
    CHECK(t.lambda2 == t.lambda3);
  }
  SUBCASE("factored cubic (lambda+1)(lambda+2)(lambda+3)") {
    const RootTriple t = solve_characteristic(ModelParams(1.0 / 6.0, 11.0 / 6.0), 1.0);
    CHECK(t.kind == RootKind::ThreeRealDistinct);
    CHECK(std::abs(t.lambda1.real() + 3.0) <= 1e-10);
    CHECK(std::abs(t.lambda2.real() + 2.0) <= 1e-10);
    CHECK(std::abs(t.lambda3.real() + 1.0) <= 1e-10);
    CHECK(t.lambda1.real() < t.lambda2.real());
    CHECK(t.lambda2.real() < t.lambda3.real());
  }
  SUBCASE("one real root plus conjugate pair") {
    const ModelParams p(1.0, 2.0);
    const RootTriple t = solve_characteristic(p, 1.0);
    CHECK(t.kind == RootKind::OneRealPlusPair);
    // Bisection oracle for the real root in (-1/alpha, -1/beta).
    auto f = [&](double x) { return characteristic_value(p, 1.0, x).real(); };
    const double real_oracle = oracle::bisect(f, -1.0, -0.5);
    CHECK(t.lambda1.real() == doctest::Approx(real_oracle).epsilon(1e-12));
    CHECK(t.lambda1.real() == doctest::Approx(-0.5698).epsilon(1e-4));
    // Pair from deflation: lambda^2 + (1/alpha + l1) lambda + mu/(-alpha l1) ... use
    // Vieta instead: sum and product pin the pair exactly.
    REQUIRE(t.pair_real);
    REQUIRE(t.pair_imag);
    const double a_oracle = 0.5 * (-1.0 / p.alpha - real_oracle);
    CHECK(*t.pair_real == doctest::Approx(a_oracle).epsilon(1e-12));
    CHECK(t.lambda3 == std::conj(t.lambda2));
    CHECK(*t.pair_imag > 0.0);
    CHECK(t.lambda2.imag() > 0.0);
  }
  SUBCASE("double root at mu = m2") {
    const ModelParams p(1.0 / 6.0, 11.0 / 6.0);
    const CriticalMasses cm = critical_masses(p);
    const RootTriple t = solve_characteristic(p, *cm.m2);
    CHECK(t.kind == RootKind::DoubleReal);
    CHECK(t.defective());
    // Ascending with the doubled value adjacent.
    CHECK(t.lambda1.real() <= t.lambda2.real());
    CHECK(t.lambda2.real() <= t.lambda3.real());
    const bool doubled_low = t.lambda1 == t.lambda2;
    const bool doubled_high = t.lambda2 == t.lambda3;
    CHECK((doubled_low || doubled_high));
  }
  SUBCASE("rejects non-positive mu") {
    CHECK_THROWS_AS(solve_characteristic(ModelParams(1.0, 2.0), 0.0), InvalidArgument);
  }
  SUBCASE("non-dissipative parameters still solve") {
    const ModelParams p(3.0, 1.0);
    CHECK_FALSE(p.dissipative());
    const RootTriple t = solve_characteristic(p, 2.0);
    const RootResiduals r = verify_root_identities(p, t);
    CHECK(r.vieta_sum <= 1e-10);
  }
}

TEST_CASE("classify_mode") {
  for (double mu : {0.1, 1.0, 10.0, 1000.0}) {
    CHECK(classify_mode(ModelParams(1.0, 2.0), mu) == RootKind::OneRealPlusPair);
  }
  const ModelParams p(1.0 / 6.0, 11.0 / 6.0);
  const CriticalMasses cm = critical_masses(p);
  CHECK(classify_mode(p, *cm.m2) == RootKind::DoubleReal);
  CHECK(classify_mode(p, *cm.m1) == RootKind::DoubleReal);
  CHECK(classify_mode(ModelParams(1.0 / 3.0, 3.0), 1.0 / 3.0) == RootKind::TripleReal);
}

TEST_CASE("verify_root_identities") {
  SUBCASE("exact real triple") {
    const ModelParams p(1.0 / 6.0, 11.0 / 6.0);
    const RootTriple t = solve_characteristic(p, 1.0);
    const RootResiduals r = verify_root_identities(p, t);
    CHECK(r.max_abs() <= 1e-12);
    CHECK_FALSE(r.pair_real_eq);
  }
  SUBCASE("conjugate pair satisfies the real/imaginary part equations") {
    const ModelParams p(1.0, 2.0);
    const RootTriple t = solve_characteristic(p, 1.0);
    const RootResiduals r = verify_root_identities(p, t);
    REQUIRE(r.pair_real_eq);
    REQUIRE(r.pair_imag_eq);
    CHECK(*r.pair_real_eq <= 1e-9);
    CHECK(*r.pair_imag_eq <= 1e-9);
  }
  SUBCASE("perturbing a root is detected") {
    const ModelParams p(1.0 / 6.0, 11.0 / 6.0);
    RootTriple t = solve_characteristic(p, 1.0);
    t.lambda2 += 1e-3;
    const RootResiduals r = verify_root_identities(p, t);
    CHECK(r.max_abs() > 1e-5);
  }
}

TEST_CASE("random sweep: bounds, Vieta, and classification agreement") {
  std::mt19937_64 rng(20250809);
  const int samples = 10000;
  for (int i = 0; i < samples; ++i) {
    const ModelParams p = random_dissipative(rng, i);
    const double mu = oracle::log_uniform(rng, 1e-2, 1e2);
    const RootTriple t = solve_characteristic(p, mu);

    // Residual of the cubic itself at every root.
    const double res_scale = 1e-9 * std::max(1.0, mu / p.alpha);
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(characteristic_value(p, mu, t.root(j))) <= res_scale);
    }

    // Real roots in (-1/alpha, -1/beta); pair real parts in (limit, 0).
    const double lo = -1.0 / p.alpha;
    const double hi = -1.0 / p.beta;
    const double pair_lo = -0.5 * (1.0 / p.alpha - 1.0 / p.beta);
    for (int j = 0; j < 3; ++j) {
      const std::complex<double> l = t.root(j);
      if (l.imag() == 0.0) {
        CHECK(l.real() > lo);
        CHECK(l.real() < hi);
      } else {
        CHECK(l.real() > pair_lo);
        CHECK(l.real() < 0.0);
      }
    }

    // Vieta identities, relative 1e-10.
    const RootResiduals r = verify_root_identities(p, t);
    CHECK(r.vieta_sum <= 1e-10 * std::max(1.0, 1.0 / p.alpha));
    CHECK(r.vieta_pair_sum <= 1e-10 * std::max(1.0, p.beta * mu / p.alpha));
    CHECK(r.vieta_product <= 1e-10 * std::max(1.0, mu / p.alpha));

    // classify_mode and the solver agree.
    CHECK(classify_mode(p, mu) == t.kind);

    // Discriminant / critical-mass consistency.
    const CriticalMasses cm = critical_masses(p);
    const DiscriminantReport rep = discriminant(p, mu);
    if (cm.regime == MassRegime::TwoMasses && rep.sign != DiscSign::Zero) {
      const bool inside = *cm.m1 < mu && mu < *cm.m2;
      CHECK(inside == (rep.sign == DiscSign::Negative));
    }
    if (cm.regime == MassRegime::NoRealMasses) {
      CHECK(rep.sign == DiscSign::Positive);
    }
  }
}
