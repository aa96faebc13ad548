#pragma once

#include <complex>
#include <optional>

#include "mgt/params.hpp"

namespace mgt {

/// Per-mode eigenvalues of the generator are the three solutions of the
/// characteristic cubic  alpha*l^3 + l^2 + beta*mu*l + mu = 0.
/// This header solves and classifies that cubic and exposes the Cardano
/// discriminant apparatus (depressed form, quadratic discriminant factor,
/// critical masses m1 <= m2).

enum class RootKind { OneRealPlusPair, ThreeRealDistinct, DoubleReal, TripleReal };
enum class DiscSign { Positive, Negative, Zero };
enum class MassRegime { NoRealMasses, TwoMasses, CoincidentMasses };

const char* to_string(RootKind k);
const char* to_string(DiscSign s);
const char* to_string(MassRegime r);

/// Coefficients of xi^3 + p xi + q after the shift xi = lambda + 1/(3 alpha)
/// applied to the monic characteristic cubic.
struct DepressedCubic {
  double p;
  double q;
  double shift;  // 1/(3 alpha); lambda = xi - shift
};

/// Cardano discriminant d = 4 p^3 + 27 q^2 and its quadratic factor w with
/// d = (mu / alpha^2) * w.  Sign uses a scale-relative zero tolerance.
struct DiscriminantReport {
  double d;
  double w;
  DiscSign sign;
};

/// Roots m1 <= m2 of the quadratic discriminant factor.  Modes with
/// m1 < mu < m2 have three real eigenvalues; mu = m1 or m2 is defective.
/// m1/m2 are present iff c2 >= 0; in the dissipative range they are positive
/// exactly when alpha/beta <= 1/9 (TwoMasses / CoincidentMasses).  For
/// alpha >= beta real roots of w can exist but are non-positive, which never
/// affects classification of mu > 0; the regime is reported as NoRealMasses
/// when no positive mass exists.
struct CriticalMasses {
  double c1;
  double c2;
  std::optional<double> m1;
  std::optional<double> m2;
  MassRegime regime;
};

/// The three roots for one mode.  Ordering convention:
///  - ThreeRealDistinct / DoubleReal / TripleReal: ascending real order.
///  - OneRealPlusPair: lambda1 real, lambda2 = a + ib with b > 0,
///    lambda3 = conj(lambda2); a and b are also stored separately.
struct RootTriple {
  double mu;
  std::complex<double> lambda1;
  std::complex<double> lambda2;
  std::complex<double> lambda3;
  RootKind kind;
  std::optional<double> pair_real;  // a, shared real part of the pair
  std::optional<double> pair_imag;  // b > 0

  bool defective() const { return kind == RootKind::DoubleReal || kind == RootKind::TripleReal; }
  std::complex<double> root(int j) const { return j == 0 ? lambda1 : (j == 1 ? lambda2 : lambda3); }
};

/// Absolute residuals of the algebraic identities a computed triple must
/// satisfy: Vieta's three symmetric-function identities, and for a nonreal
/// root a+ib the coupled real/imaginary-part equations
///   8 a^3 alpha + 8 a^2 + 2 a (1/alpha + beta mu) + mu (beta/alpha - 1) = 0
///   b^2 = (3 alpha a^2 + 2 a + beta mu) / alpha.
struct RootResiduals {
  double vieta_sum;
  double vieta_pair_sum;
  double vieta_product;
  std::optional<double> pair_real_eq;
  std::optional<double> pair_imag_eq;

  double max_abs() const;
};

/// Value of the characteristic cubic at lambda (Horner).
std::complex<double> characteristic_value(const ModelParams& params, double mu,
                                          std::complex<double> lambda);

DepressedCubic depress(const ModelParams& params, double mu);
CriticalMasses critical_masses(const ModelParams& params);
DiscriminantReport discriminant(const ModelParams& params, double mu);
RootTriple solve_characteristic(const ModelParams& params, double mu);
RootKind classify_mode(const ModelParams& params, double mu);
RootResiduals verify_root_identities(const ModelParams& params, const RootTriple& triple);

}  // namespace mgt
