#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "mgt/cubic.hpp"
#include "mgt/metric.hpp"
#include "mgt/params.hpp"
#include "mgt/spectrum.hpp"

namespace mgt {

/// Initial data of one modal amplitude: z, z', z'' at t = 0.  The associated
/// state vector is (u, v, w) = (z0, z1, z2).  Complex data is allowed at the
/// library level (modal analysis); real data corresponds to PDE solutions.
struct ModalIC {
  Complex z0;
  Complex z1;
  Complex z2;
};

/// Closed-form representation of one modal solution.  Interpretation of
/// (lambda, w) by kind:
///  - distinct roots:  z(t) = w0 e^(l0 t) + w1 e^(l1 t) + w2 e^(l2 t)
///  - DoubleReal:      z(t) = (w0 + w1 t) e^(ld t) + w2 e^(ls t),
///                     lambda = {ld, ld, ls}
///  - TripleReal:      z(t) = (w0 + w1 t + w2 t^2) e^(l t)
struct ModalCoefficients {
  RootKind kind;
  std::array<Complex, 3> lambda;
  std::array<Complex, 3> w;
  double condition;  // Frobenius condition estimate of the coefficient solve
};

struct ModalState {
  Complex z;
  Complex dz;
  Complex d2z;

  CVec3 vec() const { return {z, dz, d2z}; }
};

ModalCoefficients modal_coefficients(const RootTriple& triple, const ModalIC& ic);
ModalState modal_state(const ModalCoefficients& coeffs, double t);

/// Uniformly sampled modal trajectory (step = times[1] - times[0]).
struct Trajectory {
  std::vector<double> times;
  std::vector<ModalState> states;
};

/// Classical fourth-order integration of
///   alpha z''' + z'' + beta mu z' + mu z = 0
/// as a first-order 3-system; the independent check against the closed form.
/// Requires dt * max|lambda| < 0.1.
Trajectory rk4_oracle(const ModelParams& params, double mu, const ModalIC& ic, double t_end,
                      double dt);

/// Sample the closed-form solution on a uniform grid (convenience for the
/// energy checks).
Trajectory sample_exact(const ModalCoefficients& coeffs, double t_end, double dt);

struct OptimalityWitness {
  int mode;        // 1-based
  int root_index;  // 1-based eigenvalue index within the mode
  double rate;     // Re(lambda) of the witness eigen-solution
};

/// Decay certificate for a multi-mode trajectory in a certified metric:
/// sampled norms, the envelope e^(sigma_max t) |U(0)|, and the worst margin.
struct DecayCertificate {
  double sigma_max;
  double initial_norm;
  std::vector<double> times;
  std::vector<double> norms;
  double envelope_margin;  // min_t ( e^(sigma_max t) |U(0)| - |U(t)| )
  /// Max relative deviation between the blockwise norm and the coefficient
  /// sum  sum |d_j^n|^2 e^(2 Re lambda_j^n t); only set for a pure normality
  /// metric (no defective blocks).
  std::optional<double> expansion_residual;
  std::optional<OptimalityWitness> optimality_witness;
};

DecayCertificate decay_certificate(const ModelParams& params, const ModeSet& modes,
                                   const std::vector<ModalIC>& ics, const GlobalMetric& metric,
                                   const std::vector<double>& times);

/// A mode and eigenvalue index whose pure eigen-solution outgrows e^(omega t),
/// witnessing that no rate below sigma_max bounds all solutions.  Extends
/// Dirichlet mode sets as needed; explicit lists may yield nothing.
std::optional<OptimalityWitness> optimality_witness(const ModelParams& params,
                                                    const ModeSet& modes, double omega);

/// Max residual of centered-difference d/dt E against -(beta-alpha) mu |v|^2
/// along a sampled trajectory, with E = (1/2) * (energy quadratic form).
double energy_derivative_check(const ModelParams& params, double mu,
                                  const Trajectory& trajectory);

}  // namespace mgt
