#pragma once

#include "mgt/errors.hpp"

namespace mgt {

/// Damping pair (alpha, beta) of the third-order dissipative wave equation
/// (u + alpha*u_t)_tt + L(u + beta*u_t) = 0.  Both coefficients carry time
/// units and must be strictly positive.  The regime alpha < beta is the
/// dissipative one; root solving and classification work for any positive
/// pair, but decay-related operations refuse non-dissipative parameters.
struct ModelParams {
  double alpha;
  double beta;

  ModelParams(double alpha_, double beta_) : alpha(alpha_), beta(beta_) {
    if (!(alpha > 0.0) || !(beta > 0.0)) {
      throw InvalidArgument("ModelParams requires alpha > 0 and beta > 0");
    }
  }

  double ratio() const { return alpha / beta; }
  bool dissipative() const { return alpha < beta; }

  void require_dissipative() const {
    if (!dissipative()) throw NonDissipative(alpha, beta);
  }
};

}  // namespace mgt
