#pragma once

#include <stdexcept>
#include <string>

namespace mgt {

/// Invalid user input: non-positive parameters, malformed mode lists, bad grids.
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by operations that require the dissipative regime alpha < beta.
class NonDissipative : public std::domain_error {
public:
  explicit NonDissipative(double alpha, double beta)
      : std::domain_error("operation requires alpha < beta (got alpha=" + std::to_string(alpha) +
                          ", beta=" + std::to_string(beta) + "); solutions need not decay otherwise") {}
};

/// Raised when a construction needs a basis of eigenvectors but the mode is
/// defective: the repeated eigenvalue has geometric multiplicity one, so no
/// inner product makes the companion block normal.
class DefectiveMode : public std::domain_error {
public:
  explicit DefectiveMode(double mu)
      : std::domain_error("mode mu=" + std::to_string(mu) +
                          " is defective (repeated eigenvalue, geometric multiplicity one); "
                          "no inner product makes this block normal"),
        mu_(mu) {}
  double mu() const { return mu_; }

private:
  double mu_;
};

}  // namespace mgt
