#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mgt/cubic.hpp"
#include "mgt/params.hpp"

namespace mgt {

/// Ascending positive eigenvalues mu_n of the spatial operator, either given
/// explicitly or materialized from a 1-D Dirichlet Laplacian
/// mu_n = (a n pi / length)^2.
class ModeSet {
public:
  enum class Provider { ExplicitList, Dirichlet1D };

  static ModeSet explicit_list(std::vector<double> mus);
  static ModeSet dirichlet_1d(double wave_speed, double length, int count);

  const std::vector<double>& mus() const { return mus_; }
  std::size_t size() const { return mus_.size(); }
  bool empty() const { return mus_.empty(); }
  double operator[](std::size_t i) const { return mus_[i]; }

  Provider provider() const { return provider_; }
  /// Dirichlet sets can be extended to higher modes on demand.
  bool extendable() const { return provider_ == Provider::Dirichlet1D; }
  /// mu_n for an arbitrary index n >= 1 of an extendable set.
  double dirichlet_mu(int n) const;

  double wave_speed() const { return wave_speed_; }
  double length() const { return length_; }

private:
  ModeSet() = default;
  Provider provider_ = Provider::ExplicitList;
  std::vector<double> mus_;
  double wave_speed_ = 0.0;
  double length_ = 0.0;
};

inline ModeSet modes_dirichlet_1d(double wave_speed, double length, int count) {
  return ModeSet::dirichlet_1d(wave_speed, length, count);
}

enum class DominantKind { EssentialPoint, ConjugatePair, Both };
enum class OrderingFlag { PairLimitBelow, Equal, Above };

const char* to_string(DominantKind k);
const char* to_string(OrderingFlag f);

/// The assembled spectrum of the generator over a finite mode set: the modal
/// root triples, the essential point -1/beta, the dominant part, and
/// sigma_max (the decay exponent certified downstream).
struct SpectrumReport {
  ModelParams params;
  std::vector<RootTriple> triples;
  double essential_point;           // -1/beta
  double sigma_max;
  DominantKind dominant;
  std::optional<int> dominant_mode;  // 1-based, set when a conjugate pair dominates
  bool attained;                     // sigma_max realized by an eigenvalue
  bool overdamped;                   // dominant == EssentialPoint
  OrderingFlag ordering_flag;        // -(1/2)(1/alpha - 1/beta) vs -1/beta
};

SpectrumReport assemble_spectrum(const ModelParams& params, const ModeSet& modes);
double sigma_max(const ModelParams& params, const ModeSet& modes);

/// Distance of each mode's roots from their large-mu limits:
///   |lambda1 + 1/beta|, |Re lambda2 + (1/2)(1/alpha - 1/beta)|,
///   |Im lambda2 / sqrt(mu) - sqrt(beta/alpha)|.
/// Modes inside [m1, m2] carry no conjugate pair and are skipped.
struct AsymptoticRow {
  int n;  // 1-based mode index
  double mu;
  bool skipped;
  double dev_real_root;
  double dev_pair_real;
  double dev_pair_imag;
};

struct AsymptoticTable {
  std::vector<AsymptoticRow> rows;
  bool decreasing;                    // all three deviations strictly decrease
  std::optional<int> first_violation; // 1-based index of the first non-decrease
};

AsymptoticTable asymptotic_check(const ModelParams& params, const ModeSet& modes);

/// Checks that Re(lambda2) strictly decreases in mu over all mode pairs with
/// both modes outside [m1, m2].
struct MonotonicityResult {
  bool ok;
  std::optional<std::pair<int, int>> first_violation;  // 1-based mode indices
};

MonotonicityResult monotonicity_check(const ModelParams& params, const ModeSet& modes);

/// Limit of the nonreal eigenvalues' real parts, -(1/2)(1/alpha - 1/beta).
inline double pair_real_limit(const ModelParams& p) {
  return -0.5 * (1.0 / p.alpha - 1.0 / p.beta);
}

}  // namespace mgt
