#include "mgt/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mgt {

namespace {

// Tolerance for deciding that the leading pair sits exactly on the essential
// point (the "Both" dominant case, an exact-parameter coincidence).
constexpr double kBothRel = 1e-12;

bool inside_mass_window(const CriticalMasses& cm, double mu) {
  return cm.m1 && cm.m2 && mu >= *cm.m1 && mu <= *cm.m2;
}

}  // namespace

const char* to_string(DominantKind k) {
  switch (k) {
    case DominantKind::EssentialPoint: return "essential_point";
    case DominantKind::ConjugatePair: return "conjugate_pair";
    case DominantKind::Both: return "both";
  }
  return "?";
}

const char* to_string(OrderingFlag f) {
  switch (f) {
    case OrderingFlag::PairLimitBelow: return "pair_limit_below";
    case OrderingFlag::Equal: return "equal";
    case OrderingFlag::Above: return "above";
  }
  return "?";
}

ModeSet ModeSet::explicit_list(std::vector<double> mus) {
  if (mus.empty()) throw InvalidArgument("mode list must be non-empty");
  for (std::size_t i = 0; i < mus.size(); ++i) {
    if (!(mus[i] > 0.0)) {
      throw InvalidArgument("mode " + std::to_string(i + 1) + " is not positive");
    }
    if (i > 0 && mus[i] < mus[i - 1]) {
      throw InvalidArgument("mode " + std::to_string(i + 1) + " breaks ascending order");
    }
  }
  ModeSet m;
  m.provider_ = Provider::ExplicitList;
  m.mus_ = std::move(mus);
  return m;
}

ModeSet ModeSet::dirichlet_1d(double wave_speed, double length, int count) {
  if (!(wave_speed > 0.0) || !(length > 0.0)) {
    throw InvalidArgument("Dirichlet mode set requires positive wave speed and length");
  }
  if (count < 1) throw InvalidArgument("Dirichlet mode count must be at least 1");
  ModeSet m;
  m.provider_ = Provider::Dirichlet1D;
  m.wave_speed_ = wave_speed;
  m.length_ = length;
  m.mus_.reserve(static_cast<std::size_t>(count));
  for (int n = 1; n <= count; ++n) m.mus_.push_back(m.dirichlet_mu(n));
  return m;
}

double ModeSet::dirichlet_mu(int n) const {
  const double k = wave_speed_ * static_cast<double>(n) * M_PI / length_;
  return k * k;
}

SpectrumReport assemble_spectrum(const ModelParams& params, const ModeSet& modes) {
  params.require_dissipative();
  if (modes.empty()) throw InvalidArgument("mode set must be non-empty");

  SpectrumReport rep{params, {}, -1.0 / params.beta, 0.0, DominantKind::EssentialPoint,
                     std::nullopt, false, false, OrderingFlag::Equal};
  rep.triples.reserve(modes.size());

  double best_pair_re = -std::numeric_limits<double>::infinity();
  int best_mode = 0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    RootTriple t = solve_characteristic(params, modes[i]);
    if (t.kind == RootKind::OneRealPlusPair && *t.pair_real > best_pair_re) {
      best_pair_re = *t.pair_real;
      best_mode = static_cast<int>(i) + 1;
    }
    rep.triples.push_back(std::move(t));
  }

  const double ess = rep.essential_point;
  const double both_tol = kBothRel * std::max(1.0, std::abs(ess));
  if (best_mode == 0 || best_pair_re < ess - both_tol) {
    rep.dominant = DominantKind::EssentialPoint;
    rep.sigma_max = ess;
    rep.attained = false;
  } else if (std::abs(best_pair_re - ess) <= both_tol) {
    rep.dominant = DominantKind::Both;
    rep.dominant_mode = best_mode;
    rep.sigma_max = best_pair_re;
    rep.attained = true;
  } else {
    rep.dominant = DominantKind::ConjugatePair;
    rep.dominant_mode = best_mode;
    rep.sigma_max = best_pair_re;
    rep.attained = true;
  }
  rep.overdamped = rep.dominant == DominantKind::EssentialPoint;

  // -(1/2)(1/alpha - 1/beta) vs -1/beta reduces to 3 alpha vs beta.
  const double three_alpha = 3.0 * params.alpha;
  rep.ordering_flag = three_alpha < params.beta ? OrderingFlag::PairLimitBelow
                      : (three_alpha == params.beta ? OrderingFlag::Equal : OrderingFlag::Above);
  return rep;
}

double sigma_max(const ModelParams& params, const ModeSet& modes) {
  return assemble_spectrum(params, modes).sigma_max;
}

AsymptoticTable asymptotic_check(const ModelParams& params, const ModeSet& modes) {
  params.require_dissipative();
  if (modes.empty()) throw InvalidArgument("mode set must be non-empty");
  const CriticalMasses cm = critical_masses(params);
  const double re_limit = pair_real_limit(params);
  const double im_slope = std::sqrt(params.beta / params.alpha);

  AsymptoticTable table;
  table.rows.reserve(modes.size());
  table.decreasing = true;

  const AsymptoticRow* prev = nullptr;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const double mu = modes[i];
    AsymptoticRow row{static_cast<int>(i) + 1, mu, false, 0.0, 0.0, 0.0};
    if (inside_mass_window(cm, mu)) {
      row.skipped = true;
    } else {
      const RootTriple t = solve_characteristic(params, mu);
      if (t.kind != RootKind::OneRealPlusPair) {
        row.skipped = true;  // tolerance-zero boundary cases
      } else {
        row.dev_real_root = std::abs(t.lambda1.real() + 1.0 / params.beta);
        row.dev_pair_real = std::abs(*t.pair_real - re_limit);
        row.dev_pair_imag = std::abs(*t.pair_imag / std::sqrt(mu) - im_slope);
      }
    }
    table.rows.push_back(row);
    if (!row.skipped) {
      if (prev) {
        const bool dec = row.dev_real_root < prev->dev_real_root &&
                         row.dev_pair_real < prev->dev_pair_real &&
                         row.dev_pair_imag < prev->dev_pair_imag;
        if (!dec && table.decreasing) {
          table.decreasing = false;
          table.first_violation = row.n;
        }
      }
      prev = &table.rows.back();
    }
  }
  return table;
}

MonotonicityResult monotonicity_check(const ModelParams& params, const ModeSet& modes) {
  params.require_dissipative();
  const CriticalMasses cm = critical_masses(params);

  // Re(lambda2) is strictly decreasing, so consecutive comparisons among the
  // participating modes cover every pair.
  int prev_n = 0;
  double prev_re = 0.0;
  double prev_mu = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const double mu = modes[i];
    if (inside_mass_window(cm, mu)) continue;
    const RootTriple t = solve_characteristic(params, mu);
    if (t.kind != RootKind::OneRealPlusPair) continue;
    const double re = *t.pair_real;
    if (prev_n > 0 && mu > prev_mu) {
      if (!(re < prev_re)) {
        return {false, std::make_pair(prev_n, static_cast<int>(i) + 1)};
      }
    }
    prev_n = static_cast<int>(i) + 1;
    prev_re = re;
    prev_mu = mu;
  }
  return {true, std::nullopt};
}

}  // namespace mgt
