// Command-line surface of the mgt library: modal root reports, critical
// masses, spectrum assembly with figure data, per-mode metric construction,
// decay certification, and dominant-kind sweeps over alpha.
//
// Exit codes: 0 success, 2 validation error, 3 certificate violation.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mgt/cubic.hpp"
#include "mgt/evolve.hpp"
#include "mgt/metric.hpp"
#include "mgt/params.hpp"
#include "mgt/spectrum.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitCertificate = 3;

// All numeric output carries 17 significant digits so files round-trip
// losslessly.
std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct Options {
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> inline_mus;
  std::string modes_file;
  std::vector<double> dirichlet;  // a, length, count
  std::string space = "h1";
  std::string format = "json";
  std::string out_path;
  std::optional<double> epsilon;
  double t_end = 10.0;
  double dt = 0.01;
  std::uint64_t seed = 1;
  std::vector<double> sweep_alpha;  // lo, hi, steps
};

mgt::ModeSet parse_mode_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mgt::InvalidArgument("cannot open mode file '" + path + "'");
  std::vector<double> mus;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // Allow trailing CR and blank lines at the end of the file.
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t pos = 0;
    double value = 0.0;
    try {
      value = std::stod(line, &pos);
    } catch (const std::exception&) {
      throw mgt::InvalidArgument("mode file line " + std::to_string(lineno) +
                                 ": not a decimal number");
    }
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos != line.size()) {
      throw mgt::InvalidArgument("mode file line " + std::to_string(lineno) +
                                 ": trailing characters");
    }
    if (!(value > 0.0)) {
      throw mgt::InvalidArgument("mode file line " + std::to_string(lineno) +
                                 ": modes must be positive");
    }
    if (!mus.empty() && value < mus.back()) {
      throw mgt::InvalidArgument("mode file line " + std::to_string(lineno) +
                                 ": modes must be ascending");
    }
    mus.push_back(value);
  }
  if (mus.empty()) throw mgt::InvalidArgument("mode file '" + path + "' is empty");
  return mgt::ModeSet::explicit_list(std::move(mus));
}

mgt::ModeSet mode_set_from(const Options& opt) {
  const int sources = (!opt.inline_mus.empty() ? 1 : 0) + (!opt.modes_file.empty() ? 1 : 0) +
                      (!opt.dirichlet.empty() ? 1 : 0);
  if (sources != 1) {
    throw mgt::InvalidArgument("exactly one mode source required: --mu, --modes or --dirichlet");
  }
  if (!opt.inline_mus.empty()) return mgt::ModeSet::explicit_list(opt.inline_mus);
  if (!opt.modes_file.empty()) return parse_mode_file(opt.modes_file);
  if (opt.dirichlet.size() != 3) {
    throw mgt::InvalidArgument("--dirichlet needs a,length,count");
  }
  const double count = opt.dirichlet[2];
  if (count < 1.0 || count != std::floor(count)) {
    throw mgt::InvalidArgument("--dirichlet count must be a positive integer");
  }
  return mgt::ModeSet::dirichlet_1d(opt.dirichlet[0], opt.dirichlet[1],
                                    static_cast<int>(count));
}

void write_output(const Options& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.out_path, std::ios::binary);
  if (!out) throw mgt::InvalidArgument("cannot write to '" + opt.out_path + "'");
  out << text;
}

json triple_json(int mode, const mgt::RootTriple& t) {
  json j;
  j["mode"] = mode;
  j["mu"] = t.mu;
  j["re1"] = t.lambda1.real();
  j["im1"] = t.lambda1.imag();
  j["re2"] = t.lambda2.real();
  j["im2"] = t.lambda2.imag();
  j["re3"] = t.lambda3.real();
  j["im3"] = t.lambda3.imag();
  j["kind"] = mgt::to_string(t.kind);
  return j;
}

void triple_csv_row(std::ostringstream& os, int mode, const mgt::RootTriple& t) {
  os << mode << ',' << fmt(t.mu) << ',' << fmt(t.lambda1.real()) << ',' << fmt(t.lambda1.imag())
     << ',' << fmt(t.lambda2.real()) << ',' << fmt(t.lambda2.imag()) << ','
     << fmt(t.lambda3.real()) << ',' << fmt(t.lambda3.imag()) << ',' << mgt::to_string(t.kind)
     << '\n';
}

constexpr const char* kTripleCsvHeader = "mode,mu,re1,im1,re2,im2,re3,im3,kind\n";

int cmd_roots(const Options& opt) {
  const mgt::ModelParams params(opt.alpha, opt.beta);
  const mgt::ModeSet modes = mode_set_from(opt);
  if (opt.format == "csv") {
    std::ostringstream os;
    os << kTripleCsvHeader;
    for (std::size_t i = 0; i < modes.size(); ++i) {
      triple_csv_row(os, static_cast<int>(i) + 1, mgt::solve_characteristic(params, modes[i]));
    }
    write_output(opt, os.str());
  } else {
    json j;
    j["command"] = "roots";
    j["alpha"] = params.alpha;
    j["beta"] = params.beta;
    j["dissipative"] = params.dissipative();
    j["roots"] = json::array();
    for (std::size_t i = 0; i < modes.size(); ++i) {
      j["roots"].push_back(
          triple_json(static_cast<int>(i) + 1, mgt::solve_characteristic(params, modes[i])));
    }
    write_output(opt, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_critical(const Options& opt) {
  const mgt::ModelParams params(opt.alpha, opt.beta);
  const mgt::CriticalMasses cm = mgt::critical_masses(params);
  if (opt.format == "csv") {
    std::ostringstream os;
    os << "alpha,beta,c1,c2,m1,m2,regime\n";
    os << fmt(params.alpha) << ',' << fmt(params.beta) << ',' << fmt(cm.c1) << ',' << fmt(cm.c2)
       << ',' << (cm.m1 ? fmt(*cm.m1) : "") << ',' << (cm.m2 ? fmt(*cm.m2) : "") << ','
       << mgt::to_string(cm.regime) << '\n';
    write_output(opt, os.str());
  } else {
    json j;
    j["command"] = "critical";
    j["alpha"] = params.alpha;
    j["beta"] = params.beta;
    j["c1"] = cm.c1;
    j["c2"] = cm.c2;
    if (cm.m1) j["m1"] = *cm.m1;
    if (cm.m2) j["m2"] = *cm.m2;
    j["regime"] = mgt::to_string(cm.regime);
    write_output(opt, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_spectrum(const Options& opt) {
  const mgt::ModelParams params(opt.alpha, opt.beta);
  const mgt::ModeSet modes = mode_set_from(opt);
  const mgt::SpectrumReport rep = mgt::assemble_spectrum(params, modes);
  const double ref_pair = mgt::pair_real_limit(params);
  const double ref_essential = rep.essential_point;

  if (opt.format == "csv") {
    std::ostringstream os;
    os << "# alpha=" << fmt(params.alpha) << " beta=" << fmt(params.beta) << '\n';
    os << "# sigma_max=" << fmt(rep.sigma_max) << " dominant=" << mgt::to_string(rep.dominant);
    if (rep.dominant_mode) os << " dominant_mode=" << *rep.dominant_mode;
    os << " attained=" << (rep.attained ? 1 : 0) << " overdamped=" << (rep.overdamped ? 1 : 0)
       << '\n';
    os << "# ref_pair_limit=" << fmt(ref_pair) << " ref_essential=" << fmt(ref_essential)
       << " ordering_flag=" << mgt::to_string(rep.ordering_flag) << '\n';
    os << kTripleCsvHeader;
    for (std::size_t i = 0; i < rep.triples.size(); ++i) {
      triple_csv_row(os, static_cast<int>(i) + 1, rep.triples[i]);
    }
    write_output(opt, os.str());
  } else {
    json j;
    j["command"] = "spectrum";
    j["alpha"] = params.alpha;
    j["beta"] = params.beta;
    j["essential_point"] = rep.essential_point;
    j["sigma_max"] = rep.sigma_max;
    j["dominant"] = mgt::to_string(rep.dominant);
    if (rep.dominant_mode) j["dominant_mode"] = *rep.dominant_mode;
    j["attained"] = rep.attained;
    j["overdamped"] = rep.overdamped;
    j["ordering_flag"] = mgt::to_string(rep.ordering_flag);
    j["modes"] = json::array();
    for (double mu : modes.mus()) j["modes"].push_back(mu);
    j["eigenvalues"] = json::array();
    for (std::size_t i = 0; i < rep.triples.size(); ++i) {
      j["eigenvalues"].push_back(triple_json(static_cast<int>(i) + 1, rep.triples[i]));
    }
    json fig;
    fig["pair_limit_line"] = ref_pair;
    fig["essential_marker"] = ref_essential;
    fig["records"] = json::array();
    for (std::size_t i = 0; i < rep.triples.size(); ++i) {
      const mgt::RootTriple& t = rep.triples[i];
      for (int k = 0; k < 3; ++k) {
        json rec;
        rec["mode"] = static_cast<int>(i) + 1;
        rec["re"] = t.root(k).real();
        rec["im"] = t.root(k).imag();
        rec["kind"] = mgt::to_string(t.kind);
        fig["records"].push_back(rec);
      }
    }
    j["figure"] = fig;
    write_output(opt, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_metric(const Options& opt) {
  const mgt::ModelParams params(opt.alpha, opt.beta);
  const mgt::ModeSet modes = mode_set_from(opt);
  const mgt::Space space = mgt::space_from_string(opt.space);
  const mgt::GlobalMetric gm = mgt::global_metric(params, modes, space, opt.epsilon);

  double m_star = std::numeric_limits<double>::infinity();
  double m_cap = 0.0;
  json blocks = json::array();
  std::ostringstream csv;
  csv << "mode,mu,block,m,M,normality_residual,g11,g12,g13,g22,g23,g33,epsilon\n";
  for (std::size_t i = 0; i < gm.blocks.size(); ++i) {
    const double mu = gm.mus[i];
    const mgt::Mat3& g = gm.block_matrix(i);
    const bool defective = std::holds_alternative<mgt::DefectiveMetric>(gm.blocks[i]);
    json b;
    b["mode"] = static_cast<int>(i) + 1;
    b["mu"] = mu;
    b["block"] = defective ? "eps_adjusted" : "gram";
    b["gram"] = json::array();
    for (int r = 0; r < 3; ++r) {
      json row = json::array();
      for (int c = 0; c < 3; ++c) row.push_back(g(r, c));
      b["gram"].push_back(row);
    }
    double eps = 0.0;
    double resid = 0.0;
    double bm = 0.0, bM = 0.0;
    if (!defective) {
      resid = mgt::normality_residual(params, mu, g);
      const mgt::EquivalenceBounds eq =
          mgt::equivalence_bounds(g, mgt::natural_weight(space, mu));
      bm = eq.m;
      bM = eq.M;
      m_star = std::min(m_star, bm);
      m_cap = std::max(m_cap, bM);
      b["normality_residual"] = resid;
      b["m"] = bm;
      b["M"] = bM;
    } else {
      const auto& dm = std::get<mgt::DefectiveMetric>(gm.blocks[i]);
      eps = dm.epsilon;
      b["epsilon"] = eps;
      b["sigma_block"] = dm.sigma_block;
    }
    blocks.push_back(b);
    csv << (i + 1) << ',' << fmt(mu) << ',' << (defective ? "eps_adjusted" : "gram") << ','
        << fmt(bm) << ',' << fmt(bM) << ',' << fmt(resid) << ',' << fmt(g(0, 0)) << ','
        << fmt(g(0, 1)) << ',' << fmt(g(0, 2)) << ',' << fmt(g(1, 1)) << ',' << fmt(g(1, 2))
        << ',' << fmt(g(2, 2)) << ',' << fmt(eps) << '\n';
  }

  if (opt.format == "csv") {
    write_output(opt, csv.str());
  } else {
    json j;
    j["command"] = "metric";
    j["alpha"] = params.alpha;
    j["beta"] = params.beta;
    j["space"] = mgt::to_string(gm.space.requested);
    j["resolved_space"] = mgt::to_string(gm.space.resolved);
    j["via_isometry"] = gm.space.via_isometry;
    j["adjusted"] = gm.adjusted;
    if (gm.adjusted) j["epsilon"] = gm.epsilon;
    if (m_cap > 0.0) {
      j["m_star"] = m_star;
      j["M_star"] = m_cap;
    }
    j["blocks"] = blocks;
    write_output(opt, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_decay(const Options& opt) {
  const mgt::ModelParams params(opt.alpha, opt.beta);
  const mgt::ModeSet modes = mode_set_from(opt);
  const mgt::Space space = mgt::space_from_string(opt.space);
  const mgt::GlobalMetric gm = mgt::global_metric(params, modes, space, opt.epsilon);

  // Real random initial data (real data corresponds to PDE solutions).
  std::mt19937_64 rng(opt.seed);
  auto unit = [&rng]() { return 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0; };
  std::vector<mgt::ModalIC> ics;
  ics.reserve(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    ics.push_back({unit(), unit(), unit()});
  }

  if (!(opt.dt > 0.0) || !(opt.t_end > 0.0)) {
    throw mgt::InvalidArgument("--t-end and --dt must be positive");
  }
  const int n = std::max(1, static_cast<int>(std::llround(opt.t_end / opt.dt)));
  std::vector<double> times;
  times.reserve(n + 1);
  for (int i = 0; i <= n; ++i) times.push_back(opt.t_end * i / n);

  const mgt::DecayCertificate cert = mgt::decay_certificate(params, modes, ics, gm, times);
  const bool violated = cert.envelope_margin < -1e-9 * cert.initial_norm;

  if (opt.format == "csv") {
    std::ostringstream os;
    os << "# alpha=" << fmt(params.alpha) << " beta=" << fmt(params.beta)
       << " space=" << mgt::to_string(gm.space.requested) << " seed=" << opt.seed << '\n';
    os << "# sigma_max=" << fmt(cert.sigma_max) << " initial_norm=" << fmt(cert.initial_norm)
       << " envelope_margin=" << fmt(cert.envelope_margin) << '\n';
    os << "t,norm,envelope\n";
    for (std::size_t i = 0; i < cert.times.size(); ++i) {
      os << fmt(cert.times[i]) << ',' << fmt(cert.norms[i]) << ','
         << fmt(std::exp(cert.sigma_max * cert.times[i]) * cert.initial_norm) << '\n';
    }
    write_output(opt, os.str());
  } else {
    json j;
    j["command"] = "decay";
    j["alpha"] = params.alpha;
    j["beta"] = params.beta;
    j["space"] = mgt::to_string(gm.space.requested);
    j["adjusted_metric"] = gm.adjusted;
    j["seed"] = opt.seed;
    j["sigma_max"] = cert.sigma_max;
    j["initial_norm"] = cert.initial_norm;
    j["envelope_margin"] = cert.envelope_margin;
    if (cert.expansion_residual) j["expansion_residual"] = *cert.expansion_residual;
    j["certificate_holds"] = !violated;
    j["times"] = json::array();
    for (double t : cert.times) j["times"].push_back(t);
    j["norms"] = json::array();
    for (double v : cert.norms) j["norms"].push_back(v);
    write_output(opt, j.dump(2) + "\n");
  }
  if (violated) {
    std::cerr << "certificate violation: envelope margin " << fmt(cert.envelope_margin)
              << " below tolerance\n";
    return kExitCertificate;
  }
  return 0;
}

int cmd_sweep(const Options& opt) {
  if (opt.sweep_alpha.size() != 3) {
    throw mgt::InvalidArgument("--sweep-alpha needs lo,hi,steps");
  }
  const double lo = opt.sweep_alpha[0];
  const double hi = opt.sweep_alpha[1];
  const double steps_d = opt.sweep_alpha[2];
  if (!(lo > 0.0) || !(hi >= lo) || steps_d < 1.0 || steps_d != std::floor(steps_d)) {
    throw mgt::InvalidArgument("--sweep-alpha requires 0 < lo <= hi and integer steps >= 1");
  }
  if (!(hi < opt.beta)) {
    throw mgt::InvalidArgument("sweep range must stay dissipative: hi < beta");
  }
  const int steps = static_cast<int>(steps_d);
  const mgt::ModeSet modes = mode_set_from(opt);

  json rows = json::array();
  std::ostringstream csv;
  csv << "alpha,sigma_max,dominant,dominant_mode,first_mode_kind\n";
  for (int i = 0; i < steps; ++i) {
    const double alpha = steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1);
    const mgt::ModelParams params(alpha, opt.beta);
    const mgt::SpectrumReport rep = mgt::assemble_spectrum(params, modes);
    const char* first_kind = mgt::to_string(rep.triples.front().kind);
    json r;
    r["alpha"] = alpha;
    r["sigma_max"] = rep.sigma_max;
    r["dominant"] = mgt::to_string(rep.dominant);
    if (rep.dominant_mode) r["dominant_mode"] = *rep.dominant_mode;
    r["first_mode_kind"] = first_kind;
    rows.push_back(r);
    csv << fmt(alpha) << ',' << fmt(rep.sigma_max) << ',' << mgt::to_string(rep.dominant) << ',';
    if (rep.dominant_mode) csv << *rep.dominant_mode;
    csv << ',' << first_kind << '\n';
  }

  if (opt.format == "csv") {
    write_output(opt, csv.str());
  } else {
    json j;
    j["command"] = "sweep";
    j["beta"] = opt.beta;
    j["rows"] = rows;
    write_output(opt, j.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral analysis of the third-order dissipative wave equation "
               "(u + alpha u_t)_tt + L(u + beta u_t) = 0"};
  app.require_subcommand(1);

  Options opt;
  std::string command;
  for (const char* name : {"roots", "critical", "spectrum", "metric", "decay", "sweep"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--alpha", opt.alpha, "damping coefficient alpha > 0");
    sub->add_option("--beta", opt.beta, "damping coefficient beta > 0")->required();
    sub->add_option("--mu", opt.inline_mus, "inline mode list (ascending positive)")
        ->delimiter(',');
    sub->add_option("--modes", opt.modes_file, "mode file, one positive decimal per line");
    sub->add_option("--dirichlet", opt.dirichlet,
                    "1-D Dirichlet modes: wave speed a, length, count")
        ->delimiter(',')
        ->expected(3);
    sub->add_option("--space", opt.space, "state space h1|h2|h3|h4 (default h1)");
    sub->add_option("--format", opt.format, "output format json|csv (default json)");
    sub->add_option("--out", opt.out_path, "output path (stdout if omitted)");
    sub->add_option("--epsilon", opt.epsilon, "epsilon override for defective blocks");
    sub->add_option("--t-end", opt.t_end, "decay: end of the time grid (default 10)");
    sub->add_option("--dt", opt.dt, "decay: time grid spacing (default 0.01)");
    sub->add_option("--seed", opt.seed, "decay: RNG seed for random initial data (default 1)");
    sub->add_option("--sweep-alpha", opt.sweep_alpha, "sweep: alpha grid lo,hi,steps")
        ->delimiter(',')
        ->expected(3);
    sub->callback([&command, name]() { command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (opt.format != "json" && opt.format != "csv") {
      throw mgt::InvalidArgument("--format must be json or csv");
    }
    if (command == "roots") return cmd_roots(opt);
    if (command == "critical") return cmd_critical(opt);
    if (command == "spectrum") return cmd_spectrum(opt);
    if (command == "metric") return cmd_metric(opt);
    if (command == "decay") return cmd_decay(opt);
    if (command == "sweep") return cmd_sweep(opt);
    throw mgt::InvalidArgument("unknown command");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}
