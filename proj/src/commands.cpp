#include "blochvar/commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

#include "blochvar/eigensolve.hpp"
#include "blochvar/floquet.hpp"
#include "blochvar/inverse.hpp"
#include "blochvar/potential_io.hpp"
#include "blochvar/sampling.hpp"
#include "blochvar/spectrum.hpp"
#include "blochvar/variety.hpp"

namespace bloch::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  double tolerance = 1e-8;
  std::string report_path;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

IdentityTestOptions identity_options(const Globals& g) {
  IdentityTestOptions o;
  o.seed = g.seed;
  o.tolerance = g.tolerance;
  return o;
}

std::string interval_text(const Interval& i, char open, char close) {
  std::ostringstream os;
  os << open << i.lo << ", " << i.hi << close;
  return os.str();
}

std::string cplx_text(cplx c) {
  std::ostringstream os;
  os << c.real() << (c.imag() < 0 ? " - " : " + ") << std::abs(c.imag()) << "i";
  return os.str();
}

// ---------------------------------------------------------------- verify suites

struct SuiteLog {
  std::ostream& out;
  bool ok = true;
  void check(bool pass, const std::string& name, const std::string& detail) {
    ok = ok && pass;
    out << (pass ? "[PASS] " : "[FAIL] ") << name << ": " << detail << '\n';
  }
};

std::string sci(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << x;
  return os.str();
}

bool suite_lemma21(const Globals& g, std::ostream& out) {
  SuiteLog log{out};
  std::mt19937_64 rng(g.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& periods : std::vector<std::vector<int>>{{2}, {3}, {2, 2}}) {
    const LatticeConfig cfg(periods);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const auto v = random_complex_potential(cfg, rng);
      std::vector<cplx> zs(cfg.dim());
      for (auto& z : zs) z = std::polar(0.5 + 1.5 * unit(rng), kTwoPi * unit(rng));
      const MultiplierPoint z(zs);
      const cplx lambda = std::polar(3.0 * unit(rng), kTwoPi * unit(rng));
      const cplx fourier = substituted_charpoly_eval(v, z, lambda);
      const cplx direct = charpoly_eval(assemble_direct(v, quasimomentum_from_multiplier(cfg, z)), lambda);
      worst = std::max(worst, std::abs(fourier - direct) / std::max(1.0, std::abs(direct)));
    }
    log.check(worst < 1e-9, "conjugation q=" + to_string(cfg), "200 samples, max relative mismatch " + sci(worst));
  }
  return log.ok;
}

bool suite_gershgorin(const Globals& g, std::ostream& out) {
  SuiteLog log{out};
  std::mt19937_64 rng(g.seed);
  for (const auto& periods : std::vector<std::vector<int>>{{2}, {3}, {2, 2}, {2, 3}}) {
    const LatticeConfig cfg(periods);
    int disjoint = 0, simple = 0, total = 0;
    for (int t = 0; t < 50; ++t) {
      const auto v = random_complex_potential(cfg, rng);
      const auto omega = OmegaDomain::for_potential(v);
      for (int s = 0; s < 10; ++s) {
        const auto z = omega.sample(rng);
        const auto rep = gershgorin_check(assemble_fourier(v, z).entries);
        const auto sep = separation_lower_bound(cfg, z, omega);
        ++total;
        if (rep.disjoint && rep.one_per_disc.value_or(false)) ++disjoint;
        double min_gap = std::numeric_limits<double>::infinity();
        const auto& ev = rep.spectrum.values;
        for (std::size_t a = 0; a < ev.size(); ++a) {
          for (std::size_t b = a + 1; b < ev.size(); ++b) min_gap = std::min(min_gap, std::abs(ev[a] - ev[b]));
        }
        if (sep.meets_bound && min_gap > 0.4 * sep.min_separation) ++simple;
      }
    }
    log.check(disjoint == total && simple == total, "gershgorin q=" + to_string(cfg),
              std::to_string(disjoint) + "/" + std::to_string(total) + " disjoint, " + std::to_string(simple) + "/" +
                  std::to_string(total) + " simple");
  }
  return log.ok;
}

bool suite_asymptotics(const Globals& g, std::ostream& out) {
  SuiteLog log{out};
  std::mt19937_64 rng(g.seed);
  for (const auto& periods : std::vector<std::vector<int>>{{2}, {3}, {2, 2}, {2, 3}}) {
    const LatticeConfig cfg(periods);
    bool ok = true;
    double worst_ratio = 0.0;
    for (int t = 0; t < 20; ++t) {
      const auto v = random_complex_potential(cfg, rng);
      const auto omega = OmegaDomain::for_potential(v);
      std::vector<MultiplierPoint> samples;
      for (int s = 0; s < 5; ++s) samples.push_back(omega.sample(rng));
      try {
        const auto rep = asymptotics_check(v, samples, omega);
        ok = ok && rep.passed();
        worst_ratio = std::max(worst_ratio, rep.max_residual / rep.residual_bound);
      } catch (const NumericalError&) {
        ok = false;
      }
    }
    log.check(ok, "asymptotics q=" + to_string(cfg), "max residual/bound " + sci(worst_ratio));
  }
  return log.ok;
}

bool suite_borg1d(const Globals& g, std::ostream& out) {
  SuiteLog log{out};
  std::mt19937_64 rng(g.seed);
  for (int q = 2; q <= 6; ++q) {
    const LatticeConfig cfg({q});
    int gapped = 0;
    for (int t = 0; t < 10; ++t) {
      const auto v = random_nonconstant_real_potential(cfg, rng, 0.1, 2.0);
      if (borg_check_1d(v).gapped) ++gapped;
    }
    log.check(gapped == 10, "nonconstant q=" + std::to_string(q), std::to_string(gapped) + "/10 gapped");
    const auto c = borg_check_1d(Potential::constant(cfg, 0.7));
    log.check(!c.gapped, "constant q=" + std::to_string(q), c.gapped ? "spurious gap" : "no gaps");
  }
  return log.ok;
}

bool suite_counting(const Globals& g, const std::vector<int>& periods, std::ostream& out) {
  SuiteLog log{out};
  const LatticeConfig cfg(periods);
  InverseOptions inv;
  inv.seed = g.seed;
  const auto rep = enumerate_Xe(cfg, inv, identity_options(g));
  bool members_ok = true;
  for (const auto& c : rep.classes) members_ok = members_ok && c.members_isospectral;
  const bool pass = rep.complete && rep.class_count == cfg.cell_size() && rep.within_bound() && members_ok;
  std::ostringstream detail;
  detail << "classes=" << rep.class_count << ", solutions=" << rep.total_solutions << ", bound=" << rep.bound;
  log.check(pass, "counting q=" + to_string(cfg), detail.str());
  for (const auto& [a, b] : rep.coincidences) {
    out << "  coincidence: l=" << to_string(a) << " and l=" << to_string(b) << " are isospectral\n";
  }
  return log.ok;
}

// ---------------------------------------------------------------- commands

struct Outcome {
  int code = kSuccess;
  json results;
  std::string inputs;  // bytes that identify the inputs, for the digest
};

Outcome cmd_bands(const Globals&, const std::string& file, std::vector<int> resolution, const std::string& out_path,
                  std::ostream& out) {
  const auto v = read_potential_file(file);
  if (!v.is_real()) throw std::invalid_argument("bands needs a real potential; " + file + " has complex values");
  if (resolution.empty()) resolution = default_resolution(v.config().dim());
  if (resolution.size() == 1 && v.config().dim() > 1) resolution.assign(v.config().dim(), resolution[0]);
  const auto bs = compute_bands(v, resolution);
  if (!out_path.empty()) {
    std::ofstream csv(out_path);
    if (!csv) throw FormatError("cannot write " + out_path);
    write_band_csv(csv, bs);
  }
  const auto spec = spectrum_union(bs);
  const auto gaps = find_gaps(bs);

  Outcome o;
  o.inputs = slurp(file);
  o.results["spectrum"] = json::array();
  out << "spectrum:";
  for (std::size_t i = 0; i < spec.size(); ++i) {
    out << (i ? " U " : " ") << interval_text(spec[i], '[', ']');
    o.results["spectrum"].push_back({spec[i].lo, spec[i].hi});
  }
  out << '\n';
  o.results["gaps"] = json::array();
  if (gaps.gaps.empty()) out << "gaps: none\n";
  for (const auto& gap : gaps.gaps) {
    out << "gap " << interval_text(gap, '(', ')') << ", width " << std::fixed << std::setprecision(3) << gap.width()
        << std::defaultfloat << std::setprecision(6) << '\n';
    o.results["gaps"].push_back({gap.lo, gap.hi});
  }
  o.results["unresolved"] = json::array();
  for (const auto& gap : gaps.unresolved) {
    out << "unresolved gap " << interval_text(gap, '(', ')') << ", width " << sci(gap.width()) << '\n';
    o.results["unresolved"].push_back({gap.lo, gap.hi});
  }
  o.results["resolution"] = resolution;
  return o;
}

Outcome cmd_entire_graph(const Globals& g, const std::string& file, std::ostream& out) {
  const auto v = read_potential_file(file);
  const auto cert = entire_graph_test(v, identity_options(g));
  out << "holds: " << (cert.holds ? "true" : "false") << '\n';
  out << (cert.holds ? "l: " : "closest l: ") << to_string(cert.l) << '\n';
  out << "K: " << cplx_text(cert.K) << '\n';
  out << "residual: " << sci(cert.residual) << '\n';
  Outcome o;
  o.inputs = slurp(file);
  o.results = certificate_to_json(cert);
  o.code = cert.holds ? kSuccess : kNegative;
  return o;
}

Outcome cmd_isospectral(const Globals& g, const std::string& a, const std::string& b, std::ostream& out) {
  const auto va = read_potential_file(a);
  const auto vb = read_potential_file(b);
  if (!(va.config() == vb.config())) {
    throw std::invalid_argument("period mismatch: " + to_string(va.config()) + " vs " + to_string(vb.config()));
  }
  const auto r = floquet_isospectral(va, vb, identity_options(g));
  out << "isospectral: " << (r.isospectral ? "true" : "false") << '\n';
  out << "residual: " << sci(r.residual) << '\n';
  Outcome o;
  o.inputs = slurp(a) + '\0' + slurp(b);
  o.results = {{"isospectral", r.isospectral}, {"residual", r.residual}};
  o.code = r.isospectral ? kSuccess : kNegative;
  return o;
}

Outcome cmd_construct_exotic(const Globals& g, const std::vector<int>& periods, const std::vector<int>& l,
                             const std::string& out_dir, std::ostream& out) {
  if (periods.empty()) throw std::invalid_argument("--periods is required");
  if (l.size() != periods.size()) throw std::invalid_argument("--l needs one entry per period");
  const LatticeConfig cfg(periods);
  for (std::size_t j = 0; j < periods.size(); ++j) {
    if (l[j] < 0 || l[j] >= periods[j]) throw std::invalid_argument("--l entries must satisfy 0 <= l_j < q_j");
  }
  InverseOptions inv;
  inv.seed = g.seed;
  const auto check = identity_options(g);

  std::vector<ExoticFamily> families;
  for (std::size_t j = 0; j < periods.size(); ++j) families.push_back(construct_exotic_1d(periods[j], l[j], inv, check));

  std::vector<Potential> lifts;
  std::vector<std::size_t> pick(periods.size(), 0);
  for (;;) {
    std::vector<ExoticSelection> sel;
    for (std::size_t j = 0; j < periods.size(); ++j) sel.push_back({families[j].solutions[pick[j]], l[j]});
    lifts.push_back(lift_separable(sel, check).v);
    bool advanced = false;
    for (std::size_t j = periods.size(); j-- > 0;) {
      if (++pick[j] < families[j].solutions.size()) {
        advanced = true;
        break;
      }
      pick[j] = 0;
    }
    if (!advanced) break;
  }

  fs::create_directories(out_dir);
  Outcome o;
  o.results["files"] = json::array();
  o.results["families"] = json::array();
  for (const auto& f : families) o.results["families"].push_back(family_to_json(f));
  std::string label;
  for (int x : l) label += "_" + std::to_string(x);
  const CellIndex target{l};
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    const fs::path path = fs::path(out_dir) / ("exotic_l" + label + "_" + std::to_string(i) + ".json");
    write_potential_file(path, lifts[i]);
    // re-read what was written and certify it
    const auto back = read_potential_file(path);
    const auto cert = entire_graph_test(back, check);
    const double res = factorization_residual(back, target, 0.0, check);
    if (!cert.holds || !(res < check.tolerance)) {
      fs::remove(path);
      throw NumericalError("written potential " + path.string() + " failed re-verification");
    }
    out << path.string() << '\n';
    o.results["files"].push_back(path.string());
  }
  std::ostringstream in;
  for (int x : periods) in << x << ' ';
  in << '|';
  for (int x : l) in << x << ' ';
  o.inputs = in.str();
  return o;
}

Outcome cmd_verify(const Globals& g, const std::string& suite, const std::vector<int>& periods, std::ostream& out) {
  bool pass = false;
  if (suite == "lemma21") {
    pass = suite_lemma21(g, out);
  } else if (suite == "gershgorin") {
    pass = suite_gershgorin(g, out);
  } else if (suite == "asymptotics") {
    pass = suite_asymptotics(g, out);
  } else if (suite == "borg1d") {
    pass = suite_borg1d(g, out);
  } else if (suite == "counting") {
    pass = suite_counting(g, periods.empty() ? std::vector<int>{2} : periods, out);
  } else {
    throw std::invalid_argument("unknown suite '" + suite + "'");
  }
  Outcome o;
  o.inputs = suite;
  o.results = {{"suite", suite}, {"passed", pass}};
  o.code = pass ? kSuccess : kNegative;
  return o;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemma21", "gershgorin", "asymptotics", "borg1d", "counting"};
  return names;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Band structure, Bloch-variety and exotic-potential tools for periodic discrete Schrodinger operators",
               "blochvar"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Seed for every randomized routine")->capture_default_str();
  app.add_option("--tolerance", g.tolerance, "Relative tolerance for polynomial identity tests")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--report", g.report_path, "Write a JSON run report to this path");

  std::string file, file_b, out_path, out_dir = ".", suite;
  std::vector<int> resolution, periods, l;

  auto* bands = app.add_subcommand("bands", "Band functions, spectrum and gaps of a real potential");
  bands->add_option("file", file, "Potential file")->required();
  bands->add_option("--resolution", resolution, "Grid points per axis");
  bands->add_option("--out", out_path, "CSV output path");

  auto* entire = app.add_subcommand("entire-graph", "Test whether the Bloch variety contains an entire graph");
  entire->add_option("file", file, "Potential file")->required();

  auto* iso = app.add_subcommand("isospectral", "Test Floquet isospectrality of two potentials");
  iso->add_option("file_a", file, "First potential file")->required();
  iso->add_option("file_b", file_b, "Second potential file")->required();

  auto* exotic = app.add_subcommand("construct-exotic", "Construct zero-mean potentials with a given product form");
  exotic->add_option("--periods", periods, "Periods q_1 ... q_d")->required();
  exotic->add_option("--l", l, "Label l in W, one entry per axis")->required();
  exotic->add_option("--out", out_dir, "Output directory")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run a named invariant suite");
  verify->add_option("--suite", suite, "lemma21 | gershgorin | asymptotics | borg1d | counting")->required();
  verify->add_option("--periods", periods, "Periods for the counting suite (default 2)");

  std::vector<std::string> argv_storage{"blochvar"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  std::string command;
  try {
    if (bands->parsed()) {
      command = "bands";
      o = cmd_bands(g, file, resolution, out_path, out);
    } else if (entire->parsed()) {
      command = "entire-graph";
      o = cmd_entire_graph(g, file, out);
    } else if (iso->parsed()) {
      command = "isospectral";
      o = cmd_isospectral(g, file, file_b, out);
    } else if (exotic->parsed()) {
      command = "construct-exotic";
      o = cmd_construct_exotic(g, periods, l, out_dir, out);
    } else {
      command = "verify";
      o = cmd_verify(g, suite, periods, out);
    }
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!g.report_path.empty()) {
    json report;
    report["command"] = command;
    report["inputs_digest"] = digest(o.inputs);
    report["seed"] = g.seed;
    report["results"] = o.results;
    report["wall_time_s"] = wall;
    std::ofstream rep(g.report_path);
    if (!rep) {
      err << "error: cannot write " << g.report_path << '\n';
      return kUsage;
    }
    rep << report.dump(2) << '\n';
  }
  return o.code;
}

}  // namespace bloch::cli
