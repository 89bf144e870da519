// Command-line front end: builds the virial ansatz pipeline for a configured
// potential and emits energy tables, curve samples, verification summaries
// and preset sweeps.
//
// Exit codes: 0 success, 1 failed verification (or unexpected error),
// 2 config/parse error, 3 non-convex potential, 4 numerical breakdown.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vansatz/ortho_basis.hpp"
#include "vansatz/potential.hpp"
#include "vansatz/quadrature.hpp"
#include "vansatz/reference_solver.hpp"
#include "vansatz/spectrum.hpp"
#include "vansatz/virial_weight.hpp"

namespace {

constexpr double kConvexityProbeWidth = 8.0;
constexpr int kConvexityProbeSamples = 201;

struct Options {
  std::string kind = "aho";
  double omega = 1.0;
  double lambda = 0.25;
  std::vector<double> coeffs;
  double xi = 0.0;

  int nmax = 5;
  double rel_tol = 0.0;  // 0 keeps the engine default
  double abs_tol = 0.0;
  int grid_points = 0;
  double half_width = 0.0;
  bool no_richardson = false;
  int stencil = 4;

  std::string format = "pretty";
  std::string output;
  std::string dump_basis;
  std::string config_path;
  std::string preset;

  double xmin = std::nan("");
  double xmax = std::nan("");
  int points = 601;

  std::string output_dir = ".";
};

struct PresetBlock {
  const char* name;
  double lambda;
};

// The six tabulated parameter blocks: omega = 1, xi = 4, lambda rising.
constexpr PresetBlock kPresets[] = {
    {"table1-a", 0.05}, {"table1-b", 0.25}, {"table1-c", 0.5},
    {"table1-d", 1.0},  {"table1-e", 2.5},  {"table1-f", 5.0},
};

std::optional<PresetBlock> find_preset(const std::string& name) {
  for (const PresetBlock& p : kPresets) {
    if (name == p.name) {
      return p;
    }
  }
  return std::nullopt;
}

// Applies the JSON config file underneath everything the user typed
// explicitly: a field from the file only lands if the matching flag was not
// given on the command line. Flags therefore always win on conflict.
void overlay_config(Options& opt, const CLI::App& cmd) {
  std::ifstream in(opt.config_path);
  if (!in) {
    throw std::invalid_argument("config: cannot open " + opt.config_path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config: " + opt.config_path + ": " + e.what());
  }
  if (!j.is_object()) {
    throw std::invalid_argument("config: top level must be a JSON object");
  }

  const auto untouched = [&cmd](const std::string& flag) {
    const CLI::Option* o = cmd.get_option_no_throw(flag);
    return o == nullptr || o->count() == 0;
  };

  // Either the whole file is a potential object, or it nests one under
  // "potential" next to run settings.
  nlohmann::json pot;
  if (j.contains("kind")) {
    pot = j;
  } else if (j.contains("potential")) {
    pot = j.at("potential");
  }
  try {
    if (!pot.is_null()) {
      if (untouched("--potential") && pot.contains("kind")) {
        opt.kind = pot.at("kind").get<std::string>();
      }
      if (untouched("--omega") && pot.contains("omega")) {
        opt.omega = pot.at("omega").get<double>();
      }
      if (untouched("--lambda") && pot.contains("lambda")) {
        opt.lambda = pot.at("lambda").get<double>();
      }
      if (untouched("--coeffs") && pot.contains("coeffs")) {
        opt.coeffs = pot.at("coeffs").get<std::vector<double>>();
      }
      if (untouched("--xi") && pot.contains("xi")) {
        opt.xi = pot.at("xi").get<double>();
      }
    }
    if (untouched("--nmax") && j.contains("nmax")) {
      opt.nmax = j.at("nmax").get<int>();
    }
    if (untouched("--rel-tol") && j.contains("rel_tol")) {
      opt.rel_tol = j.at("rel_tol").get<double>();
    }
    if (untouched("--abs-tol") && j.contains("abs_tol")) {
      opt.abs_tol = j.at("abs_tol").get<double>();
    }
    if (untouched("--grid-points") && j.contains("grid_points")) {
      opt.grid_points = j.at("grid_points").get<int>();
    }
    if (untouched("--domain-halfwidth") && j.contains("half_width")) {
      opt.half_width = j.at("half_width").get<double>();
    }
    if (untouched("--no-richardson") && j.contains("richardson")) {
      opt.no_richardson = !j.at("richardson").get<bool>();
    }
    if (untouched("--stencil") && j.contains("stencil")) {
      opt.stencil = j.at("stencil").get<int>();
    }
    if (untouched("--format") && j.contains("format")) {
      opt.format = j.at("format").get<std::string>();
    }
    if (untouched("--output") && j.contains("output")) {
      opt.output = j.at("output").get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config: " + opt.config_path + ": " + e.what());
  }
}

void overlay_preset(Options& opt, const CLI::App& cmd) {
  const auto block = find_preset(opt.preset);
  if (!block) {
    throw std::invalid_argument("unknown preset \"" + opt.preset +
                                "\" (expected table1-a .. table1-f)");
  }
  const auto untouched = [&cmd](const std::string& flag) {
    const CLI::Option* o = cmd.get_option_no_throw(flag);
    return o == nullptr || o->count() == 0;
  };
  if (untouched("--potential")) {
    opt.kind = "aho";
  }
  if (untouched("--omega")) {
    opt.omega = 1.0;
  }
  if (untouched("--lambda")) {
    opt.lambda = block->lambda;
  }
  if (untouched("--xi")) {
    opt.xi = 4.0;
  }
}

vansatz::Potential make_potential(const Options& opt) {
  if (opt.kind == "ho") {
    return vansatz::Potential::harmonic(opt.omega, opt.xi);
  }
  if (opt.kind == "aho") {
    return vansatz::Potential::quartic_anharmonic(opt.omega, opt.lambda, opt.xi);
  }
  if (opt.kind == "even_poly") {
    if (opt.coeffs.empty()) {
      throw std::invalid_argument("even_poly potential needs --coeffs");
    }
    return vansatz::Potential::even_polynomial(opt.coeffs, opt.xi);
  }
  throw std::invalid_argument("unknown potential kind \"" + opt.kind +
                              "\" (expected ho, aho or even_poly)");
}

void require_convex(const vansatz::Potential& p) {
  const auto report =
      p.check_strict_convexity(kConvexityProbeWidth, kConvexityProbeSamples);
  if (!report.is_strictly_convex) {
    std::ostringstream msg;
    msg << "potential is not strictly convex near x = "
        << report.witnesses.front().x << " (radial slope "
        << report.witnesses.front().radial_slope << ")";
    throw vansatz::ConvexityError(msg.str());
  }
}

vansatz::QuadratureSpec make_quadrature_spec(const Options& opt) {
  vansatz::QuadratureSpec spec;
  if (opt.rel_tol > 0.0) {
    spec.rel_tol = opt.rel_tol;
  }
  if (opt.abs_tol > 0.0) {
    spec.abs_tol = opt.abs_tol;
  }
  return spec;
}

vansatz::SolverConfig make_solver_config(const Options& opt) {
  vansatz::SolverConfig cfg;
  cfg.grid_points = opt.grid_points;
  cfg.half_width = opt.half_width;
  cfg.stencil = opt.stencil == 2 ? vansatz::StencilOrder::Second
                                 : vansatz::StencilOrder::Fourth;
  cfg.richardson = !opt.no_richardson;
  return cfg;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
  out << text;
}

void emit(const Options& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text;
  } else {
    write_text(opt.output, text);
  }
}

std::string pretty_table(const vansatz::SpectrumReport& report) {
  std::ostringstream out;
  out << "# potential: " << report.potential_descriptor << '\n';
  out << "# solver: " << report.solver_info << '\n';
  char line[160];
  std::snprintf(line, sizeof(line), "%3s %14s %14s %12s %7s\n", "n", "E_ref",
                "E_ans", "delta", "eps%");
  out << line;
  for (const auto& row : report.rows) {
    std::snprintf(line, sizeof(line), "%3d %14.8f %14.8f %12.8f %7.2f\n",
                  row.n, row.e_ref, row.e_ans, row.delta, row.epsilon_pct);
    out << line;
  }
  return out.str();
}

int cmd_table(const Options& opt) {
  const vansatz::Potential p = make_potential(opt);
  require_convex(p);
  const vansatz::QuadratureSpec qspec = make_quadrature_spec(opt);
  const vansatz::SolverConfig scfg = make_solver_config(opt);
  const vansatz::SpectrumReport report =
      vansatz::build_report(p, opt.nmax, scfg, qspec);

  if (!opt.dump_basis.empty()) {
    const auto w = vansatz::VirialWeight::build(vansatz::GFunction::build(p), qspec);
    const auto basis = vansatz::OrthoBasis::build(w, opt.nmax, qspec);
    write_text(opt.dump_basis, basis.dump_json() + "\n");
  }

  if (opt.format == "csv") {
    emit(opt, vansatz::report_to_csv(report));
  } else if (opt.format == "json") {
    emit(opt, vansatz::report_to_json(report) + "\n");
  } else if (opt.format == "pretty") {
    emit(opt, pretty_table(report));
  } else {
    throw std::invalid_argument("unknown format \"" + opt.format +
                                "\" (expected csv, json or pretty)");
  }
  return 0;
}

int cmd_curves(const Options& opt) {
  const vansatz::Potential p = make_potential(opt);
  require_convex(p);
  const vansatz::QuadratureSpec qspec = make_quadrature_spec(opt);
  const auto w = vansatz::VirialWeight::build(vansatz::GFunction::build(p), qspec);
  const auto basis = vansatz::OrthoBasis::build(w, opt.nmax, qspec);
  const auto ref = vansatz::solve(p, opt.nmax, make_solver_config(opt));

  const double xmin = std::isnan(opt.xmin) ? p.xi() - 6.0 : opt.xmin;
  const double xmax = std::isnan(opt.xmax) ? p.xi() + 6.0 : opt.xmax;
  const auto curves = vansatz::sample_curves(basis, ref, xmin, xmax, opt.points);
  emit(opt, vansatz::curves_to_csv(curves));
  return 0;
}

int cmd_verify(const Options& opt) {
  const vansatz::Potential p = make_potential(opt);
  const vansatz::QuadratureSpec qspec = make_quadrature_spec(opt);

  int failures = 0;
  const auto item = [&failures](const std::string& name, bool pass,
                                const std::string& detail) {
    std::cout << (pass ? "[ PASS ] " : "[ FAIL ] ") << name;
    if (!detail.empty()) {
      std::cout << "  (" << detail << ")";
    }
    std::cout << '\n';
    if (!pass) {
      ++failures;
    }
  };
  char detail[160];

  const auto convexity =
      p.check_strict_convexity(kConvexityProbeWidth, kConvexityProbeSamples);
  std::snprintf(detail, sizeof(detail), "%zu violating samples",
                convexity.witnesses.size());
  item("convexity", convexity.is_strictly_convex, detail);
  if (!convexity.is_strictly_convex) {
    std::cout << failures << " check(s) failed\n";
    return 1;
  }

  const auto g = vansatz::GFunction::build(p);
  const auto w = vansatz::VirialWeight::build(g, qspec);
  const double top = w.domain().hi;

  double even_worst = 0.0;
  double min_gpp = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 128; ++i) {
    const double u = top * i / 128.0;
    even_worst = std::max(even_worst, std::abs(g.value(u) - g.value(-u)));
    min_gpp = std::min(min_gpp, g.second_derivative(u));
  }
  std::snprintf(detail, sizeof(detail), "max |g(u)-g(-u)| = %.3g", even_worst);
  item("g-evenness", even_worst <= 1e-12, detail);
  std::snprintf(detail, sizeof(detail), "min g'' = %.3g", min_gpp);
  item("g-convexity", min_gpp > 0.0, detail);

  const auto sigma_of = [&w](double u) { return w.sigma(u); };
  const double norm =
      vansatz::integrate_finite(sigma_of, {w.domain().lo, 0.0}, qspec) +
      vansatz::integrate_finite(sigma_of, {0.0, w.domain().hi}, qspec);
  std::snprintf(detail, sizeof(detail), "integral of sigma = 1%+.3g",
                norm - 1.0);
  item("weight-normalization", std::abs(norm - 1.0) <= 1e-10, detail);

  const auto basis = vansatz::OrthoBasis::build(w, opt.nmax, qspec);
  double gram_worst = 0.0;
  for (int i = 0; i <= opt.nmax; ++i) {
    for (int j = i; j <= opt.nmax; ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      gram_worst = std::max(
          gram_worst,
          std::abs(vansatz::ansatz_overlap(basis, i, j, qspec) - expected));
    }
  }
  std::snprintf(detail, sizeof(detail), "max |G - I| = %.3g", gram_worst);
  item("gram-identity", gram_worst <= 1e-9, detail);

  double cond_worst = 0.0;
  double virial_worst = 0.0;
  for (int n = 0; n <= opt.nmax; ++n) {
    cond_worst = std::max(cond_worst,
                          std::abs(basis.virial_condition_residual(n, qspec)));
    virial_worst =
        std::max(virial_worst, vansatz::virial_check(basis, n, qspec));
  }
  std::snprintf(detail, sizeof(detail), "max |(phi_n, phi_n'')| = %.3g",
                cond_worst);
  item("virial-condition", cond_worst <= 1e-8, detail);
  std::snprintf(detail, sizeof(detail), "max residual = %.3g", virial_worst);
  item("virial-theorem", virial_worst <= 1e-8, detail);

  if (p.kind() == vansatz::PotentialKind::Harmonic) {
    // The basis must collapse to the normalized Hermite family.
    double worst = 0.0;
    std::vector<std::vector<double>> h = {{1.0}, {0.0, 2.0}};
    for (int n = 1; n < opt.nmax; ++n) {
      std::vector<double> next(n + 2, 0.0);
      for (int j = 0; j <= n; ++j) {
        next[j + 1] += 2.0 * h[n][j];
      }
      for (int j = 0; j < n; ++j) {
        next[j] -= 2.0 * n * h[n - 1][j];
      }
      h.push_back(std::move(next));
    }
    const double root_omega = std::sqrt(p.omega());
    double factorial = 1.0;
    for (int n = 0; n <= opt.nmax && n < static_cast<int>(h.size()); ++n) {
      if (n > 0) {
        factorial *= n;
      }
      const double scale = 1.0 / std::sqrt(std::pow(2.0, n) * factorial);
      double y_pow = 1.0;
      for (int j = 0; j <= n; ++j) {
        const double oracle = h[n][j] * scale * y_pow;
        y_pow *= root_omega;
        worst = std::max(worst,
                         std::abs(basis.monomial_coeffs(n)[j] - oracle) /
                             std::abs(basis.monomial_coeffs(n)[n]));
      }
    }
    std::snprintf(detail, sizeof(detail), "max coeff error = %.3g", worst);
    item("hermite-recovery", worst <= 1e-8, detail);
  }

  // Informational diagnostics, not pass/fail items.
  const auto lead = p.leading_order();
  std::cout << "# leading order: k = " << lead.k << ", a_k = " << lead.a_k
            << '\n';
  if (const auto infl = w.inflection_points()) {
    std::cout << "# weight inflection points: u = +-" << infl->second << '\n';
  }
  const double e0 = vansatz::energy_virial(basis, 0, qspec);
  double turn_hi = 1.0;
  while (p.shifted(turn_hi) < e0 && turn_hi < 1e6) {
    turn_hi *= 2.0;
  }
  double turn_lo = turn_hi > 1.0 ? 0.5 * turn_hi : 0.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (turn_lo + turn_hi);
    (p.shifted(mid) < e0 ? turn_lo : turn_hi) = mid;
  }
  std::cout << "# classical turning points of E_0: u = +-"
            << 0.5 * (turn_lo + turn_hi) << '\n';

  if (failures > 0) {
    std::cout << failures << " check(s) failed\n";
    return 1;
  }
  std::cout << "all checks passed\n";
  return 0;
}

int cmd_sweep(const Options& opt) {
  std::filesystem::create_directories(opt.output_dir);

  struct SweepResult {
    std::string message;
    bool ok;
  };
  std::vector<std::future<SweepResult>> running;
  for (const PresetBlock& block : kPresets) {
    running.push_back(std::async(std::launch::async, [&opt, block]() {
      SweepResult result{std::string(block.name) + ": ", false};
      try {
        const auto p = vansatz::Potential::quartic_anharmonic(1.0, block.lambda, 4.0);
        const auto report = vansatz::build_report(
            p, opt.nmax, make_solver_config(opt), make_quadrature_spec(opt));
        const std::string path =
            (std::filesystem::path(opt.output_dir) /
             (std::string(block.name) + ".csv")).string();
        write_text(path, vansatz::report_to_csv(report));
        result.message += "wrote " + path;
        result.ok = true;
      } catch (const std::exception& e) {
        result.message += std::string("error: ") + e.what();
      }
      return result;
    }));
  }

  bool all_ok = true;
  for (auto& f : running) {
    const SweepResult r = f.get();
    std::cout << (r.ok ? "[ ok ] " : "[ error ] ") << r.message << '\n';
    all_ok = all_ok && r.ok;
  }
  return all_ok ? 0 : 1;
}

// Shared flags live on every subcommand so "vansatz table --lambda 1" and
// "vansatz curves --lambda 1" read the same way.
void add_common_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--potential", opt.kind, "Potential kind: ho, aho, even_poly");
  cmd->add_option("--omega", opt.omega, "Harmonic frequency omega");
  cmd->add_option("--lambda", opt.lambda, "Quartic coupling lambda");
  cmd->add_option("--coeffs", opt.coeffs,
                  "even_poly coefficients a_1 a_2 ... of u^2, u^4, ...");
  cmd->add_option("--xi", opt.xi, "Minimum location xi");
  cmd->add_option("--nmax", opt.nmax, "Highest level (0..16)")
      ->check(CLI::Range(0, 16));
  cmd->add_option("--rel-tol", opt.rel_tol, "Quadrature relative tolerance");
  cmd->add_option("--abs-tol", opt.abs_tol, "Quadrature absolute tolerance");
  cmd->add_option("--grid-points", opt.grid_points,
                  "Solver interior grid points (0 = auto)");
  cmd->add_option("--domain-halfwidth", opt.half_width,
                  "Solver domain half width (0 = auto)");
  cmd->add_flag("--no-richardson", opt.no_richardson,
                "Disable grid-doubling energy extrapolation");
  cmd->add_option("--stencil", opt.stencil, "Finite-difference order")
      ->check(CLI::IsMember({2, 4}));
  cmd->add_option("--format", opt.format, "Output format: pretty, csv, json");
  cmd->add_option("--output", opt.output, "Write output to this file");
  cmd->add_option("--config", opt.config_path,
                  "JSON config file (explicit flags win on conflict)");
  cmd->add_option("--preset", opt.preset,
                  "Parameter block preset: table1-a .. table1-f");
}

void resolve_layers(Options& opt, const CLI::App& cmd) {
  if (!opt.config_path.empty()) {
    overlay_config(opt, cmd);
  }
  if (!opt.preset.empty()) {
    overlay_preset(opt, cmd);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Virial-ansatz spectra for symmetric strictly convex potentials"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "1.0.0");

  Options opt;
  CLI::App* table = app.add_subcommand(
      "table", "Energy table: reference vs ansatz per level");
  add_common_options(table, opt);
  table->add_option("--dump-basis", opt.dump_basis,
                    "Also write the polynomial basis as JSON to this file");

  CLI::App* curves = app.add_subcommand(
      "curves", "Sampled eigenfunction and ansatz curves as CSV");
  add_common_options(curves, opt);
  curves->add_option("--xmin", opt.xmin, "Left edge (default xi - 6)");
  curves->add_option("--xmax", opt.xmax, "Right edge (default xi + 6)");
  curves->add_option("--points", opt.points, "Sample count")
      ->check(CLI::Range(2, 1000000));

  CLI::App* verify = app.add_subcommand(
      "verify", "Run the invariant checklist for the configured potential");
  add_common_options(verify, opt);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Run all six tabulated parameter blocks concurrently");
  add_common_options(sweep, opt);
  sweep->add_option("--output-dir", opt.output_dir,
                    "Directory for the per-block CSV files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help / --version land here with success; real parse errors map to
    // the config-error exit code.
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (table->parsed()) {
      resolve_layers(opt, *table);
      return cmd_table(opt);
    }
    if (curves->parsed()) {
      resolve_layers(opt, *curves);
      return cmd_curves(opt);
    }
    if (verify->parsed()) {
      resolve_layers(opt, *verify);
      return cmd_verify(opt);
    }
    if (sweep->parsed()) {
      resolve_layers(opt, *sweep);
      return cmd_sweep(opt);
    }
    return 2;
  } catch (const vansatz::ConvexityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const vansatz::BreakdownError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const vansatz::AccuracyError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const vansatz::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
