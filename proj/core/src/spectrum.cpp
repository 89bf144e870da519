#include "vansatz/spectrum.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include <json.hpp>

namespace vansatz {

namespace {

// Integral of f(u) sigma_v(u) over the weight's domain, split at the origin.
double weighted(const OrthoBasis& b, const QuadratureSpec& spec,
                const std::function<double(double)>& f) {
  const VirialWeight& w = b.weight();
  const auto integrand = [&](double u) { return f(u) * w.sigma(u); };
  const Interval dom = w.domain();
  return integrate_finite(integrand, {dom.lo, 0.0}, spec) +
         integrate_finite(integrand, {0.0, dom.hi}, spec);
}

std::string format_row(const ReportRow& row) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%d,%.8f,%.8f,%.8f,%.2f", row.n, row.e_ref,
                row.e_ans, row.delta, row.epsilon_pct);
  return buf;
}

}  // namespace

double ansatz_eval(const OrthoBasis& b, int n, double x) {
  const double u = x - b.weight().g().potential().xi();
  return b.eval(n, u) * b.weight().chi(u);
}

double energy_hamiltonian(const OrthoBasis& b, int n,
                          const QuadratureSpec& spec) {
  const Potential& p = b.weight().g().potential();
  const GFunction& g = b.weight().g();
  // chi_n' = (phi_n' - phi_n g') chi_v, so the kinetic term needs no
  // numerical differentiation at all.
  const double kinetic = weighted(b, spec, [&](double u) {
    const double d = b.eval_derivative(n, u) - b.eval(n, u) * g.derivative(u);
    return 0.5 * d * d;
  });
  const double potential = weighted(b, spec, [&](double u) {
    const double v = b.eval(n, u);
    return p.shifted(u) * v * v;
  });
  return kinetic + potential;
}

double energy_virial(const OrthoBasis& b, int n, const QuadratureSpec& spec) {
  const Potential& p = b.weight().g().potential();
  return weighted(b, spec, [&](double u) {
    const double v = b.eval(n, u);
    return (0.5 * u * p.shifted_derivative(u) + p.shifted(u)) * v * v;
  });
}

double virial_check(const OrthoBasis& b, int n, const QuadratureSpec& spec) {
  const Potential& p = b.weight().g().potential();
  const GFunction& g = b.weight().g();
  const double kinetic = weighted(b, spec, [&](double u) {
    const double d = b.eval_derivative(n, u) - b.eval(n, u) * g.derivative(u);
    return d * d;
  });
  const double virial = weighted(b, spec, [&](double u) {
    const double v = b.eval(n, u);
    return u * p.shifted_derivative(u) * v * v;
  });
  return std::abs(kinetic - virial) / std::max(std::abs(virial), 1.0);
}

double ansatz_overlap(const OrthoBasis& b, int i, int j,
                      const QuadratureSpec& spec) {
  return weighted(b, spec,
                  [&](double u) { return b.eval(i, u) * b.eval(j, u); });
}

AnsatzState ansatz_state(const OrthoBasis& b, int n,
                         const QuadratureSpec& spec) {
  AnsatzState s;
  s.n = n;
  s.energy = energy_virial(b, n, spec);
  s.virial_residual = virial_check(b, n, spec);
  s.norm_check = ansatz_overlap(b, n, n, spec);
  return s;
}

SpectrumReport build_report(const Potential& p, int nmax,
                            const SolverConfig& solver_cfg,
                            const QuadratureSpec& spec) {
  const ReferenceSolution ref = solve(p, nmax, solver_cfg);
  const GFunction g = GFunction::build(p);
  const VirialWeight w = VirialWeight::build(g, spec);
  const OrthoBasis basis = OrthoBasis::build(w, nmax, spec);

  SpectrumReport report;
  report.potential_descriptor = p.to_json();
  {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "fd%d dirichlet M=%d L=%.6g%s",
                  solver_cfg.stencil == StencilOrder::Second ? 2 : 4,
                  ref.grid_points(), ref.half_width(),
                  solver_cfg.richardson ? " richardson" : "");
    report.solver_info = buf;
  }
  for (int n = 0; n <= nmax; ++n) {
    ReportRow row;
    row.n = n;
    row.e_ref = ref.energies()[n];
    row.e_ans = energy_virial(basis, n, spec);
    row.delta = row.e_ans - row.e_ref;
    row.epsilon_pct = 100.0 * row.delta / row.e_ref;
    report.rows.push_back(row);
  }
  return report;
}

std::string report_to_csv(const SpectrumReport& r) {
  std::string out = "n,E_ref,E_ans,delta,epsilon_pct\n";
  for (const ReportRow& row : r.rows) {
    out += format_row(row);
    out += '\n';
  }
  return out;
}

std::string report_to_json(const SpectrumReport& r) {
  nlohmann::json j;
  j["potential"] = nlohmann::json::parse(r.potential_descriptor);
  j["solver"] = r.solver_info;
  nlohmann::json rows = nlohmann::json::array();
  for (const ReportRow& row : r.rows) {
    rows.push_back({{"n", row.n},
                    {"e_ref", row.e_ref},
                    {"e_ans", row.e_ans},
                    {"delta", row.delta},
                    {"epsilon_pct", row.epsilon_pct}});
  }
  j["rows"] = std::move(rows);
  return j.dump(2);
}

SpectrumReport report_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("report JSON: ") + e.what());
  }
  SpectrumReport report;
  try {
    report.potential_descriptor = j.at("potential").dump();
    report.solver_info = j.at("solver").get<std::string>();
    for (const nlohmann::json& row : j.at("rows")) {
      report.rows.push_back({row.at("n").get<int>(),
                             row.at("e_ref").get<double>(),
                             row.at("e_ans").get<double>(),
                             row.at("delta").get<double>(),
                             row.at("epsilon_pct").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("report JSON: ") + e.what());
  }
  return report;
}

CurveSet sample_curves(const OrthoBasis& b, const ReferenceSolution& ref,
                       double xmin, double xmax, int points) {
  if (!(xmin < xmax)) {
    throw std::invalid_argument("sample_curves: xmin must be below xmax");
  }
  if (points < 2) {
    throw std::invalid_argument("sample_curves: need at least 2 points");
  }
  const int levels = std::min(b.nmax() + 1, ref.levels());
  CurveSet c;
  c.x.resize(points);
  c.chi.assign(levels, std::vector<double>(points, 0.0));
  c.psi.assign(levels, std::vector<double>(points, 0.0));
  for (int i = 0; i < points; ++i) {
    const double x = xmin + (xmax - xmin) * i / (points - 1);
    c.x[i] = x;
    for (int n = 0; n < levels; ++n) {
      c.chi[n][i] = ansatz_eval(b, n, x);
      c.psi[n][i] = ref.psi(n, x);
    }
  }
  return c;
}

std::string curves_to_csv(const CurveSet& c) {
  const int levels = static_cast<int>(c.chi.size());
  std::string out = "x";
  for (int n = 0; n < levels; ++n) {
    out += ",chi_" + std::to_string(n);
  }
  for (int n = 0; n < levels; ++n) {
    out += ",psi_ref_" + std::to_string(n);
  }
  out += '\n';
  char buf[64];
  for (std::size_t i = 0; i < c.x.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.12g", c.x[i]);
    out += buf;
    for (int n = 0; n < levels; ++n) {
      std::snprintf(buf, sizeof(buf), ",%.12g", c.chi[n][i]);
      out += buf;
    }
    for (int n = 0; n < levels; ++n) {
      std::snprintf(buf, sizeof(buf), ",%.12g", c.psi[n][i]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace vansatz
