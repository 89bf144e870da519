#pragma once

#include <string>
#include <vector>

#include "vansatz/ortho_basis.hpp"
#include "vansatz/reference_solver.hpp"

namespace vansatz {

// Per-state summary of the ansatz chi_n = phi_n chi_v.
struct AnsatzState {
  int n;
  double energy;           // virial-form expectation value
  double virial_residual;  // kinetic-vs-virial mismatch, see virial_check
  double norm_check;       // <chi_n | chi_n>, should be 1
};

struct ReportRow {
  int n;
  double e_ref;
  double e_ans;
  double delta;        // e_ans - e_ref
  double epsilon_pct;  // 100 * delta / e_ref
};

struct SpectrumReport {
  std::vector<ReportRow> rows;
  std::string potential_descriptor;  // canonical potential JSON
  std::string solver_info;           // stencil / grid / extrapolation summary
};

// Sampled curves for plotting: chi[n][i] and psi[n][i] over x[i].
struct CurveSet {
  std::vector<double> x;
  std::vector<std::vector<double>> chi;
  std::vector<std::vector<double>> psi;
};

// chi_n(x) = phi_n(x - xi) chi_v(x - xi).
double ansatz_eval(const OrthoBasis& b, int n, double x);

// <chi_n| -1/2 d^2/dx^2 + U |chi_n> in the integration-by-parts form
// 1/2 int (chi_n')^2 + int U chi_n^2, with chi_n' assembled analytically
// from phi_n' and g' (no numerical differentiation anywhere).
double energy_hamiltonian(const OrthoBasis& b, int n, const QuadratureSpec& spec);

// <chi_n| 1/2 (x - xi) U'(x) + U(x) |chi_n>, the virial-theorem form of the
// energy; avoids derivatives of chi entirely and is the canonical path for
// reports. For the quartic anharmonic potential this reduces to
// <omega^2 u^2 + 3 lambda u^4>.
double energy_virial(const OrthoBasis& b, int n, const QuadratureSpec& spec);

// Virial-theorem residual |<(chi_n')^2> - <u U' >| / max(|<u U'>|, 1); the
// construction is designed to drive this to quadrature noise.
double virial_check(const OrthoBasis& b, int n, const QuadratureSpec& spec);

// <chi_i | chi_j>; orthonormality diagnostic.
double ansatz_overlap(const OrthoBasis& b, int i, int j,
                      const QuadratureSpec& spec);

AnsatzState ansatz_state(const OrthoBasis& b, int n, const QuadratureSpec& spec);

// Full pipeline: reference solve, weight + basis build, one row per level
// with the signed error delta and the percent error.
SpectrumReport build_report(const Potential& p, int nmax,
                            const SolverConfig& solver_cfg,
                            const QuadratureSpec& spec);

// CSV with header n,E_ref,E_ans,delta,epsilon_pct; energies and delta with
// 8 decimals, epsilon_pct with 2. Output is byte-stable across runs.
std::string report_to_csv(const SpectrumReport& r);
// JSON object {potential, solver, rows:[{n, e_ref, e_ans, delta,
// epsilon_pct}]}; parses back losslessly via report_from_json.
std::string report_to_json(const SpectrumReport& r);
SpectrumReport report_from_json(const std::string& text);

// Uniform sampling of chi_n and psi_n over [xmin, xmax] with the given
// point count (endpoints included).
CurveSet sample_curves(const OrthoBasis& b, const ReferenceSolution& ref,
                       double xmin, double xmax, int points);
// CSV with header x,chi_0..chi_N,psi_ref_0..psi_ref_N.
std::string curves_to_csv(const CurveSet& c);

}  // namespace vansatz
