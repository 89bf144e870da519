#pragma once

#include <vector>

#include "vansatz/potential.hpp"

namespace vansatz {

enum class StencilOrder { Second, Fourth };

// Finite-difference discretization settings. Zeros mean "choose
// automatically" via auto_domain.
struct SolverConfig {
  int grid_points = 0;      // interior points M (made odd, so u=0 is a node)
  double half_width = 0.0;  // domain [xi - L, xi + L]
  StencilOrder stencil = StencilOrder::Fourth;
  bool richardson = true;   // grid-doubling energy extrapolation
};

struct DomainChoice {
  double half_width;
  int grid_points;
};

// Heuristic domain for the lowest nmax+1 states: estimates the top energy
// from a harmonic guess with a factor-3 margin, inverts U for the classical
// turning point, pads by 2, and picks the point count for at least 10 points
// per local de Broglie wavelength (floor 1025).
DomainChoice auto_domain(const Potential& p, int nmax);

// Eigenpairs of H = -1/2 d^2/dx^2 + U on a uniform grid with Dirichlet
// boundaries. Energies are strictly increasing; eigenvectors are normalized
// to trapezoid norm 1 and sign-fixed so the tail on the right of xi is
// positive (a polynomial with positive leading coefficient times a positive
// weight is positive there, so reference and ansatz curves line up without
// per-state sign fiddling).
class ReferenceSolution {
 public:
  ReferenceSolution(double xi, double half_width, int grid_points,
                    std::vector<double> energies,
                    std::vector<double> error_estimates,
                    std::vector<std::vector<double>> vectors);

  const std::vector<double>& energies() const noexcept { return energies_; }
  // |extrapolated - fine| per level when Richardson is on; 0 otherwise.
  const std::vector<double>& error_estimates() const noexcept {
    return error_estimates_;
  }

  // Grid samples of psi_n, including the two boundary zeros.
  const std::vector<double>& eigenvector(int n) const;
  // Node positions in x, including the boundaries xi -+ L.
  std::vector<double> grid() const;

  // Cubic (4-point Lagrange) interpolation of psi_n; exactly the grid value
  // at nodes, 0 outside [xi - L, xi + L].
  double psi(int n, double x) const;

  double xi() const noexcept { return xi_; }
  double half_width() const noexcept { return half_width_; }
  int grid_points() const noexcept { return grid_points_; }
  int levels() const noexcept { return static_cast<int>(energies_.size()); }

 private:
  double xi_;
  double half_width_;
  int grid_points_;  // interior count M of the grid the vectors live on
  double step_;
  std::vector<double> energies_;
  std::vector<double> error_estimates_;
  // vectors_[n] has M + 2 entries: boundary zero, M interior values,
  // boundary zero.
  std::vector<std::vector<double>> vectors_;
};

// Solves for the lowest nmax+1 eigenpairs. With cfg.richardson, energies are
// extrapolated between the M-point and (2M+1)-point grids (exact step
// halving) at the stencil's order; eigenvectors come from the fine grid.
// Throws DomainError when psi_nmax has not decayed below 1e-8 at the
// boundary, with a suggested larger half-width.
ReferenceSolution solve(const Potential& p, int nmax, const SolverConfig& cfg);

}  // namespace vansatz
