#include "vansatz/reference_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include <lapacke.h>

namespace vansatz {

namespace {

// Lowest nev eigenpairs of the Dirichlet finite-difference Hamiltonian on m
// interior points spanning (-half_width, half_width) around xi. Returns
// energies and raw (unnormalized) interior eigenvectors.
struct BandSolve {
  std::vector<double> energies;
  std::vector<std::vector<double>> vectors;
};

BandSolve solve_band(const Potential& p, int m, double half_width,
                     StencilOrder stencil, int nev, bool want_vectors) {
  const double h = 2.0 * half_width / (m + 1);
  const double inv_h2 = 1.0 / (h * h);
  const int kd = stencil == StencilOrder::Second ? 1 : 2;
  const int ldab = kd + 1;

  // Lower-band column-major storage: ab[r + j*ldab] holds A(j+r, j).
  // Second order: -psi'' / 2 -> diag 1/h^2, first off-diagonal -1/(2h^2).
  // Fourth order: diag 5/(4h^2), offs -2/(3h^2) and 1/(24h^2).
  std::vector<double> ab(static_cast<std::size_t>(ldab) * m, 0.0);
  for (int j = 0; j < m; ++j) {
    const double u = -half_width + (j + 1) * h;
    const double pot = p.shifted(u);
    if (stencil == StencilOrder::Second) {
      ab[0 + j * ldab] = inv_h2 + pot;
      if (j < m - 1) {
        ab[1 + j * ldab] = -0.5 * inv_h2;
      }
    } else {
      ab[0 + j * ldab] = 1.25 * inv_h2 + pot;
      if (j < m - 1) {
        ab[1 + j * ldab] = -2.0 / 3.0 * inv_h2;
      }
      if (j < m - 2) {
        ab[2 + j * ldab] = inv_h2 / 24.0;
      }
    }
  }

  std::vector<double> w(m, 0.0);
  std::vector<double> z(want_vectors ? static_cast<std::size_t>(m) * nev : 1,
                        0.0);
  // The reduction-to-tridiagonal workspace is only touched when eigenvectors
  // are requested, but it must be a real n-by-n buffer in that case.
  std::vector<double> q(want_vectors ? static_cast<std::size_t>(m) * m : 1,
                        0.0);
  std::vector<lapack_int> ifail(m, 0);
  lapack_int found = 0;
  const double abstol = 2.0 * LAPACKE_dlamch('S');
  const lapack_int info = LAPACKE_dsbevx(
      LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'I', 'L', m, kd, ab.data(),
      ldab, q.data(), want_vectors ? m : 1, 0.0, 0.0, 1, nev, abstol, &found,
      w.data(), z.data(), m, ifail.data());
  if (info != 0 || found < nev) {
    throw AccuracyError(
        "reference solver: banded eigensolver failed (info = " +
            std::to_string(info) + ")",
        0.0, 0.0);
  }

  BandSolve out;
  out.energies.assign(w.begin(), w.begin() + nev);
  if (want_vectors) {
    out.vectors.resize(nev);
    for (int n = 0; n < nev; ++n) {
      out.vectors[n].assign(z.begin() + static_cast<std::size_t>(n) * m,
                            z.begin() + static_cast<std::size_t>(n + 1) * m);
    }
  }
  return out;
}

// Solve U(u) = energy for u > 0 by doubling then bisection; U is strictly
// increasing away from the minimum for the supported potentials.
double turning_point(const Potential& p, double energy) {
  double hi = 1.0;
  while (p.shifted(hi) < energy && hi < 1e6) {
    hi *= 2.0;
  }
  double lo = hi > 1.0 ? 0.5 * hi : 0.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (p.shifted(mid) < energy ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

int make_odd(int m) { return m % 2 == 0 ? m + 1 : m; }

}  // namespace

DomainChoice auto_domain(const Potential& p, int nmax) {
  // Effective frequency from the stiffest curvature near the well; probing
  // u = 1 as well as 0 covers quartic-dominated potentials whose curvature
  // at the minimum understates the confinement.
  const double curv = std::max(p.shifted_second_derivative(0.0),
                               p.shifted_second_derivative(1.0));
  const double omega_eff = std::sqrt(std::max(curv, 1e-8));
  // Floor the level at 2 so that low nmax still leaves the ground state
  // room to decay below the boundary check threshold.
  const double e_top = 3.0 * omega_eff * (std::max(nmax, 2) + 0.5);
  const double l = 2.0 * turning_point(p, e_top);

  // At least 10 points per local de Broglie wavelength at the highest
  // estimated energy: h <= 2 pi / (10 k) with k = sqrt(2 E).
  const double k_max = std::sqrt(2.0 * e_top);
  const int m_wave =
      static_cast<int>(std::ceil(10.0 * k_max * l / std::numbers::pi));
  const int m = make_odd(std::max(1025, m_wave));
  return {l, m};
}

ReferenceSolution::ReferenceSolution(double xi, double half_width,
                                     int grid_points,
                                     std::vector<double> energies,
                                     std::vector<double> error_estimates,
                                     std::vector<std::vector<double>> vectors)
    : xi_(xi),
      half_width_(half_width),
      grid_points_(grid_points),
      step_(2.0 * half_width / (grid_points + 1)),
      energies_(std::move(energies)),
      error_estimates_(std::move(error_estimates)),
      vectors_(std::move(vectors)) {}

const std::vector<double>& ReferenceSolution::eigenvector(int n) const {
  if (n < 0 || n >= levels()) {
    throw std::invalid_argument("reference solution: level out of range");
  }
  return vectors_[n];
}

std::vector<double> ReferenceSolution::grid() const {
  std::vector<double> x(grid_points_ + 2);
  for (int i = 0; i < grid_points_ + 2; ++i) {
    x[i] = xi_ - half_width_ + i * step_;
  }
  return x;
}

double ReferenceSolution::psi(int n, double x) const {
  if (n < 0 || n >= levels()) {
    throw std::invalid_argument("reference solution: level out of range");
  }
  const double u = x - xi_;
  if (u <= -half_width_ || u >= half_width_) {
    return 0.0;
  }
  const std::vector<double>& v = vectors_[n];
  const int last = static_cast<int>(v.size()) - 1;  // = grid_points_ + 1
  const double t = (u + half_width_) / step_;
  // 4-point Lagrange window centered on the enclosing cell, clamped at the
  // edges (the stored vector includes the boundary zeros).
  int i0 = static_cast<int>(std::floor(t)) - 1;
  i0 = std::clamp(i0, 0, last - 3);
  double result = 0.0;
  for (int a = 0; a < 4; ++a) {
    double basis = 1.0;
    for (int b = 0; b < 4; ++b) {
      if (a != b) {
        basis *= (t - (i0 + b)) / static_cast<double>(a - b);
      }
    }
    result += basis * v[i0 + a];
  }
  return result;
}

ReferenceSolution solve(const Potential& p, int nmax, const SolverConfig& cfg) {
  if (nmax < 0) {
    throw std::invalid_argument("reference solver: nmax must be non-negative");
  }
  const DomainChoice autod = auto_domain(p, nmax);
  const double half_width = cfg.half_width > 0.0 ? cfg.half_width : autod.half_width;
  int m = cfg.grid_points > 0 ? cfg.grid_points : autod.grid_points;
  m = make_odd(m);
  if (m < 64) {
    throw std::invalid_argument(
        "reference solver: fewer than 64 grid points cannot resolve the "
        "spectrum");
  }
  const int nev = nmax + 1;
  if (nev > m) {
    throw std::invalid_argument(
        "reference solver: more levels requested than grid points");
  }

  // Fine grid with 2m+1 interior points halves the step exactly, so the
  // Richardson pair shares every coarse node.
  const int m_fine = cfg.richardson ? 2 * m + 1 : m;
  BandSolve fine = solve_band(p, m_fine, half_width, cfg.stencil, nev, true);

  std::vector<double> energies(nev, 0.0);
  std::vector<double> errors(nev, 0.0);
  if (cfg.richardson) {
    const BandSolve coarse =
        solve_band(p, m, half_width, cfg.stencil, nev, false);
    const double factor =
        cfg.stencil == StencilOrder::Second ? 3.0 : 15.0;  // 2^order - 1
    for (int n = 0; n < nev; ++n) {
      const double extrap =
          fine.energies[n] +
          (fine.energies[n] - coarse.energies[n]) / factor;
      errors[n] = std::abs(extrap - fine.energies[n]);
      energies[n] = extrap;
    }
  } else {
    energies = fine.energies;
  }

  // Trapezoid normalization (boundary values are zero, so the sum over
  // interior points is the whole integral), then the sign convention: the
  // outermost visible lobe on the right is made positive, matching the tail
  // sign of the ansatz states.
  const double h = 2.0 * half_width / (m_fine + 1);
  std::vector<std::vector<double>> padded(nev);
  for (int n = 0; n < nev; ++n) {
    std::vector<double>& raw = fine.vectors[n];
    double norm2 = 0.0;
    for (double value : raw) {
      norm2 += value * value;
    }
    const double scale = 1.0 / std::sqrt(h * norm2);
    double peak = 0.0;
    for (double value : raw) {
      peak = std::max(peak, std::abs(value));
    }
    double tail_sign = 1.0;
    for (int i = m_fine - 1; i >= 0; --i) {
      if (std::abs(raw[i]) > 1e-3 * peak) {
        tail_sign = raw[i] > 0.0 ? 1.0 : -1.0;
        break;
      }
    }
    padded[n].assign(m_fine + 2, 0.0);
    for (int i = 0; i < m_fine; ++i) {
      padded[n][i + 1] = tail_sign * scale * raw[i];
    }
  }

  // Dirichlet walls are only trustworthy if every requested state has
  // decayed into numerical noise before reaching them.
  for (int n = 0; n < nev; ++n) {
    const double edge =
        std::max(std::abs(padded[n][1]), std::abs(padded[n][m_fine]));
    if (edge > 1e-8) {
      throw DomainError(
          "reference solver: state " + std::to_string(n) +
              " has not decayed at the boundary; enlarge the domain",
          1.5 * half_width);
    }
  }

  for (int n = 1; n < nev; ++n) {
    if (!(energies[n] > energies[n - 1])) {
      throw AccuracyError(
          "reference solver: eigenvalues not strictly increasing", energies[n],
          0.0);
    }
  }

  return ReferenceSolution(p.xi(), half_width, m_fine, std::move(energies),
                           std::move(errors), std::move(padded));
}

}  // namespace vansatz
