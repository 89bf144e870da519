#pragma once

#include <string>
#include <vector>

#include "vansatz/quadrature.hpp"
#include "vansatz/virial_weight.hpp"

namespace vansatz {

// Coefficients of one step of the three-term recurrence
//
//   phi_n = beta_n [ u phi_{n-1} - offdiag_n phi_{n-2} ],
//
// where offdiag_n = <u phi_{n-1} phi_{n-2}> and
// beta_n = [<u^2 phi_{n-1}^2> - offdiag_n^2]^{-1/2}. The weight is even, so
// the diagonal term <u phi_{n-1}^2> of the general recurrence vanishes by
// parity; it is still measured by quadrature and stored as a diagnostic
// rather than assumed silently.
struct RecurrenceStep {
  double beta;
  double offdiag;
  double diag;
};

// Orthonormal polynomial family {phi_0 .. phi_nmax} under the weight
// sigma_v, with positive leading coefficients and definite parity
// phi_n(-u) = (-1)^n phi_n(u). Monomial coefficients are maintained
// alongside the recurrence so exact differentiation and dump output are
// available; evaluation goes through the recurrence for stability.
class OrthoBasis {
 public:
  // Levels above kMaxLevel run into double-precision orthogonality loss;
  // requests beyond it are rejected outright.
  static constexpr int kMaxLevel = 16;

  // Three-term recurrence construction (the production path).
  static OrthoBasis build(const VirialWeight& w, int nmax,
                          const QuadratureSpec& spec);
  // Explicit Gram-Schmidt projection of the monomials; an independent
  // cross-check path with the same contract.
  static OrthoBasis gram_schmidt(const VirialWeight& w, int nmax,
                                 const QuadratureSpec& spec);

  int nmax() const noexcept { return static_cast<int>(alpha_.size()) - 1; }
  const VirialWeight& weight() const noexcept { return w_; }

  double eval(int n, double u) const;
  double eval_derivative(int n, double u) const;
  // Horner evaluation of the monomial form; test path only (the recurrence
  // is the stable one).
  double eval_monomial(int n, double u) const;

  // alpha_{n,0} .. alpha_{n,n} in powers of u.
  const std::vector<double>& monomial_coeffs(int n) const;
  // Recurrence data for level n >= 1.
  const RecurrenceStep& step(int n) const;

  // <phi_n, phi_n''> under sigma_v, with phi_n'' from exact polynomial
  // differentiation. The construction makes this vanish; the returned value
  // is the quadrature residual. If the quadrature cannot resolve below its
  // absolute floor (the integrand is large while the integral is zero), the
  // unresolved bound is folded into the magnitude instead of throwing.
  double virial_condition_residual(int n, const QuadratureSpec& spec) const;

  // JSON array of {n, beta_n, offdiag, alpha:[...]}; beta_n and offdiag are
  // 0 for n = 0, which has no recurrence step.
  std::string dump_json() const;

 private:
  OrthoBasis(VirialWeight w, std::vector<RecurrenceStep> steps,
             std::vector<std::vector<double>> alpha);

  VirialWeight w_;
  std::vector<RecurrenceStep> steps_;       // steps_[n-1] belongs to phi_n
  std::vector<std::vector<double>> alpha_;  // alpha_[n] has n+1 entries
};

// <u^n> under sigma_v. Odd n is exactly 0 by parity (short-circuited, not
// integrated).
double weighted_moment(const VirialWeight& w, int n, const QuadratureSpec& spec);

}  // namespace vansatz
