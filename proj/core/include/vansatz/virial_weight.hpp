#pragma once

#include <optional>
#include <utility>

#include "vansatz/potential.hpp"
#include "vansatz/quadrature.hpp"

namespace vansatz {

enum class GMode { ClosedFormHO, ClosedFormAHO, Quadrature };

// The function g(u) whose exponential e^{-g} solves the local virial
// relation for the potential:
//
//   g(u) = sign-split integral of sqrt(t U'(xi + t)) dt from 0 to |u|,
//
// with the integration constant fixed by g(0) = 0 (any other constant is
// absorbed by the weight normalization; vanishing at the minimum keeps
// e^{-g} of order one near the peak). g is even, vanishes quadratically or
// faster at the origin, and is strictly convex away from it as long as the
// potential is strictly convex.
class GFunction {
 public:
  // Picks the closed form for the harmonic (g = omega u^2 / 2) and quartic
  // anharmonic kinds, and the quadrature path otherwise. The potential is
  // probed for strict convexity first; failures throw ConvexityError.
  static GFunction build(const Potential& p);
  // Forces a specific evaluation mode; used to cross-check the quadrature
  // path against the closed forms.
  static GFunction build(const Potential& p, GMode forced);

  double value(double u) const;

  // g'(u) = -sqrt(u U'(xi+u)) for u < 0, +sqrt(...) for u > 0, 0 at u = 0.
  // A negative radicand means the convexity precondition was violated.
  double derivative(double u) const;

  // Analytic second derivative away from the origin,
  //   g''(u) = sign(u) (U'(xi+u) + u U''(xi+u)) / (2 sqrt(u U'(xi+u))),
  // with the limit value k sqrt(2k a_k) |u|^{k-1} at u = 0 (the quotient
  // above is 0/0 there).
  double second_derivative(double u) const;

  GMode mode() const noexcept { return mode_; }
  const Potential& potential() const noexcept { return p_; }

 private:
  GFunction(Potential p, GMode mode);

  Potential p_;
  GMode mode_;
  QuadratureSpec integral_spec_;  // tightened spec for quadrature-mode values
};

// Normalized ground-state ansatz chi_v(u) = N e^{-g(u)} and the induced
// polynomial weight sigma_v(u) = chi_v^2. Evaluation goes through log space
// (exponentiate -g late) so the tails stay accurate down to the truncation
// threshold.
class VirialWeight {
 public:
  static VirialWeight build(const GFunction& g, const QuadratureSpec& spec);

  double chi(double u) const;
  double sigma(double u) const;

  double normalization() const noexcept { return amplitude_; }
  const Interval& domain() const noexcept { return domain_; }
  const GFunction& g() const noexcept { return g_; }
  const QuadratureSpec& spec() const noexcept { return spec_; }

  // The pair of inflection points +-u_r of chi_v, the roots of
  // g'(u)^2 = g''(u). Scans (0, L] for a bracket and bisects; returns
  // nullopt when no sign change is found (diagnostic, non-fatal).
  std::optional<std::pair<double, double>> inflection_points() const;

 private:
  VirialWeight(GFunction g, double amplitude, Interval domain,
               QuadratureSpec spec);

  GFunction g_;
  double amplitude_;  // N
  Interval domain_;
  QuadratureSpec spec_;
};

}  // namespace vansatz
