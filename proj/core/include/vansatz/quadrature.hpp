#pragma once

#include <functional>

#include "vansatz/errors.hpp"

namespace vansatz {

struct QuadratureSpec {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  // Weight value (relative to the peak) below which the tail is cut off.
  double truncation_threshold = 1e-18;
  int max_subdivisions = 1 << 14;
};

struct Interval {
  double lo;
  double hi;
};

// Adaptive composite 15-point Gauss-Legendre integration of f over iv.
// Panels are bisected until the local refinement estimate meets the
// tolerance budget, which is split evenly between the halves so the total
// error stays below max(abs_tol, rel_tol * |value|). Exhausting
// max_subdivisions throws AccuracyError with the best estimate so far.
double integrate_finite(const std::function<double(double)>& f, Interval iv,
                        const QuadratureSpec& spec);

// Finds a symmetric interval [-L, L] with w(L) <= truncation_threshold * w(0)
// for an even, unimodal weight peaked at 0: doubles L until the tail is below
// threshold, then bisects the bracket. Throws DomainError if no such L exists
// below a hard cap of 1e6.
Interval truncation_domain(const std::function<double(double)>& w,
                           const QuadratureSpec& spec);

// Integral of f * w over the real line, reduced to the truncation domain of
// w. The interval is always split at u = 0 so integrands whose derivatives
// kink at the origin never straddle a panel.
double integrate_weighted(const std::function<double(double)>& f,
                          const std::function<double(double)>& w,
                          const QuadratureSpec& spec);

}  // namespace vansatz
