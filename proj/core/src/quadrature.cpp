#include "vansatz/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace vansatz {

namespace {

constexpr int kPanelPoints = 15;

struct PanelRule {
  std::array<double, kPanelPoints> node;    // on [-1, 1]
  std::array<double, kPanelPoints> weight;
};

// Nodes are the roots of the Legendre polynomial P_15, found by Newton
// iteration from the Chebyshev-like initial guesses; weights follow from the
// derivative at the root. Computed once, to full double precision.
PanelRule make_panel_rule() {
  PanelRule r;
  const int n = kPanelPoints;
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) {
        break;
      }
    }
    r.node[i] = -z;
    r.node[n - 1 - i] = z;
    r.weight[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    r.weight[n - 1 - i] = r.weight[i];
  }
  return r;
}

const PanelRule& panel_rule() {
  static const PanelRule rule = make_panel_rule();
  return rule;
}

double panel_value(const std::function<double(double)>& f, double a, double b) {
  const PanelRule& r = panel_rule();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < kPanelPoints; ++i) {
    sum += r.weight[i] * f(mid + half * r.node[i]);
  }
  return half * sum;
}

struct AdaptState {
  const std::function<double(double)>& f;
  int splits_left;
  bool exhausted = false;
  double unresolved_error = 0.0;
};

// One panel of the adaptive scheme: accept when the two-half refinement
// agrees with the whole-panel value within tol, otherwise recurse with half
// the budget per side. When the split budget runs out the finer value is
// kept and the discrepancy recorded, so the caller can report a best
// estimate along with the failure.
double adapt(AdaptState& st, double a, double b, double whole, double tol) {
  const double mid = 0.5 * (a + b);
  const double left = panel_value(st.f, a, mid);
  const double right = panel_value(st.f, mid, b);
  const double finer = left + right;
  const double err = std::abs(finer - whole);
  if (err <= tol || mid <= a || mid >= b) {
    return finer;
  }
  if (st.splits_left <= 0) {
    st.exhausted = true;
    st.unresolved_error += err;
    return finer;
  }
  st.splits_left -= 1;
  return adapt(st, a, mid, left, 0.5 * tol) +
         adapt(st, mid, b, right, 0.5 * tol);
}

}  // namespace

double integrate_finite(const std::function<double(double)>& f, Interval iv,
                        const QuadratureSpec& spec) {
  if (!(iv.lo < iv.hi)) {
    throw std::invalid_argument("integrate_finite: interval must have lo < hi");
  }
  const double whole = panel_value(f, iv.lo, iv.hi);
  // The tolerance scale comes from the coarse value; for integrands whose
  // coarse estimate is badly off the adaptive refinement still tightens the
  // result, since panel acceptance rechecks against local values.
  const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(whole));
  AdaptState st{f, spec.max_subdivisions};
  const double value = adapt(st, iv.lo, iv.hi, whole, tol);
  if (st.exhausted) {
    throw AccuracyError(
        "integrate_finite: subdivision budget exhausted before reaching "
        "tolerance",
        value, st.unresolved_error);
  }
  return value;
}

Interval truncation_domain(const std::function<double(double)>& w,
                           const QuadratureSpec& spec) {
  constexpr double kHardCap = 1e6;
  const double peak = w(0.0);
  if (!(peak > 0.0) || !std::isfinite(peak)) {
    throw DomainError("truncation_domain: weight must be positive at 0", 0.0);
  }
  const double target = spec.truncation_threshold * peak;

  double hi = 1.0;
  while (w(hi) > target) {
    hi *= 2.0;
    if (hi > kHardCap) {
      throw DomainError(
          "truncation_domain: weight tail never fell below threshold", kHardCap);
    }
  }
  double lo = (hi > 1.0) ? 0.5 * hi : 0.0;
  // The weight decreases monotonically outward, so plain bisection on
  // w(L) - target converges; 80 halvings put L at full double resolution.
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      break;
    }
    (w(mid) > target ? lo : hi) = mid;
  }
  return {-hi, hi};
}

double integrate_weighted(const std::function<double(double)>& f,
                          const std::function<double(double)>& w,
                          const QuadratureSpec& spec) {
  const Interval dom = truncation_domain(w, spec);
  const auto fw = [&](double u) { return f(u) * w(u); };
  return integrate_finite(fw, {dom.lo, 0.0}, spec) +
         integrate_finite(fw, {0.0, dom.hi}, spec);
}

}  // namespace vansatz
