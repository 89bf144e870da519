#include "vansatz/virial_weight.hpp"

#include <cmath>

namespace vansatz {

namespace {

// Cheap convexity probe used before committing to a g build. The sample
// width only needs to cover the region the weight will live on; 8 length
// units is generous for any potential normalized to O(1) coefficients.
void require_convex(const Potential& p) {
  const ConvexityReport report = p.check_strict_convexity(8.0, 101);
  if (!report.is_strictly_convex) {
    throw ConvexityError(
        "g-function: potential failed the strict convexity probe at x = " +
        std::to_string(report.witnesses.front().x));
  }
}

}  // namespace

GFunction::GFunction(Potential p, GMode mode) : p_(std::move(p)), mode_(mode) {
  // Values in quadrature mode feed normalization integrals and pointwise
  // cross-checks, so they are computed a little tighter than the consumer
  // tolerances downstream.
  integral_spec_.rel_tol = 1e-13;
  integral_spec_.abs_tol = 1e-15;
}

GFunction GFunction::build(const Potential& p) {
  switch (p.kind()) {
    case PotentialKind::Harmonic:
      return build(p, GMode::ClosedFormHO);
    case PotentialKind::QuarticAnharmonic:
      return build(p, GMode::ClosedFormAHO);
    case PotentialKind::EvenPolynomial:
      return build(p, GMode::Quadrature);
  }
  throw std::invalid_argument("g-function: unknown potential kind");
}

GFunction GFunction::build(const Potential& p, GMode forced) {
  if (forced == GMode::ClosedFormHO && p.kind() != PotentialKind::Harmonic) {
    throw std::invalid_argument(
        "g-function: harmonic closed form requires a harmonic potential");
  }
  if (forced == GMode::ClosedFormAHO &&
      p.kind() != PotentialKind::QuarticAnharmonic) {
    throw std::invalid_argument(
        "g-function: quartic closed form requires a quartic anharmonic "
        "potential");
  }
  require_convex(p);
  return GFunction(p, forced);
}

double GFunction::value(double u) const {
  switch (mode_) {
    case GMode::ClosedFormHO:
      return 0.5 * p_.omega() * u * u;
    case GMode::ClosedFormAHO: {
      const double om = p_.omega();
      const double lam = p_.lambda();
      if (lam == 0.0) {
        return 0.5 * om * u * u;
      }
      // g = (omega^3 / 12 lambda) [ (1 + 4 lambda u^2 / omega^2)^{3/2} - 1 ],
      // written through expm1/log1p so the small-lambda (and small-u) limit
      // omega u^2 / 2 comes out without cancellation.
      const double r = 4.0 * lam * u * u / (om * om);
      return om * om * om / (12.0 * lam) * std::expm1(1.5 * std::log1p(r));
    }
    case GMode::Quadrature: {
      const double au = std::abs(u);
      if (au == 0.0) {
        return 0.0;
      }
      const auto integrand = [this](double t) {
        return std::sqrt(t * p_.shifted_derivative(t));
      };
      return integrate_finite(integrand, {0.0, au}, integral_spec_);
    }
  }
  throw std::logic_error("g-function: unknown mode");
}

double GFunction::derivative(double u) const {
  if (u == 0.0) {
    return 0.0;
  }
  const double radicand = u * p_.shifted_derivative(u);
  if (radicand < 0.0) {
    throw ConvexityError(
        "g-function: negative radicand u U'(xi+u) at u = " + std::to_string(u));
  }
  const double root = std::sqrt(radicand);
  return u < 0.0 ? -root : root;
}

double GFunction::second_derivative(double u) const {
  if (u == 0.0) {
    const LeadingOrder lead = p_.leading_order();
    // Limit of the quotient below: k sqrt(2k a_k) |u|^{k-1}, which is
    // sqrt(2 a_1) for a quadratic minimum and 0 for flatter ones.
    return lead.k == 1 ? std::sqrt(2.0 * lead.a_k) : 0.0;
  }
  const double up = p_.shifted_derivative(u);
  const double radicand = u * up;
  if (radicand < 0.0) {
    throw ConvexityError(
        "g-function: negative radicand u U'(xi+u) at u = " + std::to_string(u));
  }
  const double num = up + u * p_.shifted_second_derivative(u);
  const double result = num / (2.0 * std::sqrt(radicand));
  return u < 0.0 ? -result : result;
}

VirialWeight::VirialWeight(GFunction g, double amplitude, Interval domain,
                           QuadratureSpec spec)
    : g_(std::move(g)),
      amplitude_(amplitude),
      domain_(domain),
      spec_(spec) {}

VirialWeight VirialWeight::build(const GFunction& g, const QuadratureSpec& spec) {
  const auto unnormalized = [&g](double u) { return std::exp(-2.0 * g.value(u)); };
  const Interval dom = truncation_domain(unnormalized, spec);
  const double integral =
      integrate_finite(unnormalized, {dom.lo, 0.0}, spec) +
      integrate_finite(unnormalized, {0.0, dom.hi}, spec);
  return VirialWeight(g, 1.0 / std::sqrt(integral), dom, spec);
}

double VirialWeight::chi(double u) const {
  return amplitude_ * std::exp(-g_.value(u));
}

double VirialWeight::sigma(double u) const {
  return amplitude_ * amplitude_ * std::exp(-2.0 * g_.value(u));
}

std::optional<std::pair<double, double>> VirialWeight::inflection_points() const {
  // chi'' changes sign where g'(u)^2 - g''(u) does; scan (0, L] for the
  // first bracket, then bisect. Strict log-concavity of chi makes a single
  // pair the expected outcome.
  const auto h = [this](double u) {
    const double gp = g_.derivative(u);
    return gp * gp - g_.second_derivative(u);
  };
  constexpr int kScan = 1024;
  const double top = domain_.hi;
  double prev_u = top / kScan * 0.5;  // stay off u = 0, where h < 0
  double prev_h = h(prev_u);
  for (int i = 1; i <= kScan; ++i) {
    const double cur_u = top * i / kScan;
    const double cur_h = h(cur_u);
    if ((prev_h < 0.0) != (cur_h < 0.0)) {
      double lo = prev_u;
      double hi = cur_u;
      for (int iter = 0; iter < 100 && hi - lo > 1e-10 * top; ++iter) {
        const double mid = 0.5 * (lo + hi);
        ((h(mid) < 0.0) == (prev_h < 0.0) ? lo : hi) = mid;
      }
      const double root = 0.5 * (lo + hi);
      return std::make_pair(-root, root);
    }
    prev_u = cur_u;
    prev_h = cur_h;
  }
  return std::nullopt;
}

}  // namespace vansatz
