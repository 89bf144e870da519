#include "vansatz/potential.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include <json.hpp>

#include "vansatz/errors.hpp"

namespace vansatz {

namespace {

// First nonzero series coefficient must be positive, otherwise the
// potential bends down at the minimum; that is a convexity failure, not a
// parse problem (ConvexityError still derives from invalid_argument).
void validate_coeffs(const std::vector<double>& coeffs) {
  for (double a : coeffs) {
    if (a != 0.0) {
      if (a < 0.0) {
        throw ConvexityError(
            "potential: first nonzero series coefficient is negative, the "
            "potential is not convex at the minimum");
      }
      return;
    }
  }
  throw std::invalid_argument("potential: all series coefficients are zero");
}

}  // namespace

Potential::Potential(PotentialKind kind, double omega, double lambda, double xi,
                     std::vector<double> coeffs)
    : kind_(kind),
      omega_(omega),
      lambda_(lambda),
      xi_(xi),
      coeffs_(std::move(coeffs)) {
  validate_coeffs(coeffs_);
}

Potential Potential::harmonic(double omega, double xi) {
  if (!(omega > 0.0)) {
    throw std::invalid_argument("potential: omega must be positive");
  }
  return Potential(PotentialKind::Harmonic, omega, 0.0, xi,
                   {0.5 * omega * omega});
}

Potential Potential::quartic_anharmonic(double omega, double lambda, double xi) {
  if (!(omega > 0.0)) {
    throw std::invalid_argument("potential: omega must be positive");
  }
  if (lambda < 0.0) {
    throw std::invalid_argument("potential: lambda must be non-negative");
  }
  return Potential(PotentialKind::QuarticAnharmonic, omega, lambda, xi,
                   {0.5 * omega * omega, lambda});
}

Potential Potential::even_polynomial(std::vector<double> coeffs, double xi) {
  return Potential(PotentialKind::EvenPolynomial, 0.0, 0.0, xi,
                   std::move(coeffs));
}

double Potential::shifted(double u) const {
  // Horner in u^2: U(xi+u) = u^2 (a_1 + u^2 (a_2 + ...)).
  const double u2 = u * u;
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * u2 + *it;
  }
  return acc * u2;
}

double Potential::shifted_derivative(double u) const {
  // d/du sum a_k u^{2k} = u * sum 2k a_k u^{2(k-1)}.
  const double u2 = u * u;
  double acc = 0.0;
  for (int k = static_cast<int>(coeffs_.size()); k >= 1; --k) {
    acc = acc * u2 + 2.0 * k * coeffs_[k - 1];
  }
  return acc * u;
}

double Potential::shifted_second_derivative(double u) const {
  const double u2 = u * u;
  double acc = 0.0;
  for (int k = static_cast<int>(coeffs_.size()); k >= 1; --k) {
    acc = acc * u2 + 2.0 * k * (2.0 * k - 1.0) * coeffs_[k - 1];
  }
  return acc;
}

ConvexityReport Potential::check_strict_convexity(double half_width,
                                                  int samples) const {
  if (samples < 3) {
    throw std::invalid_argument("check_strict_convexity: samples must be >= 3");
  }
  if (!(half_width > 0.0)) {
    throw std::invalid_argument(
        "check_strict_convexity: half_width must be positive");
  }

  ConvexityReport report;
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "2 x %d symmetric samples on [xi - %g, xi + %g], origin excluded",
                samples, half_width, half_width);
  report.grid_spec = buf;

  for (int side = -1; side <= 1; side += 2) {
    for (int i = 1; i <= samples; ++i) {
      const double u = side * half_width * i / samples;
      const double radial = u * shifted_derivative(u);
      if (!(radial > 0.0) || shifted_second_derivative(u) < 0.0) {
        report.witnesses.push_back({xi_ + u, radial});
      }
    }
  }
  report.is_strictly_convex = report.witnesses.empty();
  return report;
}

LeadingOrder Potential::leading_order() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0.0) {
      return {static_cast<int>(i) + 1, coeffs_[i]};
    }
  }
  // Unreachable: construction rejects the all-zero series.
  throw std::invalid_argument("potential: all series coefficients are zero");
}

Potential Potential::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("potential JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind")) {
    throw std::invalid_argument("potential JSON: expected object with \"kind\"");
  }
  try {
    const std::string kind = j.at("kind").get<std::string>();
    const double xi = j.value("xi", 0.0);
    if (kind == "ho") {
      return harmonic(j.at("omega").get<double>(), xi);
    }
    if (kind == "aho") {
      return quartic_anharmonic(j.at("omega").get<double>(),
                                j.at("lambda").get<double>(), xi);
    }
    if (kind == "even_poly") {
      return even_polynomial(j.at("coeffs").get<std::vector<double>>(), xi);
    }
    throw std::invalid_argument("potential JSON: unknown kind \"" + kind +
                                "\" (expected ho, aho or even_poly)");
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("potential JSON: ") + e.what());
  }
}

std::string Potential::to_json() const {
  nlohmann::json j;
  switch (kind_) {
    case PotentialKind::Harmonic:
      j = {{"kind", "ho"}, {"omega", omega_}, {"xi", xi_}};
      break;
    case PotentialKind::QuarticAnharmonic:
      j = {{"kind", "aho"}, {"omega", omega_}, {"lambda", lambda_}, {"xi", xi_}};
      break;
    case PotentialKind::EvenPolynomial:
      j = {{"kind", "even_poly"}, {"coeffs", coeffs_}, {"xi", xi_}};
      break;
  }
  return j.dump();
}

}  // namespace vansatz
