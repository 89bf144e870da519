#pragma once

#include <string>
#include <vector>

#include "vansatz/errors.hpp"

namespace vansatz {

enum class PotentialKind { Harmonic, QuarticAnharmonic, EvenPolynomial };

// One failing sample of the strict-convexity probe: the point x and the
// value (x - xi) U'(x) there (non-positive means the probe failed).
struct ConvexityWitness {
  double x;
  double radial_slope;  // (x - xi) * U'(x)
};

struct ConvexityReport {
  bool is_strictly_convex = false;
  std::vector<ConvexityWitness> witnesses;
  std::string grid_spec;
};

// First nonzero term a_k u^{2k} of the shifted series; controls how the
// weight behaves near the minimum.
struct LeadingOrder {
  int k;
  double a_k;
};

// Symmetric potential with minimum at xi, represented as an even power
// series in the shifted coordinate u = x - xi:
//
//   U(x) = sum_{k>=1} a_k u^{2k},  first nonzero a_k > 0.
//
// Harmonic uses a_1 = omega^2 / 2; the quartic anharmonic oscillator adds
// a_2 = lambda. All derivatives are evaluated from the series exactly,
// never by finite differencing, so downstream integrands stay smooth.
class Potential {
 public:
  static Potential harmonic(double omega, double xi);
  static Potential quartic_anharmonic(double omega, double lambda, double xi);
  // coeffs[i] is a_{i+1}, i.e. the coefficient of u^{2(i+1)}.
  static Potential even_polynomial(std::vector<double> coeffs, double xi);

  // Parses the JSON object form, e.g.
  //   {"kind":"aho","omega":1.0,"lambda":0.25,"xi":4.0}
  //   {"kind":"ho","omega":1.0,"xi":0.0}
  //   {"kind":"even_poly","coeffs":[0.5,1.0],"xi":0.0}
  // Malformed input throws std::invalid_argument.
  static Potential from_json(const std::string& text);
  std::string to_json() const;

  PotentialKind kind() const noexcept { return kind_; }
  double xi() const noexcept { return xi_; }
  // Meaningful for Harmonic and QuarticAnharmonic only; 0 otherwise.
  double omega() const noexcept { return omega_; }
  double lambda() const noexcept { return lambda_; }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }

  double evaluate(double x) const { return shifted(x - xi_); }
  double derivative(double x) const { return shifted_derivative(x - xi_); }
  double second_derivative(double x) const {
    return shifted_second_derivative(x - xi_);
  }

  // Shifted-frame evaluations U(xi + u) and derivatives with respect to u.
  // Working directly in u keeps the evenness of U exact in floating point.
  double shifted(double u) const;
  double shifted_derivative(double u) const;
  double shifted_second_derivative(double u) const;

  // Samples (x - xi) U'(x) and U''(x) on a symmetric grid (origin excluded)
  // and reports every violating point. samples is the count per side.
  ConvexityReport check_strict_convexity(double half_width, int samples) const;

  LeadingOrder leading_order() const;

 private:
  Potential(PotentialKind kind, double omega, double lambda, double xi,
            std::vector<double> coeffs);

  PotentialKind kind_;
  double omega_;
  double lambda_;
  double xi_;
  std::vector<double> coeffs_;  // a_1 .. a_m
};

}  // namespace vansatz
