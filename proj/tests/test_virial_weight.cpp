#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "vansatz/virial_weight.hpp"

using vansatz::ConvexityError;
using vansatz::GFunction;
using vansatz::GMode;
using vansatz::Potential;
using vansatz::QuadratureSpec;
using vansatz::VirialWeight;

namespace {

const QuadratureSpec kDefault{};

// Closed form for the quartic anharmonic oscillator:
// g = (omega^3 / 12 lambda) [ (1 + 4 lambda u^2 / omega^2)^{3/2} - 1 ].
double aho_g_closed(double omega, double lambda, double u) {
  const double r = 1.0 + 4.0 * lambda * u * u / (omega * omega);
  return omega * omega * omega / (12.0 * lambda) * (std::pow(r, 1.5) - 1.0);
}

}  // namespace

TEST_CASE("mode selection and closed-form values") {
  const GFunction ho = GFunction::build(Potential::harmonic(1.0, 0.0));
  CHECK(ho.mode() == GMode::ClosedFormHO);
  CHECK(ho.value(2.0) == doctest::Approx(2.0).epsilon(1e-15));  // omega u^2/2

  const GFunction aho =
      GFunction::build(Potential::quartic_anharmonic(1.0, 0.25, 0.0));
  CHECK(aho.mode() == GMode::ClosedFormAHO);
  CHECK(aho.value(0.0) == 0.0);
  // with omega^3/12 lambda = 1/3: g(u) = [(1+u^2)^{3/2} - 1] / 3
  CHECK(aho.value(1.0) ==
        doctest::Approx((std::pow(2.0, 1.5) - 1.0) / 3.0).epsilon(1e-14));

  const GFunction poly =
      GFunction::build(Potential::even_polynomial({0.5, 0.25}, 0.0));
  CHECK(poly.mode() == GMode::Quadrature);
}

TEST_CASE("quadrature mode reproduces the quartic closed form") {
  for (double lambda : {0.05, 0.25, 0.5, 1.0, 2.5, 5.0}) {
    const Potential p = Potential::quartic_anharmonic(1.0, lambda, 0.0);
    const GFunction numeric = GFunction::build(p, GMode::Quadrature);
    for (double u : {0.5, 1.0, 2.0}) {
      CHECK(numeric.value(u) ==
            doctest::Approx(aho_g_closed(1.0, lambda, u)).epsilon(1e-10));
    }
  }
}

TEST_CASE("g values at special points") {
  CHECK(GFunction::build(Potential::quartic_anharmonic(1.0, 3.0, 0.0)).value(0.0) ==
        0.0);
  CHECK(GFunction::build(Potential::even_polynomial({0.5}, 0.0)).value(0.0) == 0.0);
  CHECK(GFunction::build(Potential::harmonic(2.0, 0.0)).value(1.0) ==
        doctest::Approx(1.0).epsilon(1e-15));
  // the lambda -> 0 limit collapses to the harmonic form without cancellation
  const GFunction tiny =
      GFunction::build(Potential::quartic_anharmonic(1.0, 1e-8, 0.0));
  CHECK(tiny.value(1.0) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("g derivative sign convention") {
  const GFunction ho = GFunction::build(Potential::harmonic(1.0, 0.0));
  CHECK(ho.derivative(-2.0) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(ho.derivative(0.0) == 0.0);

  const GFunction aho =
      GFunction::build(Potential::quartic_anharmonic(1.0, 0.5, 0.0));
  // sqrt(u (omega^2 u + 4 lambda u^3)) at u = 1
  CHECK(aho.derivative(1.0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  CHECK(aho.derivative(0.0) == 0.0);
}

TEST_CASE("g second derivative analytic and by differencing") {
  const Potential p = Potential::quartic_anharmonic(1.0, 0.5, 0.0);
  const GFunction g = GFunction::build(p);
  for (double u : {-2.0, -0.7, 0.4, 1.0, 3.0}) {
    // (omega^2 + 8 lambda u^2) / sqrt(omega^2 + 4 lambda u^2)
    const double expected =
        (1.0 + 8.0 * 0.5 * u * u) / std::sqrt(1.0 + 4.0 * 0.5 * u * u);
    CHECK(g.second_derivative(u) == doctest::Approx(expected).epsilon(1e-13));
    const double h = 1e-6;
    const double fd = (g.derivative(u + h) - g.derivative(u - h)) / (2.0 * h);
    CHECK(g.second_derivative(u) == doctest::Approx(fd).epsilon(1e-7));
  }
  // quadratic minimum: the origin limit is sqrt(2 a_1) = omega
  CHECK(g.second_derivative(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  // quartic-dominated minimum: the limit vanishes
  const GFunction flat =
      GFunction::build(Potential::even_polynomial({0.0, 1.0}, 0.0));
  CHECK(flat.second_derivative(0.0) == 0.0);
}

TEST_CASE("closed forms require the matching kind") {
  const Potential ho = Potential::harmonic(1.0, 0.0);
  const Potential aho = Potential::quartic_anharmonic(1.0, 1.0, 0.0);
  CHECK_THROWS_AS(GFunction::build(aho, GMode::ClosedFormHO),
                  std::invalid_argument);
  CHECK_THROWS_AS(GFunction::build(ho, GMode::ClosedFormAHO),
                  std::invalid_argument);
}

TEST_CASE("non-convex potential is rejected at g build") {
  // convex near 0 but turns over further out
  const Potential rim = Potential::even_polynomial({0.5, -0.05}, 0.0);
  CHECK_THROWS_AS(GFunction::build(rim), ConvexityError);
}

TEST_CASE("weight normalization") {
  const VirialWeight w1 = VirialWeight::build(
      GFunction::build(Potential::harmonic(1.0, 0.0)), kDefault);
  CHECK(w1.normalization() ==
        doctest::Approx(std::pow(1.0 / std::numbers::pi, 0.25)).epsilon(1e-12));

  const VirialWeight w4 = VirialWeight::build(
      GFunction::build(Potential::harmonic(4.0, 0.0)), kDefault);
  CHECK(w4.normalization() ==
        doctest::Approx(std::pow(4.0 / std::numbers::pi, 0.25)).epsilon(1e-12));

  // self-consistency: integral of sigma over the truncation domain is 1
  const VirialWeight waho = VirialWeight::build(
      GFunction::build(Potential::quartic_anharmonic(1.0, 0.05, 0.0)), kDefault);
  const double total =
      vansatz::integrate_finite([&](double u) { return waho.sigma(u); },
                                {waho.domain().lo, 0.0}, kDefault) +
      vansatz::integrate_finite([&](double u) { return waho.sigma(u); },
                                {0.0, waho.domain().hi}, kDefault);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("harmonic weight is the exact Gaussian ground state") {
  for (double omega : {0.5, 1.0, 4.0}) {
    const VirialWeight w = VirialWeight::build(
        GFunction::build(Potential::harmonic(omega, 0.0)), kDefault);
    const double amp = std::pow(omega / std::numbers::pi, 0.25);
    for (double u = -4.0; u <= 4.0; u += 0.25) {
      const double exact = amp * std::exp(-0.5 * omega * u * u);
      CHECK(std::abs(w.chi(u) - exact) < 1e-12);
      CHECK(w.sigma(u) == doctest::Approx(w.chi(u) * w.chi(u)).epsilon(1e-14));
    }
  }
}

TEST_CASE("g-function grid invariants") {
  const Potential pots[] = {
      Potential::harmonic(1.0, 0.0),
      Potential::quartic_anharmonic(1.0, 0.05, 0.0),
      Potential::quartic_anharmonic(1.0, 5.0, 0.0),
      Potential::even_polynomial({0.3, 0.1, 0.02}, 0.0),
  };
  for (const Potential& p : pots) {
    const GFunction g = GFunction::build(p);
    const VirialWeight w = VirialWeight::build(g, kDefault);
    const double top = w.domain().hi;
    double prev_chi = w.chi(0.0);
    for (int i = 1; i <= 64; ++i) {
      const double u = top * i / 64.0;
      // evenness
      CHECK(std::abs(g.value(u) - g.value(-u)) <= 1e-12 * std::max(1.0, g.value(u)));
      // monotone growth away from the origin
      CHECK(g.derivative(u) * u >= 0.0);
      // strict convexity away from the origin
      CHECK(g.second_derivative(u) > 0.0);
      // chi decreases outward
      const double cur_chi = w.chi(u);
      CHECK(cur_chi < prev_chi);
      prev_chi = cur_chi;
      // local virial relation: [(ln chi^2)']^2 = 4 u U'(xi+u)
      const double lhs = 4.0 * g.derivative(u) * g.derivative(u);
      const double rhs = 4.0 * u * p.shifted_derivative(u);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    }
  }
}

TEST_CASE("inflection points of the weight") {
  const VirialWeight w1 = VirialWeight::build(
      GFunction::build(Potential::harmonic(1.0, 0.0)), kDefault);
  const auto pair1 = w1.inflection_points();
  REQUIRE(pair1.has_value());
  // g'^2 = g'' reads omega^2 u^2 = omega, so u_r = 1/sqrt(omega)
  CHECK(pair1->second == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(pair1->first == doctest::Approx(-1.0).epsilon(1e-8));

  const VirialWeight w4 = VirialWeight::build(
      GFunction::build(Potential::harmonic(4.0, 0.0)), kDefault);
  const auto pair4 = w4.inflection_points();
  REQUIRE(pair4.has_value());
  CHECK(pair4->second == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(pair4->first == -pair4->second);
}
