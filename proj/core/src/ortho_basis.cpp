#include "vansatz/ortho_basis.hpp"

#include <cmath>
#include <utility>

#include <json.hpp>

namespace vansatz {

namespace {

// Inner product <f> = int f(u) sigma_v(u) du over the weight's truncation
// domain, always split at u = 0 (both for the g' kink and for exact parity
// cancellation between the half-axes).
double inner(const VirialWeight& w, const QuadratureSpec& spec,
             const std::function<double(double)>& f) {
  const auto integrand = [&](double u) { return f(u) * w.sigma(u); };
  const Interval dom = w.domain();
  return integrate_finite(integrand, {dom.lo, 0.0}, spec) +
         integrate_finite(integrand, {0.0, dom.hi}, spec);
}

double horner(const std::vector<double>& coeffs, double u) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * u + *it;
  }
  return acc;
}

void check_level_request(int nmax) {
  if (nmax < 0) {
    throw std::invalid_argument("ortho basis: nmax must be non-negative");
  }
  if (nmax > OrthoBasis::kMaxLevel) {
    throw std::invalid_argument(
        "ortho basis: nmax exceeds the supported maximum of " +
        std::to_string(OrthoBasis::kMaxLevel) +
        " (orthogonality degrades beyond it in double precision)");
  }
}

}  // namespace

OrthoBasis::OrthoBasis(VirialWeight w, std::vector<RecurrenceStep> steps,
                       std::vector<std::vector<double>> alpha)
    : w_(std::move(w)), steps_(std::move(steps)), alpha_(std::move(alpha)) {}

OrthoBasis OrthoBasis::build(const VirialWeight& w, int nmax,
                             const QuadratureSpec& spec) {
  check_level_request(nmax);

  std::vector<RecurrenceStep> steps;
  std::vector<std::vector<double>> alpha;
  alpha.push_back({1.0});  // phi_0 = 1

  // Evaluates phi_k through the steps built so far.
  const auto phi = [&steps](int k, double u) {
    double prev = 0.0;
    double cur = 1.0;
    for (int i = 0; i < k; ++i) {
      const double next =
          steps[i].beta * (u * cur - steps[i].offdiag * prev);
      prev = cur;
      cur = next;
    }
    return cur;
  };

  for (int n = 1; n <= nmax; ++n) {
    const double m2 = inner(w, spec, [&](double u) {
      const double p = phi(n - 1, u);
      return u * u * p * p;
    });
    // The cross term <u phi_{n-1} phi_{n-2}> has even parity and survives;
    // the diagonal term <u phi_{n-1}^2> is odd and vanishes for the even
    // weight. The recurrence uses the exact zero; the quadrature value is
    // kept as a parity diagnostic.
    const double offdiag =
        n == 1 ? 0.0 : inner(w, spec, [&](double u) {
          return u * phi(n - 1, u) * phi(n - 2, u);
        });
    const double diag = inner(w, spec, [&](double u) {
      const double p = phi(n - 1, u);
      return u * p * p;
    });

    const double radicand = m2 - offdiag * offdiag;
    if (!(radicand > 0.0)) {
      throw BreakdownError(
          "ortho basis: normalization radicand went non-positive at level " +
              std::to_string(n),
          n);
    }
    const double beta = 1.0 / std::sqrt(radicand);
    steps.push_back({beta, offdiag, diag});

    std::vector<double> next(n + 1, 0.0);
    for (int j = 0; j <= n; ++j) {
      double val = j > 0 ? alpha[n - 1][j - 1] : 0.0;
      if (n >= 2 && j <= n - 2) {
        val -= offdiag * alpha[n - 2][j];
      }
      next[j] = beta * val;
    }
    alpha.push_back(std::move(next));
  }

  return OrthoBasis(w, std::move(steps), std::move(alpha));
}

OrthoBasis OrthoBasis::gram_schmidt(const VirialWeight& w, int nmax,
                                    const QuadratureSpec& spec) {
  check_level_request(nmax);

  std::vector<std::vector<double>> alpha;
  for (int n = 0; n <= nmax; ++n) {
    // Start from the monomial u^n and project out every lower level.
    std::vector<double> raw(n + 1, 0.0);
    raw[n] = 1.0;
    for (int k = 0; k < n; ++k) {
      if ((n - k) % 2 != 0) {
        continue;  // odd-parity overlap vanishes
      }
      const double overlap = inner(w, spec, [&](double u) {
        return std::pow(u, n) * horner(alpha[k], u);
      });
      for (int j = 0; j <= k; ++j) {
        raw[j] -= overlap * alpha[k][j];
      }
    }
    const double norm2 = inner(w, spec, [&](double u) {
      const double v = horner(raw, u);
      return v * v;
    });
    if (!(norm2 > 0.0)) {
      throw BreakdownError(
          "ortho basis: Gram-Schmidt norm went non-positive at level " +
              std::to_string(n),
          n);
    }
    const double inv_norm = 1.0 / std::sqrt(norm2);
    for (double& c : raw) {
      c *= inv_norm;
    }
    alpha.push_back(std::move(raw));
  }

  // Reconstruct the recurrence data from the finished polynomials so the
  // recurrence evaluator works on this path too. The normalization factor
  // is the ratio of consecutive leading coefficients.
  std::vector<RecurrenceStep> steps;
  for (int n = 1; n <= nmax; ++n) {
    const double beta = alpha[n][n] / alpha[n - 1][n - 1];
    const double offdiag =
        n == 1 ? 0.0 : inner(w, spec, [&](double u) {
          return u * horner(alpha[n - 1], u) * horner(alpha[n - 2], u);
        });
    const double diag = inner(w, spec, [&](double u) {
      const double v = horner(alpha[n - 1], u);
      return u * v * v;
    });
    steps.push_back({beta, offdiag, diag});
  }

  return OrthoBasis(w, std::move(steps), std::move(alpha));
}

double OrthoBasis::eval(int n, double u) const {
  if (n < 0 || n > nmax()) {
    throw std::invalid_argument("ortho basis: level out of range");
  }
  double prev = 0.0;
  double cur = 1.0;
  for (int i = 0; i < n; ++i) {
    const double next = steps_[i].beta * (u * cur - steps_[i].offdiag * prev);
    prev = cur;
    cur = next;
  }
  return cur;
}

double OrthoBasis::eval_derivative(int n, double u) const {
  if (n < 0 || n > nmax()) {
    throw std::invalid_argument("ortho basis: level out of range");
  }
  // Differentiated recurrence, advanced alongside the values:
  // phi_n' = beta_n (phi_{n-1} + u phi_{n-1}' - offdiag phi_{n-2}').
  double prev = 0.0;
  double cur = 1.0;
  double dprev = 0.0;
  double dcur = 0.0;
  for (int i = 0; i < n; ++i) {
    const double next = steps_[i].beta * (u * cur - steps_[i].offdiag * prev);
    const double dnext =
        steps_[i].beta * (cur + u * dcur - steps_[i].offdiag * dprev);
    prev = cur;
    cur = next;
    dprev = dcur;
    dcur = dnext;
  }
  return dcur;
}

double OrthoBasis::eval_monomial(int n, double u) const {
  if (n < 0 || n > nmax()) {
    throw std::invalid_argument("ortho basis: level out of range");
  }
  return horner(alpha_[n], u);
}

const std::vector<double>& OrthoBasis::monomial_coeffs(int n) const {
  if (n < 0 || n > nmax()) {
    throw std::invalid_argument("ortho basis: level out of range");
  }
  return alpha_[n];
}

const RecurrenceStep& OrthoBasis::step(int n) const {
  if (n < 1 || n > nmax()) {
    throw std::invalid_argument("ortho basis: recurrence step out of range");
  }
  return steps_[n - 1];
}

double OrthoBasis::virial_condition_residual(int n,
                                             const QuadratureSpec& spec) const {
  if (n < 0 || n > nmax()) {
    throw std::invalid_argument("ortho basis: level out of range");
  }
  if (n < 2) {
    return 0.0;  // phi'' is identically zero
  }
  std::vector<double> dd(n - 1, 0.0);
  for (int j = 0; j + 2 <= n; ++j) {
    dd[j] = (j + 2.0) * (j + 1.0) * alpha_[n][j + 2];
  }
  const auto integrand = [&](double u) {
    return horner(alpha_[n], u) * horner(dd, u) * w_.sigma(u);
  };
  // The true value is zero while phi_n phi_n'' swings over a range of
  // hundreds at high n, so panel roundoff can sit above the absolute
  // tolerance and exhaust the subdivision budget. The best estimate plus
  // its unresolved bound is still a valid residual magnitude, so fold the
  // bound in instead of failing: an actually unresolved integral then
  // shows up as a large residual rather than a silent pass.
  const auto half = [&](double lo, double hi) {
    try {
      return std::pair<double, double>{
          integrate_finite(integrand, {lo, hi}, spec), 0.0};
    } catch (const AccuracyError& e) {
      return std::pair<double, double>{e.best_estimate(), e.error_bound()};
    }
  };
  const Interval dom = w_.domain();
  const auto [lo_val, lo_err] = half(dom.lo, 0.0);
  const auto [hi_val, hi_err] = half(0.0, dom.hi);
  const double value = lo_val + hi_val;
  return std::copysign(std::abs(value) + lo_err + hi_err, value);
}

std::string OrthoBasis::dump_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (int n = 0; n <= nmax(); ++n) {
    nlohmann::json entry;
    entry["n"] = n;
    entry["beta_n"] = n >= 1 ? steps_[n - 1].beta : 0.0;
    entry["offdiag"] = n >= 1 ? steps_[n - 1].offdiag : 0.0;
    entry["alpha"] = alpha_[n];
    out.push_back(entry);
  }
  return out.dump(2);
}

double weighted_moment(const VirialWeight& w, int n,
                       const QuadratureSpec& spec) {
  if (n < 0) {
    throw std::invalid_argument("weighted_moment: order must be non-negative");
  }
  if (n % 2 != 0) {
    return 0.0;  // odd moment of an even weight
  }
  return inner(w, spec, [n](double u) { return std::pow(u, n); });
}

}  // namespace vansatz
