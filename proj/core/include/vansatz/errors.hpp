#pragma once

#include <stdexcept>
#include <string>

namespace vansatz {

// Adaptive quadrature ran out of subdivisions before meeting the requested
// tolerance. Carries the best available estimate so callers can decide
// whether the value is still usable.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double best_estimate, double error_bound)
      : std::runtime_error(what),
        best_estimate_(best_estimate),
        error_bound_(error_bound) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double best_estimate_;
  double error_bound_;
};

// A suitable integration or eigensolver domain could not be established:
// either a weight tail never fell below the truncation threshold, or an
// eigenstate still has visible support at the grid boundary.
// suggested_half_width() is a usable retry value (0 if none applies).
class DomainError : public std::runtime_error {
 public:
  DomainError(const std::string& what, double suggested_half_width)
      : std::runtime_error(what),
        suggested_half_width_(suggested_half_width) {}

  double suggested_half_width() const noexcept { return suggested_half_width_; }

 private:
  double suggested_half_width_;
};

// The potential is not strictly convex: (x - xi) U'(x) > 0 failed somewhere,
// or U'' went negative. Derives from std::invalid_argument because a
// non-convex potential is an invalid input to the whole construction.
class ConvexityError : public std::invalid_argument {
 public:
  explicit ConvexityError(const std::string& what)
      : std::invalid_argument(what) {}
};

// Orthonormalization broke down at the given level: the normalization
// radicand went non-positive, meaning double-precision inner products can
// no longer resolve the next polynomial.
class BreakdownError : public std::runtime_error {
 public:
  BreakdownError(const std::string& what, int level)
      : std::runtime_error(what), level_(level) {}

  int level() const noexcept { return level_; }

 private:
  int level_;
};

}  // namespace vansatz
