#include "lvbec/special.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lvbec/errors.hpp"

namespace lvbec {
namespace {

constexpr double kContinuedFractionSwitch = 10.0;
constexpr int kContinuedFractionDepth = 50;

// exp(x²)·erfc(x) with x² split into hi + lo so the exponent carries no
// rounding error; erfc is ulp-accurate until it underflows near x ≈ 26.
double direct_form(double x) {
  const double hi = x * x;
  const double lo = std::fma(x, x, -hi);
  return std::exp(hi) * std::erfc(x) * (1.0 + lo);
}

// Laplace continued fraction
//   w(x) = 1/sqrt(pi) · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// evaluated bottom-up; at x ≥ 10 fifty levels are far past convergence.
double continued_fraction(double x) {
  double tail = x;
  for (int n = kContinuedFractionDepth; n >= 1; --n) {
    tail = x + 0.5 * n / tail;
  }
  return std::numbers::inv_sqrtpi / tail;
}

}  // namespace

double w_scaled(double x) {
  if (!std::isfinite(x)) {
    throw DomainError("w_scaled: non-finite argument");
  }
  if (x < 0.0) {
    throw DomainError("w_scaled: negative argument " + std::to_string(x));
  }
  if (x < kContinuedFractionSwitch) {
    return direct_form(x);
  }
  return continued_fraction(x);
}

}  // namespace lvbec
