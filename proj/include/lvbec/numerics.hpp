#pragma once

// Scalar numerics shared by the spectrum and detector modules:
// sample grids, golden-section search, bracketed root refinement and
// adaptive Gauss-Kronrod quadrature.

#include <cstddef>
#include <functional>
#include <vector>

namespace lvbec::numerics {

/// Upper edge of the dimensionless momentum range examined anywhere.
inline constexpr double kGMax = 10.0;

/// Sorted grid on [0, upper]: 0, then `count / 4 - 1` log-spaced points in
/// [log_lo, split), then linear points up to `upper` inclusive. `count`
/// total points.
std::vector<double> hybrid_grid(std::size_t count, double upper = kGMax,
                                double log_lo = 1e-6, double split = 0.1);

struct Extremum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section minimization of a unimodal `fn` on [lo, hi] until the
/// bracket is narrower than `x_tol`. The best point evaluated is returned.
Extremum golden_minimize(const std::function<double(double)>& fn, double lo,
                         double hi, double x_tol = 1e-10);

/// Refine a sign change of `fn` between `inside` (fn > 0) and `outside`
/// (fn ≤ 0) by bisection until the two points are adjacent doubles or
/// `x_tol` is reached. Returns the last abscissa with fn > 0.
double refine_boundary(const std::function<double(double)>& fn, double inside,
                       double outside, double x_tol = 0.0);

/// Bisection for the sign change of a function known only by sign.
/// `positive_at_lo` is the sign at lo; returns the midpoint of the final
/// bracket, which is narrower than `x_tol`.
double bisect_sign(const std::function<bool(double)>& positive, double lo,
                   double hi, double x_tol, int max_iter = 200);

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  int subdivisions = 0;
  bool converged = true;
};

/// Globally adaptive (7,15) Gauss-Kronrod on [a, b]: the interval with
/// the largest error estimate is bisected until the summed estimate is
/// below max(abs_tol, rel_tol·|value|) or `max_subdivisions` splits
/// have been made.
QuadratureResult adaptive_gauss_kronrod(
    const std::function<double(double)>& fn, double a, double b,
    double rel_tol, double abs_tol, int max_subdivisions);

}  // namespace lvbec::numerics
