#include "lvbec/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

namespace lvbec::numerics {

std::vector<double> hybrid_grid(std::size_t count, double upper,
                                double log_lo, double split) {
  std::vector<double> grid;
  grid.reserve(count);
  grid.push_back(0.0);
  const std::size_t n_log = std::max<std::size_t>(count / 4, 1) - 1;
  const double l0 = std::log(log_lo);
  const double l1 = std::log(split);
  for (std::size_t i = 0; i < n_log; ++i) {
    grid.push_back(std::exp(l0 + (l1 - l0) * double(i) / double(n_log)));
  }
  const std::size_t n_lin = count - grid.size();
  for (std::size_t i = 0; i < n_lin; ++i) {
    const double frac = n_lin > 1 ? double(i) / double(n_lin - 1) : 1.0;
    grid.push_back(split + (upper - split) * frac);
  }
  grid.back() = upper;
  return grid;
}

Extremum golden_minimize(const std::function<double(double)>& fn, double lo,
                         double hi, double x_tol) {
  constexpr double kInvPhi = 0.61803398874989484820;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  Extremum best{c, fc};
  if (fd < best.value) best = {d, fd};
  while (b - a > x_tol) {
    // ≤ keeps the left point on ties, so plateaus resolve to smaller g
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = fn(c);
      if (fc <= best.value) best = {c, fc};
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = fn(d);
      if (fd < best.value) best = {d, fd};
    }
    if (c >= d) break;
  }
  return best;
}

double refine_boundary(const std::function<double(double)>& fn, double inside,
                       double outside, double x_tol) {
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (inside + outside);
    if (mid == inside || mid == outside) break;
    if (std::abs(outside - inside) <= x_tol) break;
    if (fn(mid) > 0.0) {
      inside = mid;
    } else {
      outside = mid;
    }
  }
  return inside;
}

double bisect_sign(const std::function<bool(double)>& positive, double lo,
                   double hi, double x_tol, int max_iter) {
  const bool lo_positive = positive(lo);
  for (int iter = 0; iter < max_iter && hi - lo > x_tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (positive(mid) == lo_positive) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

// Kronrod 15-point abscissae (positive half) and weights, with the
// embedded 7-point Gauss weights on the odd nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod_15(const std::function<double(double)>& fn, double a,
                         double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_center = fn(center);
  double kronrod = f_center * kWgk[7];
  double gauss = f_center * kWg[3];
  double abs_sum = std::abs(kronrod);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = fn(center - dx);
    f2[j] = fn(center + dx);
    const double pair = f1[j] + f2[j];
    kronrod += kWgk[j] * pair;
    abs_sum += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double asc = kWgk[7] * std::abs(f_center - mean);
  for (int j = 0; j < 7; ++j) {
    asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  kronrod *= half;
  gauss *= half;
  abs_sum *= std::abs(half);
  asc *= std::abs(half);

  // QUADPACK error heuristic
  double err = std::abs(kronrod - gauss);
  if (asc != 0.0 && err != 0.0) {
    err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  }
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  if (abs_sum > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * abs_sum, err);
  }
  return {a, b, kronrod, err};
}

}  // namespace

QuadratureResult adaptive_gauss_kronrod(
    const std::function<double(double)>& fn, double a, double b,
    double rel_tol, double abs_tol, int max_subdivisions) {
  std::priority_queue<Segment> queue;
  Segment first = gauss_kronrod_15(fn, a, b);
  double total = first.value;
  double total_err = first.error;
  queue.push(first);
  QuadratureResult result;
  while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (result.subdivisions >= max_subdivisions) {
      result.converged = false;
      break;
    }
    const Segment worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      result.converged = false;
      break;
    }
    queue.pop();
    const Segment left = gauss_kronrod_15(fn, worst.a, mid);
    const Segment right = gauss_kronrod_15(fn, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++result.subdivisions;
  }
  // Re-sum from the leaves so the running updates leave no drift.
  double value = 0.0;
  double err = 0.0;
  while (!queue.empty()) {
    value += queue.top().value;
    err += queue.top().error;
    queue.pop();
  }
  result.value = value;
  result.abs_error = err;
  if (result.converged &&
      err > std::max(abs_tol, rel_tol * std::abs(value))) {
    result.converged = false;
  }
  return result;
}

}  // namespace lvbec::numerics
