#include "lvbec/detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lvbec/errors.hpp"
#include "lvbec/numerics.hpp"
#include "lvbec/spectrum.hpp"

namespace lvbec {
namespace {

using numerics::kGMax;

void require_stable(const MediumParams& medium) {
  const numerics::Extremum m = min_f_squared(medium);
  if (m.value <= 0.0) throw UnstableSpectrum(m.x, m.value);
}

// g·t − |Ω̃ + g·f(g)|; positive exactly on the support.
double theta_argument(double g, double omega_tilde, double speed,
                      const MediumParams& medium) {
  return g * speed - std::abs(omega_tilde + g * f_dimensionless(g, medium));
}

RateResult integrate_rate(double omega_tilde, double speed,
                          const DetectorConfig& det,
                          const MediumParams& medium,
                          const QuadratureSettings& quad) {
  quad.validate();
  RateResult out;
  out.support = support_set_for_speed(omega_tilde, speed, medium, quad);
  for (const SupportInterval& iv : out.support.intervals) {
    const double mid = 0.5 * (iv.g_lo + iv.g_hi);
    const double half = 0.5 * (iv.g_hi - iv.g_lo);
    // g = mid + half·sin(u) turns the Φ^(-1/2) endpoint divergence into a
    // bounded factor cos(u)/sqrt(Φ).
    auto integrand = [&](double u) {
      const double g = mid + half * std::sin(u);
      const double f = f_dimensionless(g, medium);
      const double s = omega_tilde + g * f;
      const double phi = (g * speed - std::abs(s)) * (g * speed + std::abs(s));
      if (!(phi > 0.0)) return 0.0;
      return half * std::cos(u) * g * g / (f * std::sqrt(phi));
    };
    const auto r = numerics::adaptive_gauss_kronrod(
        integrand, -0.5 * std::numbers::pi, 0.5 * std::numbers::pi,
        quad.rel_tol, quad.abs_tol, quad.max_refinements);
    out.value += r.value;
    out.abs_error_estimate += r.abs_error;
    out.converged = out.converged && r.converged;
  }
  if (auto pre = rate_prefactor(det)) out.dimensional_value = *pre * out.value;
  return out;
}

}  // namespace

void DetectorConfig::validate() const {
  std::vector<std::string> errs;
  if (!std::isfinite(omega_tilde)) errs.push_back("omega_tilde must be finite");
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    errs.push_back("beta must be finite and >= 0");
  }
  if (!errs.empty()) throw ValidationError(std::move(errs));
}

void QuadratureSettings::validate() const {
  std::vector<std::string> errs;
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) errs.push_back("rel_tol must be in (0, 1)");
  if (!(abs_tol > 0.0)) errs.push_back("abs_tol must be > 0");
  if (max_refinements <= 0) errs.push_back("max_refinements must be > 0");
  if (scan_points < 16) errs.push_back("scan_points must be >= 16");
  if (!errs.empty()) throw ValidationError(std::move(errs));
}

double theta_radicand(double g, double omega_tilde, double speed,
                      const MediumParams& medium) {
  if (!(g >= 0.0)) throw DomainError("theta_radicand: g must be >= 0");
  const double s = omega_tilde + g * f_dimensionless(g, medium);
  return (g * speed - std::abs(s)) * (g * speed + std::abs(s));
}

SupportSet support_set_for_speed(double omega_tilde, double speed,
                                 const MediumParams& medium,
                                 const QuadratureSettings& quad) {
  medium.validate();
  quad.validate();
  if (!(speed >= 0.0)) throw DomainError("support_set: speed must be >= 0");
  require_stable(medium);

  auto arg = [&](double g) {
    return theta_argument(g, omega_tilde, speed, medium);
  };
  const std::vector<double> grid = numerics::hybrid_grid(
      static_cast<std::size_t>(quad.scan_points), kGMax, 1e-8, 0.1);
  std::vector<double> a(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) a[i] = arg(grid[i]);
  if (a.back() > 0.0) {
    throw DomainError("support_set: support reaches the g cutoff");
  }

  std::vector<SupportInterval> found;
  std::size_t i = 0;
  while (i < grid.size()) {
    if (!(a[i] > 0.0)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < grid.size() && a[j + 1] > 0.0) ++j;
    SupportInterval iv;
    if (i == 0) {
      iv.g_lo = 0.0;
      iv.lo_kind = EndpointKind::Origin;
    } else {
      iv.g_lo = numerics::refine_boundary(arg, grid[i], grid[i - 1]);
    }
    iv.g_hi = numerics::refine_boundary(arg, grid[j], grid[j + 1]);
    found.push_back(iv);
    i = j + 1;
  }

  // A bump of the argument narrower than the scan spacing shows up only as
  // a non-positive sampled local maximum; refine those.
  for (std::size_t k = 1; k + 1 < grid.size(); ++k) {
    if (a[k] > 0.0 || a[k] < a[k - 1] || a[k] < a[k + 1]) continue;
    const auto peak = numerics::golden_minimize(
        [&](double g) { return -arg(g); }, grid[k - 1], grid[k + 1], 1e-14);
    if (!(-peak.value > 0.0)) continue;
    SupportInterval iv;
    iv.g_lo = numerics::refine_boundary(arg, peak.x, grid[k - 1]);
    iv.g_hi = numerics::refine_boundary(arg, peak.x, grid[k + 1]);
    found.push_back(iv);
  }

  std::sort(found.begin(), found.end(),
            [](const SupportInterval& l, const SupportInterval& r) {
              return l.g_lo < r.g_lo;
            });
  SupportSet out;
  for (const SupportInterval& iv : found) {
    if (iv.g_hi - iv.g_lo < kGrazingWidth) {
      out.critical_grazing = true;
      continue;
    }
    if (!out.intervals.empty() && iv.g_lo <= out.intervals.back().g_hi) {
      out.intervals.back().g_hi = std::max(out.intervals.back().g_hi, iv.g_hi);
      continue;
    }
    out.intervals.push_back(iv);
  }
  for (const SupportInterval& iv : out.intervals) {
    out.total_measure += iv.g_hi - iv.g_lo;
  }
  return out;
}

SupportSet support_set(const DetectorConfig& det, const MediumParams& medium,
                       const QuadratureSettings& quad) {
  det.validate();
  return support_set_for_speed(det.omega_tilde, std::tanh(det.beta), medium,
                               quad);
}

double excitation_window(double beta, const MediumParams& medium) {
  if (!(beta >= 0.0)) throw DomainError("excitation_window: beta must be >= 0");
  medium.validate();
  require_stable(medium);
  const double t = std::tanh(beta);
  auto gap = [&](double g) { return g * (t - f_dimensionless(g, medium)); };
  const std::vector<double> grid = numerics::hybrid_grid(4096, kGMax);
  std::size_t best = 0;
  double best_value = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = gap(grid[i]);
    if (v > best_value) {
      best = i;
      best_value = v;
    }
  }
  if (best == 0) return 0.0;
  const auto peak = numerics::golden_minimize(
      [&](double g) { return -gap(g); }, grid[best - 1],
      grid[std::min(best + 1, grid.size() - 1)], 1e-12);
  return std::max({best_value, -peak.value, 0.0});
}

std::optional<double> rate_prefactor(const DetectorConfig& det) {
  if (!det.coupling_g_minus || !det.rho0 || !det.M_star || !det.c0) {
    return std::nullopt;
  }
  const double two_pi_cubed = std::pow(2.0 * std::numbers::pi, 3);
  return *det.rho0 * *det.M_star * *det.coupling_g_minus *
         *det.coupling_g_minus * *det.c0 * *det.c0 / two_pi_cubed;
}

RateResult transition_rate(const DetectorConfig& det,
                           const MediumParams& medium,
                           const QuadratureSettings& quad) {
  det.validate();
  return integrate_rate(det.omega_tilde, std::tanh(det.beta), det, medium,
                        quad);
}

RateResult transition_rate_low_speed(const DetectorConfig& det,
                                     const MediumParams& medium,
                                     const QuadratureSettings& quad) {
  det.validate();
  return integrate_rate(det.omega_tilde, det.beta, det, medium, quad);
}

std::vector<RateRow> rate_curve(double omega_tilde,
                                const std::vector<double>& beta_grid,
                                const MediumParams& medium,
                                const QuadratureSettings& quad,
                                bool low_speed) {
  if (!std::is_sorted(beta_grid.begin(), beta_grid.end())) {
    throw DomainError("rate_curve: beta grid must be ascending");
  }
  std::vector<RateRow> rows;
  rows.reserve(beta_grid.size());
  for (double beta : beta_grid) {
    RateRow row;
    row.beta = beta;
    try {
      DetectorConfig det;
      det.omega_tilde = omega_tilde;
      det.beta = beta;
      const RateResult r = low_speed
                               ? transition_rate_low_speed(det, medium, quad)
                               : transition_rate(det, medium, quad);
      row.rate = r.value;
      row.abs_error = r.abs_error_estimate;
      row.support_measure = r.support.total_measure;
      row.converged = r.converged;
      row.grazing = r.support.critical_grazing;
    } catch (const UnstableSpectrum&) {
      row.unstable = true;
      row.rate = row.abs_error = row.support_measure =
          std::numeric_limits<double>::quiet_NaN();
    } catch (const std::invalid_argument&) {
      row.invalid = true;
      row.rate = row.abs_error = row.support_measure =
          std::numeric_limits<double>::quiet_NaN();
    } catch (const std::domain_error&) {
      row.invalid = true;
      row.rate = row.abs_error = row.support_measure =
          std::numeric_limits<double>::quiet_NaN();
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace lvbec
