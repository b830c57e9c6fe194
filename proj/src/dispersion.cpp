#include "lvbec/dispersion.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lvbec/errors.hpp"
#include "lvbec/special.hpp"

namespace lvbec {

UnstableSpectrum::UnstableSpectrum(double g, double f_squared)
    : std::runtime_error([&] {
        std::ostringstream os;
        os.precision(17);
        os << "unstable spectrum: f^2(" << g << ") = " << f_squared
           << " <= 0";
        return os.str();
      }()),
      g_(g),
      f_squared_(f_squared) {}

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::invalid_argument([&] {
        std::string msg = "validation failed:";
        for (const auto& v : violations) msg += "\n  - " + v;
        return msg;
      }()),
      violations_(std::move(violations)) {}

void MediumParams::validate() const {
  std::vector<std::string> errs;
  if (!(A > 0.0) || !std::isfinite(A)) {
    errs.push_back("A must be finite and > 0 (got " + std::to_string(A) + ")");
  }
  if (!(R >= 0.0 && R <= kRDipolar)) {
    errs.push_back("R must lie in [0, sqrt(pi/2)] (got " + std::to_string(R) +
                   ")");
  }
  if (!errs.empty()) throw ValidationError(std::move(errs));
}

void PhysicalParams::validate() const {
  std::vector<std::string> errs;
  auto positive = [&](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      errs.push_back(std::string(name) + " must be finite and > 0");
    }
  };
  positive(m, "m");
  positive(omega_z, "omega_z");
  positive(rho0, "rho0");
  if (!(omega >= 0.0)) errs.push_back("omega must be >= 0 (0 = unset)");
  if (!(g_d >= 0.0)) errs.push_back("g_d must be >= 0");
  if (!std::isfinite(g_c)) errs.push_back("g_c must be finite");
  if (!(g_c + 2.0 * g_d > 0.0)) {
    errs.push_back("g_c + 2 g_d must be > 0 (effective coupling positive)");
  }
  if (g_d == 0.0 && g_c <= 0.0) {
    errs.push_back("R undefined: g_d = 0 requires g_c > 0");
  }
  if (!errs.empty()) throw ValidationError(std::move(errs));
}

double f_squared(double g, const MediumParams& medium) {
  if (!(g >= 0.0)) throw DomainError("f_squared: g must be >= 0");
  if (g == 0.0) return 1.0;
  const double root_A = std::sqrt(medium.A);
  const double dip = 1.5 * medium.R * root_A * g *
                     w_scaled(root_A * std::numbers::sqrt2 * 0.5 * g);
  return 1.0 - dip + 0.25 * g * g;
}

double f_dimensionless(double g, const MediumParams& medium) {
  const double F = f_squared(g, medium);
  if (!(F > 0.0)) throw UnstableSpectrum(g, F);
  return std::sqrt(F);
}

double v2d_kernel(double k, const DerivedScales& scales) {
  if (!(k >= 0.0)) throw DomainError("v2d_kernel: k must be >= 0");
  const double kd = k * scales.d_z;
  return scales.g0_eff *
         (1.0 - 1.5 * scales.medium.R * kd *
                    w_scaled(kd / std::numbers::sqrt2));
}

namespace {

struct ModeEnergies {
  double H = 0.0;
  double A = 0.0;
  double omega_sq = 0.0;
};

ModeEnergies mode_energies(double k, const DerivedScales& scales) {
  ModeEnergies e;
  e.H = k * k / (2.0 * scales.m);
  e.A = scales.rho0 * v2d_kernel(k, scales);
  e.omega_sq = e.H * (e.H + 2.0 * e.A);
  return e;
}

}  // namespace

double omega_physical(double k, const DerivedScales& scales) {
  if (!(k >= 0.0)) throw DomainError("omega_physical: k must be >= 0");
  const ModeEnergies e = mode_energies(k, scales);
  if (e.omega_sq < 0.0) {
    throw UnstableSpectrum(scales.c0 * k / scales.M_star,
                           f_squared(scales.c0 * k / scales.M_star,
                                     scales.medium));
  }
  return std::sqrt(e.omega_sq);
}

BogoliubovPair bogoliubov_uv(double k, const DerivedScales& scales) {
  if (!(k > 0.0)) throw DomainError("bogoliubov_uv: k must be > 0");
  const ModeEnergies e = mode_energies(k, scales);
  if (!(e.omega_sq > 0.0) || !(e.H + 2.0 * e.A > 0.0)) {
    const double g = scales.c0 * k / scales.M_star;
    throw UnstableSpectrum(g, f_squared(g, scales.medium));
  }
  BogoliubovPair p;
  p.H_k = e.H;
  p.A_k = e.A;
  p.omega_k = std::sqrt(e.omega_sq);
  const double a = std::sqrt(e.H);
  const double b = std::sqrt(e.H + 2.0 * e.A);
  const double denom = 2.0 * std::sqrt(p.omega_k);
  p.u = (a + b) / denom;
  p.v = (a - b) / denom;
  return p;
}

DerivedScales derive_scales(const PhysicalParams& phys, double aspect_warning) {
  phys.validate();
  DerivedScales s;
  s.m = phys.m;
  s.rho0 = phys.rho0;
  s.d_z = 1.0 / std::sqrt(phys.m * phys.omega_z);
  s.g0_eff = (phys.g_c + 2.0 * phys.g_d) /
             (std::sqrt(2.0 * std::numbers::pi) * s.d_z);
  const double c0_sq = s.g0_eff * phys.rho0 / phys.m;
  if (!(c0_sq > 0.0)) {
    throw DomainError("derive_scales: nonpositive c0^2");
  }
  s.c0 = std::sqrt(c0_sq);
  s.M_star = phys.m * c0_sq;
  s.medium.A = s.g0_eff * phys.rho0 / phys.omega_z;
  // R = sqrt(pi/2)/(1 + g_c/(2 g_d)) rewritten to stay finite as g_d → 0.
  s.medium.R = kRDipolar * 2.0 * phys.g_d / (2.0 * phys.g_d + phys.g_c);
  s.omega_z_required = 2.0 * phys.m * phys.g_d * phys.g_d * phys.rho0 *
                       phys.rho0 /
                       (std::numbers::pi * kCriticalAReference *
                        kCriticalAReference);
  s.trap_condition_ok = phys.omega_z >= s.omega_z_required;
  if (!s.trap_condition_ok) {
    std::ostringstream os;
    os.precision(6);
    os << "trap condition violated: omega_z = " << phys.omega_z
       << " < 2 m g_d^2 rho0^2/(pi A_c^2) = " << s.omega_z_required;
    s.warnings.push_back(os.str());
  }
  if (phys.omega > 0.0 && phys.omega_z / phys.omega < aspect_warning) {
    std::ostringstream os;
    os.precision(6);
    os << "weak axial confinement: kappa = omega_z/omega = "
       << phys.omega_z / phys.omega << " < " << aspect_warning;
    s.warnings.push_back(os.str());
  }
  return s;
}

}  // namespace lvbec
