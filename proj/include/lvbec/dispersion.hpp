#pragma once

#include <string>
#include <vector>

namespace lvbec {

/// R at DDI dominance (g_d/g_c → ∞).
inline constexpr double kRDipolar = 1.2533141373155002512;  // sqrt(pi/2)
/// Threshold A above which the DDI-dominated spectrum goes unstable.
inline constexpr double kCriticalAReference = 3.4454;

/// Dimensionless condensate description that fully determines f(g).
struct MediumParams {
  double A = 1.0;  ///< effective chemical potential g0_eff·ρ₀/ω_z, > 0
  double R = 0.0;  ///< dipolar ratio in [0, sqrt(pi/2)]

  /// Throws ValidationError when A ≤ 0 or R is outside [0, sqrt(pi/2)].
  void validate() const;
};

/// Lab-frame inputs in a consistent unit system with ħ = 1.
struct PhysicalParams {
  double m = 1.0;        ///< particle mass
  double omega = 0.0;    ///< radial trap frequency (advisory only; 0 = unset)
  double omega_z = 1.0;  ///< axial trap frequency
  double rho0 = 1.0;     ///< 2D condensate density
  double g_c = 0.0;      ///< contact coupling
  double g_d = 0.0;      ///< dipolar coupling

  void validate() const;
};

struct DerivedScales {
  double g0_eff = 0.0;
  double d_z = 0.0;
  double c0 = 0.0;
  double M_star = 0.0;
  double rho0 = 0.0;
  double m = 0.0;
  MediumParams medium;

  /// ω_z ≥ 2 m g_d² ρ₀² / (π A_c²), with A_c the DDI reference threshold.
  bool trap_condition_ok = true;
  double omega_z_required = 0.0;
  /// Non-fatal remarks (weak confinement, failed trap condition).
  std::vector<std::string> warnings;
};

struct BogoliubovPair {
  double u = 0.0;
  double v = 0.0;
  double omega_k = 0.0;
  double H_k = 0.0;  ///< k²/2m
  double A_k = 0.0;  ///< ρ₀·V2D(k)
};

/// Radicand F(g) = f(g)²; may be negative (unstable at g). Throws
/// DomainError for g < 0.
double f_squared(double g, const MediumParams& medium);

/// f(g) = sqrt(F(g)); throws UnstableSpectrum when F(g) ≤ 0.
double f_dimensionless(double g, const MediumParams& medium);

/// Quasi-2D Fourier-space interaction V2D(k) in energy·length².
double v2d_kernel(double k, const DerivedScales& scales);

/// ω_k = sqrt(H_k² + 2 H_k A_k); throws UnstableSpectrum if the radicand
/// is negative.
double omega_physical(double k, const DerivedScales& scales);

/// Bogoliubov mode coefficients at k > 0.
BogoliubovPair bogoliubov_uv(double k, const DerivedScales& scales);

/// Aspect ratio ω_z/ω below which derive_scales emits a warning.
inline constexpr double kDefaultAspectWarning = 10.0;

DerivedScales derive_scales(const PhysicalParams& phys,
                            double aspect_warning = kDefaultAspectWarning);

}  // namespace lvbec
