#pragma once

#include <optional>
#include <vector>

#include "lvbec/dispersion.hpp"

namespace lvbec {

/// Inertial impurity moving at c₀·tanh(β) through the condensate.
struct DetectorConfig {
  double omega_tilde = 0.0;  ///< Ω/M★; > 0 excitation, < 0 deexcitation
  double beta = 0.0;         ///< rapidity ≥ 0

  // Optional scales for the dimensional rate.
  std::optional<double> coupling_g_minus;
  std::optional<double> rho0;
  std::optional<double> M_star;
  std::optional<double> c0;

  void validate() const;
};

struct QuadratureSettings {
  double rel_tol = 1e-8;
  double abs_tol = 1e-14;
  int max_refinements = 30;
  int scan_points = 8192;

  void validate() const;
};

enum class EndpointKind { ThetaRoot, Origin };

struct SupportInterval {
  double g_lo = 0.0;
  double g_hi = 0.0;
  EndpointKind lo_kind = EndpointKind::ThetaRoot;
  EndpointKind hi_kind = EndpointKind::ThetaRoot;
};

/// Momenta where g·t > |Ω̃ + g·f(g)|, as sorted disjoint intervals.
struct SupportSet {
  std::vector<SupportInterval> intervals;
  double total_measure = 0.0;
  /// Set when an interval narrower than kGrazingWidth was dropped.
  bool critical_grazing = false;

  bool empty() const noexcept { return intervals.empty(); }
};

/// Intervals narrower than this are treated as tangential contact.
inline constexpr double kGrazingWidth = 1e-10;

struct RateResult {
  /// ∫ g²/(f·sqrt(Φ)) dg, i.e. the rate in units of ρ₀M★g₋²c₀²/(2π)³.
  double value = 0.0;
  double abs_error_estimate = 0.0;
  SupportSet support;
  bool converged = true;
  std::optional<double> dimensional_value;
};

/// Φ(g) = (g·t)² − (Ω̃ + g·f(g))², the radicand of the rate integrand,
/// with speed parameter t (tanhβ or its low-speed surrogate β).
double theta_radicand(double g, double omega_tilde, double speed,
                      const MediumParams& medium);

SupportSet support_set(const DetectorConfig& det, const MediumParams& medium,
                       const QuadratureSettings& quad = {});

/// Same support search with an explicit speed parameter t in place of
/// tanhβ.
SupportSet support_set_for_speed(double omega_tilde, double speed,
                                 const MediumParams& medium,
                                 const QuadratureSettings& quad = {});

/// sup_g g·(tanhβ − f(g)) on [0, G_max], clamped at 0: the largest
/// positive Ω̃ with a nonzero excitation rate.
double excitation_window(double beta, const MediumParams& medium);

RateResult transition_rate(const DetectorConfig& det,
                           const MediumParams& medium,
                           const QuadratureSettings& quad = {});

/// Low-speed form: tanhβ replaced by β throughout.
RateResult transition_rate_low_speed(const DetectorConfig& det,
                                     const MediumParams& medium,
                                     const QuadratureSettings& quad = {});

/// ρ₀·M★·g₋²·c₀²/(2π)³ when every scale on the config is present.
std::optional<double> rate_prefactor(const DetectorConfig& det);

struct RateRow {
  double beta = 0.0;
  double rate = 0.0;
  double abs_error = 0.0;
  double support_measure = 0.0;
  bool converged = true;
  bool grazing = false;
  bool unstable = false;
  bool invalid = false;  ///< rejected by a domain check (message dropped)
};

/// Rate over an ascending β grid; failures are per-row flags.
std::vector<RateRow> rate_curve(double omega_tilde,
                                const std::vector<double>& beta_grid,
                                const MediumParams& medium,
                                const QuadratureSettings& quad = {},
                                bool low_speed = false);

}  // namespace lvbec
