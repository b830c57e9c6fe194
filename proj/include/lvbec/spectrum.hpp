#pragma once

#include <optional>
#include <string_view>

#include "lvbec/dispersion.hpp"
#include "lvbec/numerics.hpp"

namespace lvbec {

enum class SpectrumClass {
  MonotoneSuperluminal,  ///< f ≥ 1 everywhere
  SubluminalDip,         ///< f dips below 1, g·f monotone
  Rotonized,             ///< g·f has an interior maxon then roton minimum
  Unstable,              ///< f² < 0 somewhere
};

std::string_view to_string(SpectrumClass c);

struct SpectrumFeatures {
  double f_c = 1.0;       ///< inf f over g ≥ 0
  double g_at_min = 0.0;  ///< argmin (smallest g on ties)
  std::optional<double> beta_c;  ///< arctanh(f_c); nullopt when f_c ≥ 1
  SpectrumClass classification = SpectrumClass::MonotoneSuperluminal;
  double min_f_squared = 1.0;
  /// Maxon/roton locations in g·f when rotonized.
  std::optional<double> g_maxon;
  std::optional<double> g_roton;
};

/// Signed global minimum of f²(g) on [0, G_max]; never throws for a valid
/// medium.
numerics::Extremum min_f_squared(const MediumParams& medium);

struct MinF {
  double g_at_min = 0.0;
  double f_c = 1.0;
};

/// Global minimum of f; throws UnstableSpectrum when f² < 0 somewhere.
MinF min_f(const MediumParams& medium);

/// β_c = arctanh(f_c), or nullopt when f_c ≥ 1 (never excited at any
/// subsonic rapidity).
std::optional<double> critical_rapidity(const MediumParams& medium);

struct CriticalAResult {
  double A_c = 0.0;
  /// Whether A ↦ min_g f² was nonincreasing on the sampled A grid.
  bool monotone_verified = true;
};

/// Smallest A at which min_g f²(g; A, R) reaches 0. Throws NoInstability
/// when R admits none (R ≤ (2/3)·sqrt(pi/2)) and DomainError for invalid
/// R or tol.
CriticalAResult critical_A(double R, double tol = 1e-10);

SpectrumFeatures classify(const MediumParams& medium);

}  // namespace lvbec
