#include "lvbec/spectrum.hpp"

#include <cmath>
#include <vector>

#include "lvbec/errors.hpp"

namespace lvbec {
namespace {

constexpr std::size_t kScanPoints = 4096;
constexpr double kArgTol = 1e-10;
// Below this margin from 1, f_c is treated as 1 (keeps arctanh away from
// its pole).
constexpr double kUnitMargin = 1e-12;

const std::vector<double>& scan_grid() {
  static const std::vector<double> grid =
      numerics::hybrid_grid(kScanPoints, numerics::kGMax);
  return grid;
}

// Golden refinement of a grid extremum at index i of `grid`.
numerics::Extremum refine_min(const std::function<double(double)>& fn,
                              const std::vector<double>& grid, std::size_t i,
                              double grid_value) {
  const double lo = grid[i - 1];
  const double hi = grid[std::min(i + 1, grid.size() - 1)];
  numerics::Extremum best = numerics::golden_minimize(fn, lo, hi, kArgTol);
  if (grid_value < best.value) best = {grid[i], grid_value};
  return best;
}

}  // namespace

std::string_view to_string(SpectrumClass c) {
  switch (c) {
    case SpectrumClass::MonotoneSuperluminal:
      return "monotone-superluminal";
    case SpectrumClass::SubluminalDip:
      return "subluminal-dip";
    case SpectrumClass::Rotonized:
      return "rotonized";
    case SpectrumClass::Unstable:
      return "unstable";
  }
  return "unknown";
}

numerics::Extremum min_f_squared(const MediumParams& medium) {
  medium.validate();
  const auto& grid = scan_grid();
  std::size_t best = 0;
  double best_value = f_squared(grid[0], medium);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = f_squared(grid[i], medium);
    if (v < best_value) {
      best = i;
      best_value = v;
    }
  }
  if (best == 0) return {0.0, best_value};
  return refine_min([&](double g) { return f_squared(g, medium); }, grid,
                    best, best_value);
}

MinF min_f(const MediumParams& medium) {
  const numerics::Extremum m = min_f_squared(medium);
  if (m.value < 0.0) throw UnstableSpectrum(m.x, m.value);
  return {m.x, std::sqrt(m.value)};
}

std::optional<double> critical_rapidity(const MediumParams& medium) {
  const MinF m = min_f(medium);
  if (m.f_c >= 1.0 - kUnitMargin) return std::nullopt;
  return std::atanh(m.f_c);
}

CriticalAResult critical_A(double R, double tol) {
  if (!(tol > 0.0)) throw DomainError("critical_A: tol must be > 0");
  if (!(R >= 0.0 && R <= kRDipolar)) {
    throw DomainError("critical_A: R must lie in [0, sqrt(pi/2)]");
  }
  // x·w(x) < 1/sqrt(pi) bounds the dip term, so
  // f² > 1 − (3R/2)·sqrt(2/pi) + g²/4, positive for R ≤ (2/3)·sqrt(pi/2).
  if (R <= 2.0 / 3.0 * kRDipolar) {
    throw NoInstability("critical_A: no instability for R <= (2/3) sqrt(pi/2)");
  }
  auto min_F = [R](double A) { return min_f_squared({A, R}).value; };

  constexpr int kSamples = 33;
  constexpr double kLo = 1e-3;
  constexpr double kHi = 64.0;
  constexpr double kCeiling = 1e8;
  CriticalAResult result;
  std::vector<double> A_grid(kSamples);
  std::vector<double> F_grid(kSamples);
  for (int i = 0; i < kSamples; ++i) {
    A_grid[i] = kLo * std::pow(kHi / kLo, double(i) / (kSamples - 1));
    F_grid[i] = min_F(A_grid[i]);
    if (i > 0 && F_grid[i] > F_grid[i - 1]) result.monotone_verified = false;
  }

  double lo = 0.0;
  double hi = 0.0;
  bool bracketed = false;
  for (int i = 0; i < kSamples; ++i) {
    if (F_grid[i] <= 0.0) {
      if (i == 0) return {A_grid[0], result.monotone_verified};
      lo = A_grid[i - 1];
      hi = A_grid[i];
      bracketed = true;
      break;
    }
  }
  if (!bracketed) {
    // Close to the R bound A_c exceeds the default bracket.
    lo = kHi;
    double prev_F = F_grid.back();
    for (double A = 2.0 * kHi; A <= kCeiling; A *= 2.0) {
      const double F = min_F(A);
      if (F > prev_F) result.monotone_verified = false;
      prev_F = F;
      if (F <= 0.0) {
        hi = A;
        bracketed = true;
        break;
      }
      lo = A;
    }
    if (!bracketed) {
      throw NoInstability("critical_A: no instability found below A = 1e8");
    }
  }
  result.A_c = numerics::bisect_sign([&](double A) { return min_F(A) > 0.0; },
                                     lo, hi, tol);
  return result;
}

SpectrumFeatures classify(const MediumParams& medium) {
  SpectrumFeatures out;
  const numerics::Extremum m = min_f_squared(medium);
  out.min_f_squared = m.value;
  out.g_at_min = m.x;
  if (m.value < 0.0) {
    out.classification = SpectrumClass::Unstable;
    out.f_c = 0.0;
    out.beta_c = 0.0;
    return out;
  }
  out.f_c = std::sqrt(m.value);
  if (out.f_c >= 1.0 - kUnitMargin) {
    out.classification = SpectrumClass::MonotoneSuperluminal;
    return out;
  }
  out.beta_c = std::atanh(out.f_c);
  out.classification = SpectrumClass::SubluminalDip;

  // Maxon/roton pair in the dispersion ω/M★ = g·f(g).
  auto omega = [&](double g) { return g * std::sqrt(f_squared(g, medium)); };
  const auto& grid = scan_grid();
  std::vector<double> w(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) w[i] = omega(grid[i]);
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    if (!(w[i] > w[i - 1] && w[i] >= w[i + 1])) continue;
    for (std::size_t j = i + 1; j + 1 < grid.size(); ++j) {
      if (!(w[j] < w[j - 1] && w[j] <= w[j + 1])) continue;
      const auto maxon = refine_min([&](double g) { return -omega(g); },
                                    grid, i, -w[i]);
      const auto roton = refine_min(omega, grid, j, w[j]);
      if (-maxon.value > roton.value) {
        out.classification = SpectrumClass::Rotonized;
        out.g_maxon = maxon.x;
        out.g_roton = roton.x;
      }
      return out;
    }
    break;
  }
  return out;
}

}  // namespace lvbec
