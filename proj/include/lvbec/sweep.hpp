#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lvbec/detector.hpp"
#include "lvbec/dispersion.hpp"

namespace lvbec {

enum class SweepTarget {
  DispersionCurve,
  RateVsBeta,
  BetaCVsA,
  CriticalA,
  CustomGrid,
};

std::string_view to_string(SweepTarget t);
std::optional<SweepTarget> parse_target(std::string_view name);

enum class AxisScale { Linear, Log };

struct Axis {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  int count = 1;
  AxisScale scale = AxisScale::Linear;

  std::vector<double> values() const;
};

/// Parameters held constant over a sweep. `A` is a list: dispersion and
/// rate sweeps emit one column per entry.
struct FixedParams {
  std::vector<double> A;
  double R = kRDipolar;
  double omega_tilde = 0.1;
  double beta = 0.5;
  bool include_li = false;
  bool include_contact = false;
  bool low_speed = false;
  double critical_tol = 1e-10;
  QuadratureSettings quad;
};

struct SweepSpec {
  SweepTarget target = SweepTarget::DispersionCurve;
  std::vector<Axis> axes;
  FixedParams fixed;
  std::filesystem::path output_path;

  /// Throws ValidationError listing every violation.
  void validate() const;
};

/// Row status bits written to the trailing `status` column.
namespace status {
inline constexpr std::uint32_t kOk = 0;
inline constexpr std::uint32_t kNonconverged = 1;
inline constexpr std::uint32_t kUnstable = 2;
inline constexpr std::uint32_t kGrazing = 4;
inline constexpr std::uint32_t kNoInstability = 8;
}  // namespace status

struct CurveTable {
  std::vector<std::string> columns;
  std::vector<std::string> units;
  std::vector<std::vector<double>> rows;
  std::vector<std::uint32_t> row_status;
  /// Stable provenance (version, sweep hash); the timestamp is separate so
  /// payloads compare byte-identically.
  std::string provenance;
  std::string timestamp;

  std::size_t column(std::string_view name) const;
};

SweepSpec preset_fig1();
/// Ω̃ must be one of {0.3, 0.1, 0.01}.
SweepSpec preset_fig2(double omega_tilde);
SweepSpec preset_fig3();

/// Resolve "fig1", "fig2a" (Ω̃=0.3), "fig2b" (0.1), "fig2c" (0.01), "fig3".
std::optional<SweepSpec> preset_by_name(std::string_view name);

/// Worker count from LVBEC_WORKERS, else hardware concurrency.
unsigned default_workers();

/// Evaluate every sweep point on `workers` threads; the table is identical
/// for any worker count.
CurveTable run_sweep(const SweepSpec& spec, unsigned workers = 0);

/// Canonical text form of a spec, hashed into the provenance line.
std::string canonical_form(const SweepSpec& spec);

/// Parse the flat sectioned key-value config format (see README).
SweepSpec parse_sweep_config(std::string_view text);
SweepSpec load_sweep_config(const std::filesystem::path& path);

/// CSV dialect: provenance and timestamp comment lines, header row, unit
/// row prefixed '#', shortest round-trip doubles.
std::string to_csv(const CurveTable& table, bool with_timestamp = true);
void write_csv(const CurveTable& table, const std::filesystem::path& path);

/// Shortest round-trip decimal form of a double ("nan", "inf" for
/// non-finite values).
std::string format_double(double v);

/// Post-run shape checks for the presets; empty when everything holds.
std::vector<std::string> validate_fig1(const CurveTable& table);
std::vector<std::string> validate_fig2(const CurveTable& table,
                                       double omega_tilde,
                                       const std::vector<double>& A_values);
std::vector<std::string> validate_fig3(const CurveTable& table);

}  // namespace lvbec
