#include "lvbec/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <functional>
#include <limits>
#include <thread>

#include "lvbec/errors.hpp"
#include "lvbec/spectrum.hpp"

namespace lvbec {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

struct RowResult {
  std::vector<double> values;
  std::uint32_t status = status::kOk;
};

using Task = std::function<RowResult()>;

// Label fragment for a parameter value: "2.0", "3.4454".
std::string label(double v) {
  std::string s = format_double(v);
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

const Axis* find_axis(const SweepSpec& spec, std::string_view name) {
  for (const Axis& a : spec.axes) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

std::uint32_t rate_status(const RateResult& r) {
  std::uint32_t s = status::kOk;
  if (!r.converged) s |= status::kNonconverged;
  if (r.support.critical_grazing) s |= status::kGrazing;
  return s;
}

void execute(const std::vector<Task>& tasks, std::vector<RowResult>& out,
             unsigned workers) {
  out.assign(tasks.size(), {});
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      out[i] = tasks[i]();
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, tasks.size()));
  if (workers == 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace

std::string_view to_string(SweepTarget t) {
  switch (t) {
    case SweepTarget::DispersionCurve:
      return "dispersion-curve";
    case SweepTarget::RateVsBeta:
      return "rate-vs-beta";
    case SweepTarget::BetaCVsA:
      return "beta_c-vs-A";
    case SweepTarget::CriticalA:
      return "critical-A";
    case SweepTarget::CustomGrid:
      return "custom-grid";
  }
  return "unknown";
}

std::optional<SweepTarget> parse_target(std::string_view name) {
  for (SweepTarget t :
       {SweepTarget::DispersionCurve, SweepTarget::RateVsBeta,
        SweepTarget::BetaCVsA, SweepTarget::CriticalA,
        SweepTarget::CustomGrid}) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

std::vector<double> Axis::values() const {
  std::vector<double> v(static_cast<std::size_t>(std::max(count, 0)));
  if (count == 1) {
    v[0] = start;
    return v;
  }
  for (int i = 0; i < count; ++i) {
    const double frac = double(i) / double(count - 1);
    v[i] = scale == AxisScale::Log
               ? std::exp(std::log(start) + (std::log(stop) - std::log(start)) * frac)
               : start + (stop - start) * frac;
  }
  v.back() = stop;
  return v;
}

std::size_t CurveTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw std::out_of_range("no column " + std::string(name));
}

void SweepSpec::validate() const {
  std::vector<std::string> errs;
  auto required_axis = [&](const char* name) {
    if (axes.size() != 1 || axes[0].name != name) {
      errs.push_back(std::string(to_string(target)) +
                     " needs exactly one axis named '" + name + "'");
    }
  };
  switch (target) {
    case SweepTarget::DispersionCurve:
      required_axis("g");
      break;
    case SweepTarget::RateVsBeta:
      required_axis("beta");
      break;
    case SweepTarget::BetaCVsA:
      required_axis("A");
      break;
    case SweepTarget::CriticalA:
      required_axis("R");
      break;
    case SweepTarget::CustomGrid:
      if (axes.empty()) errs.push_back("custom-grid needs at least one axis");
      for (const Axis& a : axes) {
        if (a.name != "A" && a.name != "R" && a.name != "beta" &&
            a.name != "omega_tilde") {
          errs.push_back("custom-grid axis '" + a.name +
                         "' is not one of A, R, beta, omega_tilde");
        }
      }
      break;
  }
  for (const Axis& a : axes) {
    const std::string where = "axis " + a.name + ": ";
    if (a.count < 1) errs.push_back(where + "count must be >= 1");
    if (a.count > 1 && !(a.start < a.stop)) {
      errs.push_back(where + "start must be < stop when count > 1");
    }
    if (a.scale == AxisScale::Log && !(a.start > 0.0)) {
      errs.push_back(where + "log scale needs start > 0");
    }
    const double lo = std::min(a.start, a.stop);
    const double hi = std::max(a.start, a.stop);
    if ((a.name == "g" || a.name == "beta") && !(lo >= 0.0)) {
      errs.push_back(where + "values must be >= 0");
    }
    if (a.name == "A" && !(lo > 0.0)) errs.push_back(where + "A must be > 0");
    if (a.name == "R" && !(lo >= 0.0 && hi <= kRDipolar)) {
      errs.push_back(where + "R must lie in [0, sqrt(pi/2)]");
    }
    if (a.name == "omega_tilde" && !(lo >= -1.0 && hi <= 1.0)) {
      errs.push_back(where + "omega_tilde must lie in [-1, 1]");
    }
  }
  const bool A_axis = find_axis(*this, "A") != nullptr;
  if (target == SweepTarget::DispersionCurve && fixed.A.empty() &&
      !fixed.include_li && !fixed.include_contact) {
    errs.push_back("dispersion-curve needs fixed A values or LI/contact curves");
  }
  if (target == SweepTarget::RateVsBeta && fixed.A.empty()) {
    errs.push_back("rate-vs-beta needs at least one fixed A");
  }
  if (target == SweepTarget::CustomGrid && !A_axis && fixed.A.size() != 1) {
    errs.push_back("custom-grid without an A axis needs exactly one fixed A");
  }
  for (double A : fixed.A) {
    if (!(A > 0.0)) errs.push_back("fixed A must be > 0");
  }
  if (!(fixed.R >= 0.0 && fixed.R <= kRDipolar)) {
    errs.push_back("fixed R must lie in [0, sqrt(pi/2)]");
  }
  if (!(fixed.beta >= 0.0)) errs.push_back("fixed beta must be >= 0");
  if (!(fixed.omega_tilde >= -1.0 && fixed.omega_tilde <= 1.0)) {
    errs.push_back("fixed omega_tilde must lie in [-1, 1]");
  }
  if (!(fixed.critical_tol > 0.0)) errs.push_back("critical_tol must be > 0");
  try {
    fixed.quad.validate();
  } catch (const ValidationError& e) {
    for (const auto& v : e.violations()) errs.push_back("quadrature: " + v);
  }
  if (!errs.empty()) throw ValidationError(std::move(errs));
}

SweepSpec preset_fig1() {
  SweepSpec s;
  s.target = SweepTarget::DispersionCurve;
  s.axes = {{"g", 0.0, 2.0, 401, AxisScale::Linear}};
  s.fixed.A = {2.0, 3.0, 3.4454};
  s.fixed.R = kRDipolar;
  s.fixed.include_li = true;
  s.fixed.include_contact = true;
  s.output_path = "fig1.csv";
  return s;
}

SweepSpec preset_fig2(double omega_tilde) {
  if (omega_tilde != 0.3 && omega_tilde != 0.1 && omega_tilde != 0.01) {
    throw DomainError("preset_fig2: omega_tilde must be 0.3, 0.1 or 0.01");
  }
  SweepSpec s;
  s.target = SweepTarget::RateVsBeta;
  s.axes = {{"beta", 0.0, 3.0, 513, AxisScale::Linear}};
  // Legend values are not given numerically; these span the DDI range.
  s.fixed.A = {2.5, 3.0, 3.4};
  s.fixed.R = kRDipolar;
  s.fixed.omega_tilde = omega_tilde;
  const char* tag = omega_tilde == 0.3 ? "a" : omega_tilde == 0.1 ? "b" : "c";
  s.output_path = std::string("fig2") + tag + ".csv";
  return s;
}

SweepSpec preset_fig3() {
  SweepSpec s;
  s.target = SweepTarget::BetaCVsA;
  s.axes = {{"A", 2.0, 3.4454, 200, AxisScale::Linear}};
  s.fixed.R = kRDipolar;
  s.output_path = "fig3.csv";
  return s;
}

std::optional<SweepSpec> preset_by_name(std::string_view name) {
  if (name == "fig1") return preset_fig1();
  if (name == "fig2a") return preset_fig2(0.3);
  if (name == "fig2b") return preset_fig2(0.1);
  if (name == "fig2c") return preset_fig2(0.01);
  if (name == "fig3") return preset_fig3();
  return std::nullopt;
}

unsigned default_workers() {
  if (const char* env = std::getenv("LVBEC_WORKERS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

CurveTable run_sweep(const SweepSpec& spec, unsigned workers) {
  spec.validate();
  if (workers == 0) workers = default_workers();
  const FixedParams& fx = spec.fixed;

  CurveTable table;
  std::vector<Task> tasks;
  // Multi-column targets run one task per (row, column) and stitch rows
  // back together afterwards.
  std::size_t per_row = 1;

  switch (spec.target) {
    case SweepTarget::DispersionCurve: {
      table.columns = {"g"};
      table.units = {"c0|k|/M*"};
      std::vector<MediumParams> curves;
      if (fx.include_li) {
        table.columns.push_back("f_LI");
        table.units.push_back("1");
      }
      if (fx.include_contact) {
        table.columns.push_back("f_R0");
        table.units.push_back("1");
      }
      for (double A : fx.A) {
        table.columns.push_back("f_A" + label(A));
        table.units.push_back("1");
        curves.push_back({A, fx.R});
      }
      for (double g : spec.axes[0].values()) {
        tasks.push_back([g, curves, fx] {
          RowResult r;
          r.values.push_back(g);
          if (fx.include_li) r.values.push_back(1.0);
          if (fx.include_contact) {
            r.values.push_back(f_dimensionless(g, {1.0, 0.0}));
          }
          for (const MediumParams& m : curves) {
            const double F = f_squared(g, m);
            if (F > 0.0) {
              r.values.push_back(std::sqrt(F));
            } else {
              r.values.push_back(kNaN);
              r.status |= status::kUnstable;
            }
          }
          return r;
        });
      }
      break;
    }
    case SweepTarget::RateVsBeta: {
      table.columns = {"beta"};
      table.units = {"rapidity"};
      for (double A : fx.A) {
        table.columns.push_back("rate_A" + label(A));
        table.units.push_back("rho0*M*g-^2*c0^2/(2pi)^3");
      }
      for (double A : fx.A) {
        table.columns.push_back("err_A" + label(A));
        table.units.push_back("rho0*M*g-^2*c0^2/(2pi)^3");
      }
      per_row = fx.A.size();
      for (double beta : spec.axes[0].values()) {
        for (double A : fx.A) {
          tasks.push_back([beta, A, fx] {
            RowResult r;
            const auto rows =
                rate_curve(fx.omega_tilde, {beta}, {A, fx.R}, fx.quad,
                           fx.low_speed);
            const RateRow& row = rows.front();
            r.values = {row.rate, row.abs_error};
            if (!row.converged) r.status |= status::kNonconverged;
            if (row.grazing) r.status |= status::kGrazing;
            if (row.unstable || row.invalid) r.status |= status::kUnstable;
            return r;
          });
        }
      }
      break;
    }
    case SweepTarget::BetaCVsA: {
      table.columns = {"A", "beta_c", "f_c", "g_at_min"};
      table.units = {"1", "rapidity", "1", "c0|k|/M*"};
      for (double A : spec.axes[0].values()) {
        tasks.push_back([A, fx] {
          RowResult r;
          const SpectrumFeatures feat = classify({A, fx.R});
          if (feat.classification == SpectrumClass::Unstable) {
            r.values = {A, kNaN, kNaN, feat.g_at_min};
            r.status |= status::kUnstable;
          } else {
            r.values = {A, feat.beta_c.value_or(kInf), feat.f_c, feat.g_at_min};
          }
          return r;
        });
      }
      break;
    }
    case SweepTarget::CriticalA: {
      table.columns = {"R", "A_c"};
      table.units = {"1", "1"};
      for (double R : spec.axes[0].values()) {
        tasks.push_back([R, fx] {
          RowResult r;
          try {
            r.values = {R, critical_A(R, fx.critical_tol).A_c};
          } catch (const NoInstability&) {
            r.values = {R, kNaN};
            r.status |= status::kNoInstability;
          }
          return r;
        });
      }
      break;
    }
    case SweepTarget::CustomGrid: {
      for (const Axis& a : spec.axes) {
        table.columns.push_back(a.name);
        table.units.push_back(a.name == "beta" ? "rapidity" : "1");
      }
      for (const char* c : {"rate", "err", "support_measure"}) {
        table.columns.push_back(c);
        table.units.push_back(std::string(c) == "support_measure"
                                  ? "c0|k|/M*"
                                  : "rho0*M*g-^2*c0^2/(2pi)^3");
      }
      std::vector<std::vector<double>> axis_values;
      for (const Axis& a : spec.axes) axis_values.push_back(a.values());
      std::vector<std::string> names;
      for (const Axis& a : spec.axes) names.push_back(a.name);
      std::size_t total = 1;
      for (const auto& v : axis_values) total *= v.size();
      for (std::size_t n = 0; n < total; ++n) {
        // mixed-radix decode, last axis fastest
        std::vector<double> point(axis_values.size());
        std::size_t rest = n;
        for (std::size_t k = axis_values.size(); k-- > 0;) {
          point[k] = axis_values[k][rest % axis_values[k].size()];
          rest /= axis_values[k].size();
        }
        tasks.push_back([point, names, fx] {
          MediumParams medium{fx.A.empty() ? 1.0 : fx.A.front(), fx.R};
          DetectorConfig det;
          det.omega_tilde = fx.omega_tilde;
          det.beta = fx.beta;
          for (std::size_t k = 0; k < names.size(); ++k) {
            if (names[k] == "A") medium.A = point[k];
            if (names[k] == "R") medium.R = point[k];
            if (names[k] == "beta") det.beta = point[k];
            if (names[k] == "omega_tilde") det.omega_tilde = point[k];
          }
          RowResult r;
          r.values = point;
          try {
            const RateResult rate =
                fx.low_speed ? transition_rate_low_speed(det, medium, fx.quad)
                             : transition_rate(det, medium, fx.quad);
            r.values.insert(r.values.end(), {rate.value, rate.abs_error_estimate,
                                             rate.support.total_measure});
            r.status |= rate_status(rate);
          } catch (const UnstableSpectrum&) {
            r.values.insert(r.values.end(), {kNaN, kNaN, kNaN});
            r.status |= status::kUnstable;
          }
          return r;
        });
      }
      break;
    }
  }

  std::vector<RowResult> results;
  execute(tasks, results, workers);

  if (spec.target == SweepTarget::RateVsBeta) {
    const auto betas = spec.axes[0].values();
    for (std::size_t row = 0; row < betas.size(); ++row) {
      std::vector<double> values{betas[row]};
      std::vector<double> errs;
      std::uint32_t st = status::kOk;
      for (std::size_t c = 0; c < per_row; ++c) {
        const RowResult& r = results[row * per_row + c];
        values.push_back(r.values[0]);
        errs.push_back(r.values[1]);
        st |= r.status;
      }
      values.insert(values.end(), errs.begin(), errs.end());
      table.rows.push_back(std::move(values));
      table.row_status.push_back(st);
    }
  } else {
    for (RowResult& r : results) {
      table.rows.push_back(std::move(r.values));
      table.row_status.push_back(r.status);
    }
  }

  SweepSpec hashed = spec;
  hashed.output_path.clear();
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(fnv1a(canonical_form(hashed))));
  table.provenance = std::string("lvbec ") + LVBEC_VERSION +
                     " target=" + std::string(to_string(spec.target)) +
                     " sweep-hash=" + hash;
  table.timestamp = utc_timestamp();
  return table;
}

namespace {

bool is_ddi_curve(const std::string& name) { return name.rfind("f_A", 0) == 0; }

}  // namespace

std::vector<std::string> validate_fig1(const CurveTable& table) {
  std::vector<std::string> issues;
  const std::size_t g_col = table.column("g");
  for (std::size_t c = 1; c < table.columns.size(); ++c) {
    if (table.rows.front()[c] != 1.0) {
      issues.push_back(table.columns[c] + " != 1 at g = 0");
    }
  }
  const std::size_t r0 = table.column("f_R0");
  for (const auto& row : table.rows) {
    const double g = row[g_col];
    const double expect = std::sqrt(1.0 + 0.25 * g * g);
    if (std::abs(row[r0] - expect) > 1e-12) {
      issues.push_back("f_R0 deviates from sqrt(1+g^2/4) at g = " +
                       format_double(g));
      break;
    }
  }
  // Row closest to g = 0.9.
  std::size_t probe = 0;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (std::abs(table.rows[r][g_col] - 0.9) <
        std::abs(table.rows[probe][g_col] - 0.9)) {
      probe = r;
    }
  }
  double previous = kInf;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (!is_ddi_curve(table.columns[c])) continue;
    const double A = std::stod(table.columns[c].substr(3));
    if (A >= 2.5) {
      std::size_t run = 0;
      std::size_t best_run = 0;
      for (const auto& row : table.rows) {
        run = row[c] < 1.0 ? run + 1 : 0;
        best_run = std::max(best_run, run);
      }
      if (best_run < 2) {
        issues.push_back(table.columns[c] + " never dips below 1 on an interval");
      }
    }
    const double v = table.rows[probe][c];
    if (!(v < previous)) {
      issues.push_back("dip at g=0.9 does not deepen with A at " + table.columns[c]);
    }
    previous = v;
  }
  return issues;
}

std::vector<std::string> validate_fig2(const CurveTable& table,
                                       double omega_tilde,
                                       const std::vector<double>& A_values) {
  std::vector<std::string> issues;
  const std::size_t b_col = table.column("beta");
  double previous_onset = kInf;
  for (double A : A_values) {
    const std::string name = "rate_A" + label(A);
    const std::size_t c = table.column(name);
    const MediumParams medium{A, kRDipolar};
    const double beta_c = critical_rapidity(medium).value_or(kInf);
    std::optional<std::size_t> first_nonzero;
    std::size_t peak = 0;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      const double beta = table.rows[r][b_col];
      const double rate = table.rows[r][c];
      if (!std::isfinite(rate)) {
        issues.push_back(name + ": non-finite rate at beta = " + format_double(beta));
        continue;
      }
      if (beta <= beta_c - 1e-3 && rate != 0.0) {
        issues.push_back(name + ": nonzero below beta_c at beta = " +
                         format_double(beta));
      }
      if (beta <= beta_c + 5e-2 && omega_tilde < excitation_window(beta, medium) &&
          !(rate > 0.0)) {
        issues.push_back(name + ": zero rate inside the excitation window at beta = " +
                         format_double(beta));
      }
      if (rate > 0.0 && !first_nonzero) first_nonzero = r;
      if (rate > table.rows[peak][c]) peak = r;
    }
    if (!first_nonzero) {
      issues.push_back(name + ": rate never becomes positive");
      continue;
    }
    if (peak != *first_nonzero) {
      issues.push_back(name + ": maximum not at the first nonzero sample");
    }
    const double beta_peak = table.rows[peak][b_col];
    for (std::size_t r = 1; r < table.rows.size(); ++r) {
      if (table.rows[r - 1][b_col] < beta_peak + 0.2) continue;
      if (table.rows[r][c] > table.rows[r - 1][c]) {
        issues.push_back(name + ": increases after the peak at beta = " +
                         format_double(table.rows[r][b_col]));
        break;
      }
    }
    const double onset = table.rows[*first_nonzero][b_col];
    if (!(onset <= previous_onset)) {
      issues.push_back(name + ": onset not earlier than for smaller A");
    }
    previous_onset = onset;
  }
  return issues;
}

std::vector<std::string> validate_fig3(const CurveTable& table) {
  std::vector<std::string> issues;
  const std::size_t a_col = table.column("A");
  const std::size_t b_col = table.column("beta_c");
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const double beta_c = table.rows[r][b_col];
    if (!std::isfinite(beta_c)) {
      issues.push_back("beta_c not finite at A = " + format_double(table.rows[r][a_col]));
    }
    if (r > 0 && beta_c > table.rows[r - 1][b_col]) {
      issues.push_back("beta_c increases at A = " + format_double(table.rows[r][a_col]));
    }
  }
  if (!(table.rows.back()[b_col] <= 1e-2)) {
    issues.push_back("beta_c at the last A exceeds 1e-2");
  }
  return issues;
}

}  // namespace lvbec
