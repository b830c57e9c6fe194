// lvbec: command-line front end for the dispersion, spectrum, detector and
// sweep layers.
//
// Exit codes: 0 ok, 1 preset validator failed, 2 invalid input,
// 3 unstable spectrum, 4 quadrature did not converge (output still printed).

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lvbec/detector.hpp"
#include "lvbec/dispersion.hpp"
#include "lvbec/errors.hpp"
#include "lvbec/spectrum.hpp"
#include "lvbec/sweep.hpp"

using namespace lvbec;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitUnstable = 3;
constexpr int kExitNonconverged = 4;

enum class Mode { Human, Csv, Jsonl };

struct Unbounded {};
using Intervals = std::vector<std::pair<double, double>>;
using Value = std::variant<double, long long, std::string, bool, Unbounded, Intervals>;

struct Record {
  std::vector<std::pair<std::string, Value>> fields;
  Record& add(std::string key, Value v) {
    fields.emplace_back(std::move(key), std::move(v));
    return *this;
  }
};

std::string text(const Value& v) {
  struct {
    std::string operator()(double d) const { return format_double(d); }
    std::string operator()(long long n) const { return std::to_string(n); }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(Unbounded) const { return "unbounded"; }
    std::string operator()(const Intervals& iv) const {
      std::string s;
      for (const auto& [lo, hi] : iv) {
        if (!s.empty()) s += ' ';
        s += '[' + format_double(lo) + ',' + format_double(hi) + ']';
      }
      return s.empty() ? "empty" : s;
    }
  } visitor;
  return std::visit(visitor, v);
}

ordered_json json_value(const Value& v) {
  struct {
    ordered_json operator()(double d) const {
      // JSON has no nan/inf; spell them as strings to keep the key present
      if (!std::isfinite(d)) return format_double(d);
      return d;
    }
    ordered_json operator()(long long n) const { return n; }
    ordered_json operator()(const std::string& s) const { return s; }
    ordered_json operator()(bool b) const { return b; }
    ordered_json operator()(Unbounded) const { return nullptr; }
    ordered_json operator()(const Intervals& iv) const {
      ordered_json arr = ordered_json::array();
      for (const auto& [lo, hi] : iv) arr.push_back({lo, hi});
      return arr;
    }
  } visitor;
  return std::visit(visitor, v);
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + '"';
}

void print(const std::vector<Record>& records, Mode mode) {
  if (records.empty()) return;
  switch (mode) {
    case Mode::Jsonl:
      for (const Record& r : records) {
        ordered_json obj = ordered_json::object();
        for (const auto& [k, v] : r.fields) obj[k] = json_value(v);
        std::cout << obj.dump() << '\n';
      }
      break;
    case Mode::Csv: {
      const auto& first = records.front().fields;
      for (std::size_t i = 0; i < first.size(); ++i) {
        std::cout << (i ? "," : "") << first[i].first;
      }
      std::cout << '\n';
      for (const Record& r : records) {
        for (std::size_t i = 0; i < r.fields.size(); ++i) {
          std::cout << (i ? "," : "") << csv_cell(text(r.fields[i].second));
        }
        std::cout << '\n';
      }
      break;
    }
    case Mode::Human:
      if (records.size() == 1) {
        std::size_t width = 0;
        for (const auto& f : records[0].fields) width = std::max(width, f.first.size());
        for (const auto& [k, v] : records[0].fields) {
          std::cout << k << std::string(width - k.size(), ' ') << "  " << text(v) << '\n';
        }
      } else {
        // aligned table
        const auto& first = records.front().fields;
        std::vector<std::size_t> width(first.size());
        for (std::size_t i = 0; i < first.size(); ++i) width[i] = first[i].first.size();
        for (const Record& r : records) {
          for (std::size_t i = 0; i < r.fields.size(); ++i) {
            width[i] = std::max(width[i], text(r.fields[i].second).size());
          }
        }
        auto row = [&](auto cell) {
          for (std::size_t i = 0; i < width.size(); ++i) {
            const std::string s = cell(i);
            std::cout << s << (i + 1 < width.size() ? std::string(width[i] - s.size() + 2, ' ') : "");
          }
          std::cout << '\n';
        };
        row([&](std::size_t i) { return first[i].first; });
        for (const Record& r : records) row([&](std::size_t i) { return text(r.fields[i].second); });
      }
      break;
  }
}

void error_summary(const std::string& kind, const std::vector<std::string>& messages,
                   ordered_json extra = ordered_json::object()) {
  ordered_json e = ordered_json::object();
  e["error"] = kind;
  e["messages"] = messages;
  for (auto& [k, v] : extra.items()) e[k] = v;
  std::cerr << e.dump() << '\n';
}

double parse_R(const std::string& s) {
  if (s == "ddi") return kRDipolar;
  if (s == "contact") return 0.0;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError({"--R must be 'ddi', 'contact' or a number, got '" + s + "'"});
}

struct MediumOpts {
  std::optional<double> A;
  std::string R = "ddi";

  void add(CLI::App* cmd, bool A_required = true) {
    auto* a = cmd->add_option("--A", A, "effective chemical potential A > 0");
    if (A_required) a->required();
    cmd->add_option("--R", R, "dipolar ratio: 'ddi' (sqrt(pi/2)), 'contact' (0) or a number")
        ->capture_default_str();
  }
  MediumParams medium() const {
    if (!A) throw ValidationError({"--A is required (or the full set of physical flags)"});
    MediumParams m{*A, parse_R(R)};
    m.validate();
    return m;
  }
};

struct PhysicalOpts {
  std::optional<double> m, omega_z, rho0, g_c, g_d;
  double omega = 0.0;
  double aspect_warning = kDefaultAspectWarning;

  void add(CLI::App* cmd, bool required) {
    auto opt = [&](const char* name, std::optional<double>& v, const char* help) {
      auto* o = cmd->add_option(name, v, help);
      if (required) o->required();
    };
    opt("--m", m, "particle mass");
    opt("--omega-z", omega_z, "axial trap frequency");
    opt("--rho0", rho0, "2D density");
    opt("--gc", g_c, "contact coupling");
    opt("--gd", g_d, "dipolar coupling");
    cmd->add_option("--omega", omega, "radial trap frequency (0 = unset)")->capture_default_str();
    cmd->add_option("--aspect-warning", aspect_warning,
                    "warn when omega_z/omega falls below this")
        ->capture_default_str();
  }
  bool any() const { return m || omega_z || rho0 || g_c || g_d; }
  DerivedScales scales() const {
    std::vector<std::string> missing;
    if (!m) missing.push_back("--m is required with physical flags");
    if (!omega_z) missing.push_back("--omega-z is required with physical flags");
    if (!rho0) missing.push_back("--rho0 is required with physical flags");
    if (!g_c) missing.push_back("--gc is required with physical flags");
    if (!g_d) missing.push_back("--gd is required with physical flags");
    if (!missing.empty()) throw ValidationError(missing);
    PhysicalParams p;
    p.m = *m;
    p.omega = omega;
    p.omega_z = *omega_z;
    p.rho0 = *rho0;
    p.g_c = *g_c;
    p.g_d = *g_d;
    DerivedScales s = derive_scales(p, aspect_warning);
    for (const auto& w : s.warnings) std::cerr << "warning: " << w << '\n';
    return s;
  }
};

struct SpeedOpts {
  std::optional<double> beta, velocity;

  void add(CLI::App* cmd) {
    auto* b = cmd->add_option("--beta", beta, "detector rapidity beta >= 0");
    auto* v = cmd->add_option("--velocity", velocity, "detector speed v/c0 in [0, 1)");
    b->excludes(v);
    v->excludes(b);
  }
  double rapidity() const {
    if (beta) return *beta;
    if (velocity) {
      if (!(*velocity >= 0.0 && *velocity < 1.0)) {
        throw ValidationError({"--velocity must lie in [0, 1)"});
      }
      return std::atanh(*velocity);
    }
    throw ValidationError({"one of --beta or --velocity is required"});
  }
};

Mode parse_mode(const std::string& s) {
  if (s == "human") return Mode::Human;
  if (s == "csv") return Mode::Csv;
  return Mode::Jsonl;
}

// Subcommands. Each returns an exit code.

int cmd_dispersion(const MediumOpts& mo, const PhysicalOpts& po, const std::vector<double>& gs,
                   const std::vector<double>& range, Mode mode) {
  std::optional<DerivedScales> scales;
  MediumParams medium;
  if (po.any()) {
    scales = po.scales();
    medium = scales->medium;
  } else {
    medium = mo.medium();
  }
  std::vector<double> grid = gs;
  if (!range.empty()) {
    if (range[2] < 1 || range[2] != std::floor(range[2])) {
      throw ValidationError({"--g-range count must be a positive integer"});
    }
    grid = Axis{"g", range[0], range[1], static_cast<int>(range[2])}.values();
  }
  if (grid.empty()) throw ValidationError({"one of --g or --g-range is required"});
  bool unstable = false;
  std::vector<Record> out;
  for (double g : grid) {
    const double F = f_squared(g, medium);
    const double f = F > 0.0 || g == 0.0 ? std::sqrt(std::max(F, 0.0)) : std::nan("");
    unstable = unstable || std::isnan(f);
    Record r;
    r.add("g", g).add("f_squared", F).add("f", f).add("omega_over_Mstar", g * f);
    if (scales) {
      const double k = g * scales->M_star / scales->c0;
      r.add("k", k).add("omega", scales->M_star * g * f).add("v2d", v2d_kernel(k, *scales));
    }
    out.push_back(std::move(r));
  }
  print(out, mode);
  if (unstable) {
    error_summary("unstable", {"f^2 <= 0 at one or more requested g (f printed as nan)"});
    return kExitUnstable;
  }
  return kExitOk;
}

int cmd_stability(const MediumOpts& mo, Mode mode) {
  const MediumParams medium = mo.medium();
  const SpectrumFeatures s = classify(medium);
  Record r;
  r.add("A", medium.A).add("R", medium.R);
  r.add("classification", std::string(to_string(s.classification)));
  r.add("stable", s.classification != SpectrumClass::Unstable);
  r.add("min_f_squared", s.min_f_squared).add("f_c", s.f_c).add("g_at_min", s.g_at_min);
  r.add("beta_c", s.beta_c ? Value(*s.beta_c) : Value(Unbounded{}));
  r.add("g_maxon", s.g_maxon ? Value(*s.g_maxon) : Value(std::string("none")));
  r.add("g_roton", s.g_roton ? Value(*s.g_roton) : Value(std::string("none")));
  print({r}, mode);
  return kExitOk;
}

int cmd_critical_a(const std::string& R_text, double tol, Mode mode) {
  const double R = parse_R(R_text);
  Record r;
  r.add("R", R);
  try {
    const CriticalAResult c = critical_A(R, tol);
    r.add("A_c", c.A_c).add("monotone_verified", c.monotone_verified);
  } catch (const NoInstability&) {
    r.add("A_c", Unbounded{}).add("monotone_verified", true);
  }
  print({r}, mode);
  return kExitOk;
}

int cmd_critical_rapidity(const MediumOpts& mo, Mode mode) {
  const MediumParams medium = mo.medium();
  const MinF m = min_f(medium);
  const std::optional<double> beta_c = critical_rapidity(medium);
  Record r;
  r.add("A", medium.A).add("R", medium.R);
  r.add("beta_c", beta_c ? Value(*beta_c) : Value(Unbounded{}));
  r.add("f_c", m.f_c).add("g_at_min", m.g_at_min);
  print({r}, mode);
  return kExitOk;
}

struct RateOpts {
  double omega_tilde = 0.0;
  bool low_speed = false;
  QuadratureSettings quad;
  std::optional<double> g_minus, rho0, M_star, c0;
};

int cmd_rate(const MediumOpts& mo, const SpeedOpts& so, const RateOpts& ro, Mode mode) {
  const MediumParams medium = mo.medium();
  DetectorConfig det;
  det.omega_tilde = ro.omega_tilde;
  det.beta = so.rapidity();
  det.coupling_g_minus = ro.g_minus;
  det.rho0 = ro.rho0;
  det.M_star = ro.M_star;
  det.c0 = ro.c0;
  const RateResult res = ro.low_speed ? transition_rate_low_speed(det, medium, ro.quad)
                                      : transition_rate(det, medium, ro.quad);
  Intervals iv;
  for (const auto& i : res.support.intervals) iv.emplace_back(i.g_lo, i.g_hi);
  Record r;
  r.add("omega_tilde", det.omega_tilde).add("beta", det.beta).add("velocity", std::tanh(det.beta));
  r.add("A", medium.A).add("R", medium.R).add("low_speed", ro.low_speed);
  r.add("rate", res.value).add("abs_error", res.abs_error_estimate).add("converged", res.converged);
  r.add("support_measure", res.support.total_measure).add("support", iv);
  r.add("grazing", res.support.critical_grazing);
  r.add("dimensional_rate",
        res.dimensional_value ? Value(*res.dimensional_value) : Value(std::string("none")));
  print({r}, mode);
  if (!res.converged) {
    error_summary("nonconverged", {"quadrature did not reach the requested tolerance"},
                  {{"abs_error", res.abs_error_estimate}});
    return kExitNonconverged;
  }
  return kExitOk;
}

int cmd_window(const MediumOpts& mo, const SpeedOpts& so, Mode mode) {
  const MediumParams medium = mo.medium();
  const double beta = so.rapidity();
  Record r;
  r.add("beta", beta).add("A", medium.A).add("R", medium.R);
  r.add("window", excitation_window(beta, medium));
  print({r}, mode);
  return kExitOk;
}

int cmd_units(const PhysicalOpts& po, Mode mode) {
  const DerivedScales s = po.scales();
  Record r;
  r.add("A", s.medium.A).add("R", s.medium.R).add("g0_eff", s.g0_eff).add("d_z", s.d_z);
  r.add("c0", s.c0).add("M_star", s.M_star);
  r.add("kappa", po.omega > 0.0 ? Value(*po.omega_z / po.omega) : Value(std::string("none")));
  r.add("trap_condition_ok", s.trap_condition_ok).add("omega_z_required", s.omega_z_required);
  print({r}, mode);
  return kExitOk;
}

struct SweepOpts {
  std::string preset, config, output;
  unsigned workers = 0;
  bool no_timestamp = false;
};

int cmd_sweep(const SweepOpts& so, Mode mode) {
  SweepSpec spec;
  std::string label;
  if (!so.preset.empty()) {
    auto p = preset_by_name(so.preset);
    if (!p) throw ValidationError({"unknown preset '" + so.preset + "'"});
    spec = *p;
    label = so.preset;
  } else if (!so.config.empty()) {
    spec = load_sweep_config(so.config);
    label = so.config;
  } else {
    throw ValidationError({"one of --preset or --config is required"});
  }
  if (!so.output.empty()) spec.output_path = so.output;
  if (spec.output_path.empty()) {
    spec.output_path = (so.preset.empty() ? std::string("sweep") : so.preset) + ".csv";
  }
  const unsigned workers = so.workers ? so.workers : default_workers();
  const CurveTable table = run_sweep(spec, workers);
  {
    const std::string csv = to_csv(table, !so.no_timestamp);
    if (spec.output_path.has_parent_path()) {
      std::filesystem::create_directories(spec.output_path.parent_path());
    }
    std::ofstream os(spec.output_path, std::ios::binary | std::ios::trunc);
    os << csv;
    if (!os) throw std::runtime_error("cannot write " + spec.output_path.string());
  }

  std::size_t nonconverged = 0, unstable = 0, grazing = 0;
  for (auto st : table.row_status) {
    nonconverged += (st & status::kNonconverged) != 0;
    unstable += (st & status::kUnstable) != 0;
    grazing += (st & status::kGrazing) != 0;
  }
  std::vector<std::string> issues;
  if (so.preset == "fig1") issues = validate_fig1(table);
  if (so.preset == "fig3") issues = validate_fig3(table);
  if (so.preset.rfind("fig2", 0) == 0) {
    issues = validate_fig2(table, spec.fixed.omega_tilde, spec.fixed.A);
  }
  Record r;
  r.add("source", label).add("target", std::string(to_string(spec.target)));
  r.add("output", spec.output_path.string());
  r.add("rows", static_cast<long long>(table.rows.size()));
  r.add("columns", static_cast<long long>(table.columns.size() + 1));
  r.add("workers", static_cast<long long>(workers));
  r.add("nonconverged_rows", static_cast<long long>(nonconverged));
  r.add("unstable_rows", static_cast<long long>(unstable));
  r.add("grazing_rows", static_cast<long long>(grazing));
  r.add("checks", so.preset.empty() ? std::string("n/a")
                                    : issues.empty() ? std::string("passed")
                                                     : std::string("failed"));
  r.add("provenance", table.provenance);
  print({r}, mode);
  if (!issues.empty()) {
    error_summary("check_failed", issues);
    return kExitCheckFailed;
  }
  if (nonconverged) {
    error_summary("nonconverged",
                  {std::to_string(nonconverged) + " rows did not reach the requested tolerance"});
    return kExitNonconverged;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lorentz-violating Bogoliubov dispersion of a quasi-2D dipolar BEC and the "
               "transition rate of a moving impurity detector.\n"
               "Sweep parallelism: LVBEC_WORKERS (default: hardware concurrency)."};
  app.set_version_flag("--version", std::string(LVBEC_VERSION));
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "human";
  app.add_option("--format", format, "output mode")
      ->check(CLI::IsMember({"human", "csv", "jsonl"}))
      ->capture_default_str();

  // dispersion
  MediumOpts disp_medium;
  PhysicalOpts disp_phys;
  std::vector<double> disp_g, disp_range;
  auto* disp =
      app.add_subcommand("dispersion", "f(g), f(g)^2 and omega/M* = g f(g) at given momenta");
  disp_medium.add(disp, false);
  disp_phys.add(disp, false);
  auto* g_opt = disp->add_option("--g", disp_g, "momentum c0|k|/M* (repeatable)");
  auto* range_opt =
      disp->add_option("--g-range", disp_range, "START STOP COUNT, linearly spaced")->expected(3);
  g_opt->excludes(range_opt);
  range_opt->excludes(g_opt);

  // stability
  MediumOpts stab_medium;
  auto* stab = app.add_subcommand("stability", "classify the spectrum and locate its minimum");
  stab_medium.add(stab);

  // critical-a
  std::string crit_R = "ddi";
  double crit_tol = 1e-10;
  auto* crit = app.add_subcommand("critical-a", "smallest A at which the spectrum goes unstable");
  crit->add_option("--R", crit_R, "dipolar ratio: 'ddi', 'contact' or a number")
      ->capture_default_str();
  crit->add_option("--tol", crit_tol, "bisection tolerance on A")->capture_default_str();

  // critical-rapidity
  MediumOpts rap_medium;
  auto* rap =
      app.add_subcommand("critical-rapidity", "beta_c = arctanh(min f); 'unbounded' if min f >= 1");
  rap_medium.add(rap);

  // rate
  MediumOpts rate_medium;
  SpeedOpts rate_speed;
  RateOpts rate_opts;
  auto* rate = app.add_subcommand("rate", "detector transition rate (dimensionless)");
  rate_medium.add(rate);
  rate_speed.add(rate);
  rate->add_option("--omega-tilde", rate_opts.omega_tilde, "gap over M*; negative = deexcitation")
      ->required();
  rate->add_flag("--low-speed", rate_opts.low_speed, "use the small-beta form (beta for tanh beta)");
  rate->add_option("--rel-tol", rate_opts.quad.rel_tol, "relative quadrature tolerance")
      ->capture_default_str();
  rate->add_option("--abs-tol", rate_opts.quad.abs_tol, "absolute quadrature tolerance")
      ->capture_default_str();
  rate->add_option("--max-refinements", rate_opts.quad.max_refinements,
                   "maximum interval bisections per support interval")
      ->capture_default_str();
  rate->add_option("--g-minus", rate_opts.g_minus, "coupling g- (with --rho0 --m-star --c0)");
  rate->add_option("--rho0", rate_opts.rho0, "density for the dimensional prefactor");
  rate->add_option("--m-star", rate_opts.M_star, "M* for the dimensional prefactor");
  rate->add_option("--c0", rate_opts.c0, "sound speed for the dimensional prefactor");

  // window
  MediumOpts win_medium;
  SpeedOpts win_speed;
  auto* win = app.add_subcommand("window", "largest gap that can still be excited at beta");
  win_medium.add(win);
  win_speed.add(win);

  // units
  PhysicalOpts units_phys;
  auto* units = app.add_subcommand("units", "derived scales from lab-frame parameters (hbar = 1)");
  units_phys.add(units, true);

  // sweep
  SweepOpts sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "run a preset or config sweep and write its CSV");
  auto* preset = sweep->add_option("--preset", sweep_opts.preset, "fig1, fig2a, fig2b, fig2c, fig3")
                     ->check(CLI::IsMember({"fig1", "fig2a", "fig2b", "fig2c", "fig3"}));
  auto* config = sweep->add_option("--config", sweep_opts.config, "sweep config file");
  preset->excludes(config);
  config->excludes(preset);
  sweep->add_option("--output", sweep_opts.output,
                    "CSV path (default: config 'output', else <preset>.csv)");
  sweep->add_option("--workers", sweep_opts.workers, "worker threads (0 = LVBEC_WORKERS or cores)")
      ->capture_default_str();
  sweep->add_flag("--no-timestamp", sweep_opts.no_timestamp, "omit the '# generated=' line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    error_summary("validation", {e.what()});
    return kExitInvalid;
  }

  const Mode mode = parse_mode(format);
  try {
    if (*disp) return cmd_dispersion(disp_medium, disp_phys, disp_g, disp_range, mode);
    if (*stab) return cmd_stability(stab_medium, mode);
    if (*crit) return cmd_critical_a(crit_R, crit_tol, mode);
    if (*rap) return cmd_critical_rapidity(rap_medium, mode);
    if (*rate) return cmd_rate(rate_medium, rate_speed, rate_opts, mode);
    if (*win) return cmd_window(win_medium, win_speed, mode);
    if (*units) return cmd_units(units_phys, mode);
    if (*sweep) return cmd_sweep(sweep_opts, mode);
  } catch (const ValidationError& e) {
    error_summary("validation", e.violations());
    return kExitInvalid;
  } catch (const UnstableSpectrum& e) {
    error_summary("unstable", {e.what()}, {{"g", e.g()}, {"f_squared", e.f_squared()}});
    return kExitUnstable;
  } catch (const DomainError& e) {
    error_summary("validation", {e.what()});
    return kExitInvalid;
  } catch (const std::exception& e) {
    error_summary("error", {e.what()});
    return kExitCheckFailed;
  }
  return kExitOk;
}
