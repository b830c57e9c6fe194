// Acceptance run: one PASS/FAIL line per criterion, with measured values
// and wall time. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lvbec/detector.hpp"
#include "lvbec/dispersion.hpp"
#include "lvbec/errors.hpp"
#include "lvbec/special.hpp"
#include "lvbec/spectrum.hpp"
#include "lvbec/sweep.hpp"
#include "oracles.hpp"
#include "regression_set.hpp"

using namespace lvbec;

namespace {

// Pinned tolerances and budgets.
constexpr double kAcTarget = 3.4454;
constexpr double kAcTol = 1e-3;
constexpr double kAcBudget = 1.0;
constexpr double kFcMax = 1e-2;
constexpr double kRotonLo = 0.8, kRotonHi = 1.0;
constexpr double kRotonBudget = 1.0;
constexpr double kFig1Budget = 5.0;
constexpr double kFig3Budget = 30.0;
constexpr double kFig2RelTol = 1e-6;
constexpr double kFig2Budget = 300.0;
constexpr int kZeroRateCases = 200;
constexpr double kTanhSinhTol = 1e-6;
constexpr double kMidpointTol = 1e-3;
constexpr long kMidpointSamples = 20000000;
constexpr double kUVTol = 1e-12;
constexpr double kOmegaTol = 1e-12;
constexpr double kWTol = 1e-14;
constexpr double kLowSpeedRatioLo = 4.0, kLowSpeedRatioHi = 16.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) { return format_double(v); }

int failures = 0;

void run(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool pass = out.pass;
  if (budget_s > 0.0 && dt >= budget_s) {
    pass = false;
    out.detail += " [over budget " + num(budget_s) + " s]";
  }
  if (!pass) ++failures;
  std::printf("%s criterion %d (%s): %s; %.3f s\n", pass ? "PASS" : "FAIL", id, name,
              out.detail.c_str(), dt);
  std::fflush(stdout);
}

std::string join(const std::vector<std::string>& issues) {
  std::string s;
  for (std::size_t i = 0; i < issues.size() && i < 5; ++i) s += (i ? "; " : "") + issues[i];
  if (issues.size() > 5) s += "; ...";
  return s;
}

DetectorConfig detector(double w, double beta) {
  DetectorConfig d;
  d.omega_tilde = w;
  d.beta = beta;
  return d;
}

Outcome stability_threshold() {
  const CriticalAResult r = critical_A(kRDipolar);
  const double dev = std::abs(r.A_c - kAcTarget);
  return {dev <= kAcTol && r.monotone_verified,
          "A_c = " + num(r.A_c) + ", |A_c - 3.4454| = " + num(dev) + " (tol 1e-3)"};
}

Outcome roton_location() {
  const MinF m = min_f({kAcTarget, kRDipolar});
  return {m.f_c < kFcMax && m.g_at_min >= kRotonLo && m.g_at_min <= kRotonHi,
          "f_c = " + num(m.f_c) + " at g = " + num(m.g_at_min)};
}

Outcome fig1() {
  const CurveTable t = run_sweep(preset_fig1());
  const auto issues = validate_fig1(t);
  return {issues.empty(), issues.empty() ? std::to_string(t.rows.size()) + " rows" : join(issues)};
}

Outcome fig3() {
  const CurveTable t = run_sweep(preset_fig3());
  const auto issues = validate_fig3(t);
  const double last = t.rows.back()[t.column("beta_c")];
  return {issues.empty(),
          issues.empty() ? "beta_c(3.4454) = " + num(last) : join(issues)};
}

Outcome fig2() {
  std::vector<std::string> issues;
  std::string detail;
  for (double w : {0.3, 0.1, 0.01}) {
    SweepSpec spec = preset_fig2(w);
    spec.fixed.quad.rel_tol = kFig2RelTol;
    const CurveTable t = run_sweep(spec);
    for (const auto& s : validate_fig2(t, w, spec.fixed.A)) issues.push_back(s);
    std::size_t flagged = 0;
    for (auto st : t.row_status) flagged += (st & status::kNonconverged) != 0;
    if (flagged) issues.push_back(std::to_string(flagged) + " nonconverged rows at W = " + num(w));
    detail += (detail.empty() ? "" : ", ") + std::string("W=") + num(w) + ": " +
              std::to_string(t.rows.size()) + " rows";
  }
  return {issues.empty(), issues.empty() ? detail : join(issues)};
}

Outcome zero_rate() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> A(0.1, 10.0);
  std::uniform_real_distribution<double> beta(0.0, 3.0);
  std::uniform_real_distribution<double> gap(0.0, 1.0);
  int nonzero = 0;
  for (int i = 0; i < kZeroRateCases; ++i) {
    double w = gap(rng);
    if (w == 0.0) w = 1.0;  // open at 0
    nonzero += transition_rate(detector(w, beta(rng)), {A(rng), 0.0}).value != 0.0;
  }
  // deexcitation grid at A = 3
  int dead = 0, total = 0;
  double smallest = INFINITY;
  const MediumParams ddi{3.0, kRDipolar};
  for (double w : {-1.0, -0.7, -0.3, -0.1, -0.03, -0.01, -0.003, std::nextafter(-1e-3, -1.0)}) {
    for (int i = 0; i < 60; ++i) {
      const double b = 0.05 + (3.0 - 0.05) * i / 59.0;
      const double r = transition_rate(detector(w, b), ddi).value;
      ++total;
      dead += !(r > 0.0);
      smallest = std::min(smallest, r);
    }
  }
  return {nonzero == 0 && dead == 0,
          "R=0 nonzero: " + std::to_string(nonzero) + "/" + std::to_string(kZeroRateCases) +
              "; deexcitation non-positive: " + std::to_string(dead) + "/" +
              std::to_string(total) + " (min rate " + num(smallest) + ")"};
}

Outcome oracle_equivalence() {
  double worst_ts = 0.0, worst_mid = 0.0;
  int one = 0, multi = 0;
  QuadratureSettings q;
  q.rel_tol = 1e-10;
  for (const auto& p : regression::kPoints) {
    const MediumParams medium{p.A, kRDipolar};
    const RateResult r = transition_rate(detector(p.omega_tilde, p.beta), medium, q);
    const double t = std::tanh(p.beta);
    double ts = 0.0, mid = 0.0;
    for (const auto& iv : r.support.intervals) {
      ts += oracle::tanh_sinh_rate(iv.g_lo, iv.g_hi, p.omega_tilde, t, p.A, kRDipolar);
      mid += oracle::midpoint_rate(iv.g_lo, iv.g_hi, p.omega_tilde, t, p.A, kRDipolar,
                                   kMidpointSamples);
    }
    (r.support.intervals.size() == 1 ? one : multi)++;
    worst_ts = std::max(worst_ts, std::abs(r.value - ts) / ts);
    worst_mid = std::max(worst_mid, std::abs(r.value - mid) / mid);
  }
  return {worst_ts <= kTanhSinhTol && worst_mid <= kMidpointTol && one > 0 && multi > 0,
          "worst rel vs tanh-sinh " + num(worst_ts) + ", vs midpoint " + num(worst_mid) +
              " (" + std::to_string(one) + " single-, " + std::to_string(multi) +
              " multi-interval)"};
}

Outcome identities() {
  std::vector<std::string> issues;
  // u² − v² and ω over a spread of physical parameter sets
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst_uv = 0.0, worst_omega = 0.0;
  for (int i = 0; i < 200; ++i) {
    PhysicalParams p;
    p.m = std::exp(std::log(0.1) + u01(rng) * std::log(100.0));
    p.omega_z = std::exp(std::log(0.1) + u01(rng) * std::log(100.0));
    p.rho0 = std::exp(std::log(0.1) + u01(rng) * std::log(100.0));
    p.g_d = std::exp(std::log(0.01) + u01(rng) * std::log(100.0));
    p.g_c = p.g_d * (0.5 + 3.0 * u01(rng));
    const DerivedScales s = derive_scales(p);
    for (double lk : {-3.0, -1.0, 0.0, 0.5, 2.0}) {
      const double k = std::pow(10.0, lk) / s.d_z;
      const BogoliubovPair b = bogoliubov_uv(k, s);
      worst_uv = std::max(worst_uv, std::abs((b.u + b.v) * (b.u - b.v) - 1.0));
      const double g = s.c0 * k / s.M_star;
      const double via_f = s.c0 * k * f_dimensionless(g, s.medium);
      worst_omega = std::max(worst_omega, std::abs(omega_physical(k, s) - via_f) / via_f);
    }
  }
  if (worst_uv > kUVTol) issues.push_back("u^2-v^2 off by " + num(worst_uv));
  if (worst_omega > kOmegaTol) issues.push_back("omega off by " + num(worst_omega));

  double worst_w = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = i == 0 ? 0.0 : std::pow(10.0, -8.0 + 14.0 * (i - 1) / 998.0);
    worst_w = std::max(worst_w, std::abs(w_scaled(x) - oracle::erfcx(x)));
  }
  if (worst_w > kWTol) issues.push_back("w_scaled off by " + num(worst_w));

  // low-speed error ratio per doubling of β
  const MediumParams medium{kAcTarget, kRDipolar};
  QuadratureSettings q;
  q.rel_tol = 1e-12;
  q.abs_tol = 1e-300;
  std::vector<double> errs;
  for (double b : {0.01, 0.02, 0.04}) {
    const double full = transition_rate(detector(1e-3, b), medium, q).value;
    const double low = transition_rate_low_speed(detector(1e-3, b), medium, q).value;
    errs.push_back(std::abs(low - full) / full);
  }
  const double r1 = errs[1] / errs[0], r2 = errs[2] / errs[1];
  for (double r : {r1, r2}) {
    if (!(r >= kLowSpeedRatioLo && r <= kLowSpeedRatioHi)) {
      issues.push_back("low-speed ratio " + num(r) + " outside [4, 16]");
    }
  }
  return {issues.empty(),
          "u^2-v^2 " + num(worst_uv) + ", omega " + num(worst_omega) + ", w " + num(worst_w) +
              ", low-speed ratios " + num(r1) + ", " + num(r2) +
              (issues.empty() ? "" : " -- " + join(issues))};
}

Outcome determinism() {
  std::vector<std::string> issues;
  for (const char* name : {"fig1", "fig2c", "fig3"}) {
    const SweepSpec spec = *preset_by_name(name);
    const std::string a = to_csv(run_sweep(spec, 1), false);
    const std::string b = to_csv(run_sweep(spec, 2), false);
    const std::string c = to_csv(run_sweep(spec, 4), false);
    if (a != b || a != c) issues.push_back(std::string(name) + " differs across worker counts");
  }
  return {issues.empty(), issues.empty() ? "fig1, fig2c, fig3 identical for 1/2/4 workers"
                                         : join(issues)};
}

}  // namespace

int main() {
  run(1, "stability threshold", kAcBudget, stability_threshold);
  run(2, "roton location", kRotonBudget, roton_location);
  run(3, "fig1 reproduction", kFig1Budget, fig1);
  run(4, "fig3 reproduction", kFig3Budget, fig3);
  run(5, "fig2 shape", kFig2Budget, fig2);
  run(6, "zero-rate theorems", 0.0, zero_rate);
  run(7, "oracle equivalence", 0.0, oracle_equivalence);
  run(8, "identity suite", 0.0, identities);
  run(9, "determinism", 0.0, determinism);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures;
}
