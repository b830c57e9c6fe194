#include <chrono>
#include <cmath>

#include "anchors.hpp"
#include "doctest.h"
#include "lvbec/errors.hpp"
#include "lvbec/numerics.hpp"
#include "lvbec/spectrum.hpp"
#include "oracles.hpp"

using namespace lvbec;

TEST_CASE("min_f for contact interaction sits at the origin") {
  for (double A : {0.1, 1.0, 5.0}) {
    const MinF m = min_f({A, 0.0});
    CHECK(m.g_at_min == 0.0);
    CHECK(m.f_c == 1.0);
  }
}

TEST_CASE("min_f against the 50-digit anchors") {
  for (const auto& a : anchors::kMinima) {
    CAPTURE(a.A);
    const MinF m = min_f({a.A, kRDipolar});
    CHECK(m.f_c == doctest::Approx(a.f_c).epsilon(1e-10));
    CHECK(m.g_at_min == doctest::Approx(a.g_at_min).epsilon(1e-6));
  }
  const MinF near = min_f({3.4454, kRDipolar});
  CHECK(near.f_c < 1e-2);
  CHECK(near.g_at_min > 0.8);
  CHECK(near.g_at_min < 1.0);
}

TEST_CASE("min_f against an independent dense-grid oracle") {
  for (double A : {0.3, 2.0, 3.0}) {
    for (double R : {0.6, 1.0, kRDipolar}) {
      CAPTURE(A);
      CAPTURE(R);
      const auto ref = oracle::dense_min(A, R);
      const MinF m = min_f({A, R});
      CHECK(m.f_c == doctest::Approx(ref.f).epsilon(1e-11));
      CHECK(m.g_at_min == doctest::Approx(ref.g).epsilon(1e-5));
    }
  }
}

TEST_CASE("min_f certificate") {
  for (double A : {0.5, 2.0, 2.5, 3.0, 3.4}) {
    const MediumParams medium{A, kRDipolar};
    const MinF m = min_f(medium);
    REQUIRE(m.g_at_min > 0.0);
    CHECK(f_dimensionless(m.g_at_min - 1e-6, medium) >= m.f_c);
    CHECK(f_dimensionless(m.g_at_min + 1e-6, medium) >= m.f_c);
    for (int i = 0; i <= 20000; ++i) {
      const double g = numerics::kGMax * i / 20000.0;
      CHECK(f_dimensionless(g, medium) >= m.f_c - 1e-9);
    }
    CHECK(f_dimensionless(numerics::kGMax, medium) > 1.0);
  }
}

TEST_CASE("min_f on an unstable medium") {
  try {
    min_f({3.5, kRDipolar});
    FAIL("expected UnstableSpectrum");
  } catch (const UnstableSpectrum& e) {
    CHECK(e.f_squared() < 0.0);
    CHECK(e.g() == doctest::Approx(0.87).epsilon(0.05));
  }
  CHECK(min_f_squared({3.5, kRDipolar}).value < 0.0);
}

TEST_CASE("critical rapidity") {
  CHECK_FALSE(critical_rapidity({1.0, 0.0}).has_value());
  for (const auto& a : anchors::kMinima) {
    const auto beta_c = critical_rapidity({a.A, kRDipolar});
    REQUIRE(beta_c.has_value());
    CHECK(*beta_c == doctest::Approx(a.beta_c).epsilon(1e-9));
  }
  CHECK(*critical_rapidity({2.5, kRDipolar}) ==
        doctest::Approx(std::atanh(min_f({2.5, kRDipolar}).f_c)).epsilon(1e-15));
  CHECK(*critical_rapidity({3.4454, kRDipolar}) < 1e-2);
  CHECK_THROWS_AS(critical_rapidity({3.6, kRDipolar}), UnstableSpectrum);
}

TEST_CASE("beta_c is nonincreasing in A on [2, A_c]") {
  double prev = 10.0;
  for (int i = 0; i <= 100; ++i) {
    const double A = 2.0 + (3.4454 - 2.0) * i / 100.0;
    const double b = *critical_rapidity({A, kRDipolar});
    CHECK(b <= prev);
    prev = b;
  }
}

TEST_CASE("critical A") {
  SUBCASE("DDI dominance") {
    const auto t0 = std::chrono::steady_clock::now();
    const CriticalAResult r = critical_A(kRDipolar, 1e-10);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(std::abs(r.A_c - kCriticalAReference) <= 1e-3);
    CHECK(r.A_c == doctest::Approx(anchors::kCriticalA_DDI).epsilon(1e-9));
    CHECK(r.monotone_verified);
    CHECK(secs < 1.0);
  }
  SUBCASE("bracketing certificate") {
    for (double R : {0.9, 1.1, kRDipolar}) {
      const double tol = 1e-9;
      const double A_c = critical_A(R, tol).A_c;
      CAPTURE(R);
      CHECK(min_f_squared({A_c - 10 * tol, R}).value > 0.0);
      CHECK(min_f_squared({A_c + 10 * tol, R}).value < 0.0);
    }
  }
  SUBCASE("close to the R bound the bracket grows past 64") {
    const double R = 2.0 / 3.0 * kRDipolar * 1.01;
    const CriticalAResult r = critical_A(R, 1e-6);
    CHECK(r.A_c > 64.0);
    CHECK(min_f_squared({r.A_c * 1.01, R}).value < 0.0);
  }
  SUBCASE("no instability") {
    CHECK_THROWS_AS(critical_A(0.0), NoInstability);
    CHECK_THROWS_AS(critical_A(kRDipolar / 2.0), NoInstability);
    CHECK_THROWS_AS(critical_A(2.0 / 3.0 * kRDipolar), NoInstability);
    // the bound is analytic: at half DDI nothing goes negative even at huge A
    CHECK(min_f_squared({1e6, kRDipolar / 2.0}).value > 0.2);
  }
  SUBCASE("invalid arguments") {
    CHECK_THROWS_AS(critical_A(kRDipolar, 0.0), DomainError);
    CHECK_THROWS_AS(critical_A(1.5), DomainError);
  }
}

TEST_CASE("classify") {
  SUBCASE("contact") {
    const auto s = classify({1.0, 0.0});
    CHECK(s.classification == SpectrumClass::MonotoneSuperluminal);
    CHECK_FALSE(s.beta_c.has_value());
    CHECK(s.f_c == 1.0);
  }
  SUBCASE("plain dip") {
    const auto s = classify({2.0, kRDipolar});
    CHECK(s.classification == SpectrumClass::SubluminalDip);
    CHECK(s.beta_c.has_value());
  }
  SUBCASE("rotonized") {
    const auto s = classify({3.4, kRDipolar});
    CHECK(s.classification == SpectrumClass::Rotonized);
    REQUIRE(s.g_maxon.has_value());
    REQUIRE(s.g_roton.has_value());
    CHECK(*s.g_maxon < *s.g_roton);
    const MediumParams m{3.4, kRDipolar};
    CHECK(*s.g_maxon * f_dimensionless(*s.g_maxon, m) >
          *s.g_roton * f_dimensionless(*s.g_roton, m));
  }
  SUBCASE("unstable") {
    const auto s = classify({3.5, kRDipolar});
    CHECK(s.classification == SpectrumClass::Unstable);
    CHECK(s.min_f_squared < 0.0);
  }
  SUBCASE("invariants over a grid") {
    for (double A : {0.2, 1.0, 2.0, 3.0, 3.44, 3.45, 5.0}) {
      for (double R : {0.0, 0.4, 0.9, kRDipolar}) {
        const auto s = classify({A, R});
        CHECK(s.f_c >= 0.0);
        CHECK((s.classification == SpectrumClass::Unstable) == (s.min_f_squared < 0.0));
        if (s.classification != SpectrumClass::Unstable) {
          CHECK(s.beta_c.has_value() == (s.f_c < 1.0));
          if (s.beta_c) CHECK(s.f_c < 1.0 - 1e-12);
        }
      }
    }
  }
  CHECK(to_string(SpectrumClass::Rotonized) == "rotonized");
}
