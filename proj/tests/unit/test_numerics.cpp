#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lvbec/numerics.hpp"

using namespace lvbec::numerics;

TEST_CASE("hybrid grid layout") {
  const auto grid = hybrid_grid(4096);
  CHECK(grid.size() == 4096);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == kGMax);
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
  CHECK(grid[1] == doctest::Approx(1e-6));
}

TEST_CASE("golden section finds a parabola vertex") {
  const auto m = golden_minimize([](double x) { return (x - 0.3) * (x - 0.3) + 2.0; },
                                 0.0, 1.0, 1e-12);
  CHECK(m.x == doctest::Approx(0.3).epsilon(1e-7));  // sqrt(eps) limit
  CHECK(m.value == doctest::Approx(2.0));
}

TEST_CASE("boundary refinement converges to adjacent doubles") {
  auto fn = [](double x) { return std::sqrt(2.0) - x; };
  const double root = refine_boundary(fn, 0.0, 2.0);
  CHECK(fn(root) > 0.0);
  CHECK(fn(std::nextafter(root, 2.0)) <= 0.0);
}

TEST_CASE("sign bisection") {
  const double r = bisect_sign([](double x) { return x * x < 3.0; }, 0.0, 4.0, 1e-13);
  CHECK(r == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("adaptive Gauss-Kronrod") {
  SUBCASE("smooth") {
    const auto r = adaptive_gauss_kronrod([](double x) { return std::exp(x); }, 0.0, 1.0,
                                          1e-12, 1e-300, 50);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(std::numbers::e - 1.0).epsilon(1e-14));
  }
  SUBCASE("peaked") {
    // ∫ 1/(1e-4 + x²) over [-1, 1] = 2·atan(100)/1e-2
    const auto r = adaptive_gauss_kronrod([](double x) { return 1.0 / (1e-4 + x * x); },
                                          -1.0, 1.0, 1e-10, 1e-300, 200);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(200.0 * std::atan(100.0)).epsilon(1e-9));
  }
  SUBCASE("refinement budget exhausted") {
    const auto r = adaptive_gauss_kronrod([](double x) { return 1.0 / std::sqrt(x); }, 0.0,
                                          1.0, 1e-14, 1e-300, 3);
    CHECK_FALSE(r.converged);
    CHECK(r.subdivisions == 3);
  }
}
