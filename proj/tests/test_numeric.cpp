#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "domlab/numeric.hpp"

using namespace domlab::num;

TEST_CASE("golden section finds parabola minimum") {
  double x = golden_min([](double t) { return (t - 3.25) * (t - 3.25); }, 0,
                        10, 1e-10);
  CHECK(std::abs(x - 3.25) < 1e-8);
}

TEST_CASE("golden_max is the mirror of golden_min") {
  double x = golden_max([](double t) { return -(t + 1.5) * (t + 1.5); }, -10,
                        10, 1e-10);
  CHECK(std::abs(x + 1.5) < 1e-8);
}

TEST_CASE("bisect_root on a sign change") {
  double r = bisect_root([](double t) { return std::sin(t); }, 3, 4, 1e-12);
  CHECK(std::abs(r - M_PI) < 1e-10);
}

TEST_CASE("bisect_predicate returns the switch point") {
  double s = bisect_predicate([](double t) { return t >= 2.5; }, 0, 10, 1e-9);
  CHECK(std::abs(s - 2.5) < 1e-8);
}

TEST_CASE("bisect_predicate honors relative tolerance") {
  double s = bisect_predicate([](double t) { return t >= 3e-6; }, 0, 1, 0.0,
                              1e-4);
  CHECK(std::abs(s - 3e-6) < 3e-6 * 2e-4 + 1e-15);
}

TEST_CASE("adaptive_simpson integrates polynomials and gaussians") {
  double p = adaptive_simpson([](double t) { return t * t; }, 0, 1, 1e-13);
  CHECK(std::abs(p - 1.0 / 3.0) < 1e-12);
  double g = adaptive_simpson([](double t) { return std::exp(-t * t); }, -8, 8,
                              1e-13);
  CHECK(std::abs(g - std::sqrt(M_PI)) < 1e-10);
}

TEST_CASE("refine_min locates the global minimum of a multimodal function") {
  auto f = [](double t) { return std::sin(t) + 0.01 * t; };
  auto grid = linspace(-10, 10, 200);
  auto got = refine_min(f, grid, 1e-12);
  // global minimum of sin(t) + .01 t on [-10, 10] sits near t = -pi/2 - 2pi
  double best = got.value;
  for (double t = -10; t <= 10; t += 1e-4) CHECK(best <= f(t) + 1e-9);
  CHECK(std::abs(std::cos(got.x) + 0.01) < 1e-6);
}

TEST_CASE("refine_max handles extrema at grid edges") {
  auto grid = linspace(0, 5, 64);
  auto got = refine_max([](double t) { return -t; }, grid, 1e-12);
  CHECK(got.x == 0);
  CHECK(got.value == 0);
}

TEST_CASE("linspace endpoints are exact") {
  auto g = linspace(-2.5, 7.5, 11);
  REQUIRE(g.size() == 11);
  CHECK(g.front() == -2.5);
  CHECK(g.back() == 7.5);
  CHECK(std::abs(g[5] - 2.5) < 1e-12);
}

TEST_CASE("sort_unique sorts and deduplicates") {
  std::vector<double> v{3, 1, 2, 3, 1, 1};
  sort_unique(v);
  CHECK(v == std::vector<double>{1, 2, 3});
}
