#include <cmath>
#include <random>

#include "doctest.h"
#include "scld/cubic.hpp"

using scld::CubicRoots;
using scld::real_cubic_roots;

namespace {
double eval(double a, double b, double c, double d, double x) {
  return ((a * x + b) * x + c) * x + d;
}
}  // namespace

TEST_CASE("three distinct real roots") {
  // (x-1)(x-2)(x-3)
  const CubicRoots r = real_cubic_roots(1.0, -6.0, 11.0, -6.0);
  REQUIRE(r.count == 3);
  CHECK(r.roots[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.roots[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.roots[2] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("one real root") {
  // x^3 + x + 1 has negative discriminant.
  const CubicRoots r = real_cubic_roots(1.0, 0.0, 1.0, 1.0);
  REQUIRE(r.count == 1);
  CHECK(r.roots[0] == doctest::Approx(-0.6823278038280193).epsilon(1e-12));
}

TEST_CASE("double root on the discriminant boundary") {
  // (x-1)^2 (x-4)
  const CubicRoots r = real_cubic_roots(1.0, -6.0, 9.0, -4.0);
  REQUIRE(r.count >= 2);
  CHECK(r.roots[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.roots[r.count - 1] == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("degenerate leading coefficients") {
  SUBCASE("quadratic") {
    const CubicRoots r = real_cubic_roots(0.0, 1.0, -5.0, 6.0);
    REQUIRE(r.count == 2);
    CHECK(r.roots[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.roots[1] == doctest::Approx(3.0).epsilon(1e-12));
  }
  SUBCASE("quadratic without real roots") {
    const CubicRoots r = real_cubic_roots(0.0, 1.0, 0.0, 1.0);
    CHECK(r.count == 0);
  }
  SUBCASE("linear") {
    const CubicRoots r = real_cubic_roots(0.0, 0.0, 2.0, 4.0);
    REQUIRE(r.count == 1);
    CHECK(r.roots[0] == doctest::Approx(-2.0).epsilon(1e-12));
  }
  SUBCASE("constant") {
    CHECK(real_cubic_roots(0.0, 0.0, 0.0, 1.0).count == 0);
  }
}

TEST_CASE("random well-separated roots are recovered in order") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> offset(0.5, 4.0);
  std::uniform_real_distribution<double> base(-10.0, 10.0);
  std::uniform_real_distribution<double> lead(0.1, 5.0);

  for (int trial = 0; trial < 300; ++trial) {
    const double r1 = base(rng);
    const double r2 = r1 + offset(rng);
    const double r3 = r2 + offset(rng);
    const double a = (trial % 2 == 0 ? 1.0 : -1.0) * lead(rng);
    const double b = -a * (r1 + r2 + r3);
    const double c = a * (r1 * r2 + r1 * r3 + r2 * r3);
    const double d = -a * r1 * r2 * r3;

    const CubicRoots got = real_cubic_roots(a, b, c, d);
    REQUIRE(got.count == 3);
    CHECK(got.roots[0] == doctest::Approx(r1).epsilon(1e-7));
    CHECK(got.roots[1] == doctest::Approx(r2).epsilon(1e-7));
    CHECK(got.roots[2] == doctest::Approx(r3).epsilon(1e-7));
    CHECK(got.roots[0] <= got.roots[1]);
    CHECK(got.roots[1] <= got.roots[2]);
    for (int i = 0; i < got.count; ++i) {
      const double x = got.roots[i];
      const double residual = std::abs(eval(a, b, c, d, x));
      const double scale = std::abs(a) * (1.0 + std::abs(x)) *
                           (1.0 + std::abs(x)) * (1.0 + std::abs(x));
      CHECK(residual <= 1e-9 * scale);
    }
  }
}
