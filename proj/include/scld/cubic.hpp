#pragma once

#include <array>

namespace scld {

// Real roots of a*x^3 + b*x^2 + c*x + d = 0, ascending.
// Degenerate leading coefficients fall back to the quadratic/linear case.
struct CubicRoots {
  std::array<double, 3> roots{};
  int count = 0;
};

CubicRoots real_cubic_roots(double a, double b, double c, double d);

}  // namespace scld
