#include "scld/cubic.hpp"

#include <algorithm>
#include <cmath>

namespace scld {

namespace {

void push(CubicRoots& out, double x) { out.roots[out.count++] = x; }

// Stable quadratic: avoids cancellation in the smaller-magnitude root.
CubicRoots quadratic_roots(double a, double b, double c) {
  CubicRoots out;
  if (a == 0.0) {
    if (b != 0.0) push(out, -c / b);
    return out;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return out;
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (b + std::copysign(sq, b));
  if (q != 0.0) {
    push(out, q / a);
    push(out, c / q);
  } else {
    push(out, 0.0);
    if (disc > 0.0) push(out, -b / a);
  }
  return out;
}

}  // namespace

CubicRoots real_cubic_roots(double a, double b, double c, double d) {
  if (a == 0.0) {
    CubicRoots out = quadratic_roots(b, c, d);
    std::sort(out.roots.begin(), out.roots.begin() + out.count);
    return out;
  }

  // Monic form x^3 + p x^2 + q x + r.
  const double p = b / a;
  const double q = c / a;
  const double r = d / a;

  const double Q = (p * p - 3.0 * q) / 9.0;
  const double R = (2.0 * p * p * p - 9.0 * p * q + 27.0 * r) / 54.0;
  const double R2 = R * R;
  const double Q3 = Q * Q * Q;

  CubicRoots out;
  if (R2 < Q3) {
    // Three real roots, trigonometric form.
    const double theta = std::acos(std::clamp(R / std::sqrt(Q3), -1.0, 1.0));
    const double m = -2.0 * std::sqrt(Q);
    const double shift = p / 3.0;
    push(out, m * std::cos(theta / 3.0) - shift);
    push(out, m * std::cos((theta + 2.0 * M_PI) / 3.0) - shift);
    push(out, m * std::cos((theta - 2.0 * M_PI) / 3.0) - shift);
  } else {
    const double A =
        -std::copysign(std::cbrt(std::abs(R) + std::sqrt(R2 - Q3)), R);
    const double B = (A != 0.0) ? Q / A : 0.0;
    push(out, (A + B) - p / 3.0);
    if (A == B && A != 0.0) {
      // Double root on the discriminant boundary.
      push(out, -A - p / 3.0);
    }
  }
  std::sort(out.roots.begin(), out.roots.begin() + out.count);
  return out;
}

}  // namespace scld
