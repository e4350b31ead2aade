#pragma once

// Reference computations shared by the unit tests. Kept independent of the
// library implementations they check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Characteristic function of Student t with nu degrees of freedom by direct
// quadrature of 2 * int_0^U cos(t u) f(u) du on segments no longer than a
// half period or one unit.
inline double student_t_cf(double nu, double t) {
  const double norm = std::exp(std::lgamma((nu + 1) / 2) - std::lgamma(nu / 2)) / std::sqrt(nu * std::numbers::pi);
  auto dens = [&](double u) { return norm * std::pow(1.0 + u * u / nu, -(nu + 1) / 2); };
  if (t == 0.0) return 1.0;
  const double seg = std::min(1.0, std::numbers::pi / std::abs(t));
  const double upper = 2e4;
  double s = 0.0;
  for (double a = 0.0; a < upper; a += seg) {
    s += simpson([&](double u) { return std::cos(t * u) * dens(u); }, a, a + seg, 32);
  }
  return 2.0 * s;
}

// Standard normal quantile by bisection on erfc.
inline double normal_quantile(double p) {
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (0.5 * std::erfc(-mid / std::sqrt(2.0)) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// c* for q = 1 noiseless: root of e^{2c}(1 - c) = 1 in (0, 1).
inline double c_star_q1() {
  double lo = 0.5, hi = 0.99;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::exp(2 * mid) * (1 - mid) - 1 > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
