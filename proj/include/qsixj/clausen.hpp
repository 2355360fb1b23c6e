#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qsixj {

namespace detail {

// c_n = zeta(2n) / ((2 pi)^{2n} n (2n+1)), the Taylor coefficients of
// Cl_2(t) - t + t log t on |t| < 2 pi.
inline const std::array<double, 40>& clausen_coefficients() {
  static const std::array<double, 40> c = [] {
    std::array<double, 40> out{};
    const double two_pi = 2.0 * std::numbers::pi;
    for (int n = 1; n <= 40; ++n) {
      double zeta;
      if (n == 1) {
        zeta = std::numbers::pi * std::numbers::pi / 6.0;
      } else {
        // Direct sum to N plus an Euler-Maclaurin tail.
        const double s = 2.0 * n;
        const double N = 60.0;
        zeta = 0.0;
        for (int k = 59; k >= 1; --k) zeta += std::pow(static_cast<double>(k), -s);
        zeta += std::pow(N, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(N, -s) + s * std::pow(N, -s - 1.0) / 12.0 -
                s * (s + 1.0) * (s + 2.0) * std::pow(N, -s - 3.0) / 720.0;
      }
      out[n - 1] = zeta / (std::pow(two_pi, 2.0 * n) * n * (2.0 * n + 1.0));
    }
    return out;
  }();
  return c;
}

inline double frac01(double t) {
  double f = t - std::floor(t);
  return f >= 1.0 ? 0.0 : f;
}

}  // namespace detail

// Cl_2(theta) = sum sin(k theta) / k^2.
inline double clausen(double theta) {
  const double two_pi = 2.0 * std::numbers::pi;
  double t = std::fmod(theta, two_pi);
  if (t < 0) t += two_pi;
  double sign = 1.0;
  if (t > std::numbers::pi) {
    t = two_pi - t;
    sign = -1.0;
  }
  if (t == 0.0) return 0.0;
  const auto& c = detail::clausen_coefficients();
  const double t2 = t * t;
  double series = 0.0;
  for (int n = static_cast<int>(c.size()) - 1; n >= 0; --n) series = series * t2 + c[n];
  return sign * (t - t * std::log(t) + t * t2 * series);
}

// Lobachevsky function.
inline double lobachevsky(double theta) { return 0.5 * clausen(2.0 * theta); }

// Li_2(e^{2 pi i t}) for real t.
inline std::complex<double> li2_circle(double t) {
  const double f = detail::frac01(t);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return {pi2 * (f * f - f + 1.0 / 6.0), clausen(2.0 * std::numbers::pi * f)};
}

// Principal log(1 - e^{2 pi i t}); singular for integer t.
inline std::complex<double> log_one_minus_circle(double t) {
  const double f = detail::frac01(t);
  if (f == 0.0) throw std::domain_error("log_one_minus_circle: branch point");
  return {std::log(2.0 * std::sin(std::numbers::pi * f)), std::numbers::pi * (f - 0.5)};
}

}  // namespace qsixj
