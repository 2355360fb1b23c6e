#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "qsixj/dd.hpp"
#include "qsixj/qarith.hpp"

namespace qsixj {

// phi_r(t) = re + i im.
struct PhiValue {
  double re = 0.0;
  double im = 0.0;

  std::complex<double> value() const { return {re, im}; }
};

namespace detail {

// sinh(y)/y - 1, accurate for small |y|.
inline double sinhc_m1(double y) {
  const double y2 = y * y;
  if (y2 < 0.25) {
    // Taylor series through y^14.
    double s = 1.0 / 1307674368000.0;
    s = s * y2 + 1.0 / 6227020800.0;
    s = s * y2 + 1.0 / 39916800.0;
    s = s * y2 + 1.0 / 362880.0;
    s = s * y2 + 1.0 / 5040.0;
    s = s * y2 + 1.0 / 120.0;
    s = s * y2 + 1.0 / 6.0;
    return s * y2;
  }
  return std::sinh(y) / y - 1.0;
}

// log sinh(y) for y > 0 without overflow.
inline double log_sinh(double y) {
  if (y < 1.0) return std::log(y) + std::log1p(sinhc_m1(y));
  return y - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * y));
}

// Even part of the Faddeev integrand minus its double pole (u r / 4) csch^2 x.
inline double phi_re_integrand(double x, double u, double r) {
  if (u == 0.0) return 0.0;
  const double scale = 0.25 * u * r;
  if (x < 1e-6) {
    return scale * (u * u / 6.0 + 1.0 / 6.0 - 2.0 / (3.0 * r * r));
  }
  if (x <= 30.0) {
    const double tu = sinhc_m1(u * x);
    const double t1 = sinhc_m1(x);
    const double tr = sinhc_m1(2.0 * x / r);
    const double bracket = (tu + t1 + tu * t1 - tr) / ((1.0 + tr) * (1.0 + t1));
    return scale * bracket / (x * std::sinh(x));
  }
  const double au = std::abs(u);
  const double lg = log_sinh(au * x) - std::numbers::ln2 - std::log(x) - log_sinh(x) -
                    log_sinh(2.0 * x / r);
  const double g = (u > 0 ? 1.0 : -1.0) * std::exp(lg);
  const double em = std::exp(-2.0 * x);
  const double csch2 = 4.0 * em / ((1.0 - em) * (1.0 - em));
  return g - scale * csch2;
}

}  // namespace detail

// Closed-form imaginary part, the half-residue at the origin.
inline double phi_im(int r, double t) {
  const double rr = r;
  return -std::numbers::pi * (6.0 * rr * rr * t * t - 6.0 * rr * rr * t + rr * rr - 2.0) / (24.0 * rr);
}

// Real part by quadrature of the even-symmetrized integrand on geometric panels.
inline double phi_re(int r, double t) {
  const double rr = r;
  const double u = 2.0 * t - 1.0;
  const double kappa = 1.0 + 2.0 / rr - std::abs(u);
  if (!(kappa > 0.0)) throw std::domain_error("phi_r: t outside the convergence strip");
  if (u == 0.0) return 0.0;
  const double x_max = std::max(40.0, 42.0 / kappa);
  auto f = [u, rr](double x) { return detail::phi_re_integrand(x, u, rr); };
  using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
  Accumulator acc;
  double a = 0.0;
  double b = 0.5;
  while (a < x_max) {
    b = std::min(b, x_max);
    acc.add(GK::integrate(f, a, b, 12, 1e-14));
    a = b;
    b = 2.0 * b;
  }
  return acc.value() - 0.25 * u * rr;
}

inline PhiValue phi_r(int r, double t) { return {phi_re(r, t), phi_im(r, t)}; }
inline PhiValue phi_r(const Level& level, double t) { return phi_r(level.r(), t); }

// phi_r with memoization of the rational arguments t = n / r.
class PhiEvaluator {
 public:
  explicit PhiEvaluator(int r) : r_(r) {}

  int r() const { return r_; }

  PhiValue operator()(double t) const { return phi_r(r_, t); }

  PhiValue at_rational(long n) const {
    {
      std::shared_lock lock(mutex_);
      auto it = cache_.find(n);
      if (it != cache_.end()) return it->second;
    }
    PhiValue v = phi_r(r_, static_cast<double>(n) / r_);
    std::unique_lock lock(mutex_);
    cache_.emplace(n, v);
    return v;
  }

  std::size_t cache_size() const {
    std::shared_lock lock(mutex_);
    return cache_.size();
  }

 private:
  int r_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<long, PhiValue> cache_;
};

// (q)_n = prod_{k=1}^n (1 - xi_r^{2k}) by direct product.
inline std::complex<double> qpoch(const Level& level, int n) {
  if (n < 0) throw std::domain_error("qpoch: negative n");
  std::complex<double> p(1.0, 0.0);
  for (int k = 1; k <= n; ++k) {
    p *= 1.0 - std::polar(1.0, 4.0 * std::numbers::pi * k / level.r());
  }
  return p;
}

}  // namespace qsixj
