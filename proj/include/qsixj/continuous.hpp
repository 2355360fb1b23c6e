#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qsixj/dd.hpp"
#include "qsixj/phi.hpp"
#include "qsixj/qarith.hpp"
#include "qsixj/sixj.hpp"

namespace qsixj {

// Smooth cutoff in z: 1 on [lo, hi], 0 outside [lo - width, hi + width],
// quintic smoothstep ramps in between.
struct BumpSpec {
  double lo = 0.0;
  double hi = 0.0;
  double width = 0.25;

  static double smoothstep(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
  }

  double operator()(double z) const {
    if (z < lo) return smoothstep((z - (lo - width)) / width);
    if (z > hi) return smoothstep((hi + width - z) / width);
    return 1.0;
  }

  double support_lo() const { return lo - width; }
  double support_hi() const { return hi + width; }
};

// The summand exp(-6 phi(1/r) - phi(zeta-1) + log 2 + sum_j phi(zeta - sigma_j + 1/r)
// + sum_k phi(tau_k - zeta) + polynomial phase) as a function of z, zeta = (2z+3)/r.
// sigma, tau and sum(eta) are either the discrete values of a spin sextuple or
// their continuum limits.
class SummandModel {
 public:
  SummandModel(std::shared_ptr<const PhiEvaluator> phi, std::array<double, 4> sigma,
               std::array<double, 3> tau, double eta_sum)
      : phi_(std::move(phi)), sigma_(sigma), tau_(tau), eta_sum_(eta_sum) {
    const double rr = r();
    const PhiValue p1 = phi_->at_rational(1);
    log_const_ = -6.0 * p1.re + std::numbers::ln2;
    im_const_ = -6.0 * p1.im;
    bump_.lo = (rr * *std::max_element(sigma_.begin(), sigma_.end()) - 3.0) / 2.0;
    bump_.hi = (rr * *std::min_element(tau_.begin(), tau_.end()) - 4.0) / 2.0;
  }

  static SummandModel from_spins(std::shared_ptr<const PhiEvaluator> phi, const SpinSextuple& s) {
    const double rr = phi->r();
    std::array<double, 4> sigma{};
    std::array<double, 3> tau{};
    for (int j = 0; j < 4; ++j) sigma[j] = (2.0 * s.S(j) + 3.0) / rr;
    for (int k = 0; k < 3; ++k) tau[k] = (2.0 * s.T(k) + 4.0) / rr;
    const double eta_sum = (s.twice_total() + 6.0) / rr;
    SummandModel model(std::move(phi), sigma, tau, eta_sum);
    model.spins_ = s;
    model.discrete_ = true;
    return model;
  }

  int r() const { return phi_->r(); }
  const BumpSpec& bump() const { return bump_; }
  const std::array<double, 4>& sigma() const { return sigma_; }
  const std::array<double, 3>& tau() const { return tau_; }
  double eta_sum() const { return eta_sum_; }
  bool discrete() const { return discrete_; }
  const SpinSextuple& spins() const { return spins_; }
  const PhiEvaluator& phi() const { return *phi_; }

  double zeta(double z) const { return (2.0 * z + 3.0) / r(); }

  // log of the modulus (without the cutoff).
  double log_modulus(double z) const {
    Accumulator acc;
    acc.add(log_const_);
    for_each_arg(z, [&](double coef, double t) { acc.add(coef * eval(t).re); });
    return acc.value();
  }

  // Argument of the summand, from the closed-form imaginary parts (not reduced).
  double phase(double z) const {
    const double rr = r();
    const double zt = zeta(z);
    double ph = im_const_ + std::numbers::pi * rr * zt / 2.0 +
                2.0 * std::numbers::pi * rr * (0.75 * zt * zt - eta_sum_ * zt + zt / rr);
    for_each_arg(z, [&](double coef, double t) { ph += coef * phi_im(phi_->r(), t); });
    return ph;
  }

  // log|f(z+1)| - log|f(z)| from the difference equation of phi_r.
  double log_step(double z) const {
    const double rr = r();
    const double pi = std::numbers::pi;
    double acc = 0.0;
    const double zt = zeta(z);
    acc += std::log(std::abs(2.0 * std::sin(pi * (zt - 1.0 + 1.0 / rr))));
    for (double s : sigma_) acc -= std::log(std::abs(2.0 * std::sin(pi * (zt - s + 2.0 / rr))));
    for (double t : tau_) acc += std::log(std::abs(2.0 * std::sin(pi * (t - zt - 1.0 / rr))));
    return acc;
  }

  // Arguments t at which phi_r is needed, with signs; all must lie in the strip.
  template <class F>
  void for_each_arg(double z, F&& fn) const {
    const double rr = r();
    const double zt = zeta(z);
    fn(-1.0, zt - 1.0);
    for (double s : sigma_) fn(1.0, zt - s + 1.0 / rr);
    for (double t : tau_) fn(1.0, t - zt);
  }

 private:
  PhiValue eval(double t) const {
    const double rr = r();
    if (!(t > -1.0 / rr && t < 1.0 + 1.0 / rr)) {
      throw std::domain_error("summand: phi_r argument outside the strip");
    }
    const double n = t * rr;
    const double nr = std::nearbyint(n);
    if (std::abs(n - nr) < 1e-9) return phi_->at_rational(static_cast<long>(nr));
    return (*phi_)(t);
  }

  std::shared_ptr<const PhiEvaluator> phi_;
  std::array<double, 4> sigma_;
  std::array<double, 3> tau_;
  double eta_sum_;
  double log_const_ = 0.0;
  double im_const_ = 0.0;
  BumpSpec bump_;
  SpinSextuple spins_{};
  bool discrete_ = false;
};

// Derived data of the continuous reformulation for one spin sextuple.
struct ContinuousSummandParams {
  Level level;
  SpinSextuple spins;
  std::shared_ptr<const PhiEvaluator> phi;

  ContinuousSummandParams(const Level& lv, const SpinSextuple& s)
      : level(lv), spins(s), phi(std::make_shared<PhiEvaluator>(lv.r())) {}

  ContinuousSummandParams(const Level& lv, const SpinSextuple& s, std::shared_ptr<const PhiEvaluator> shared)
      : level(lv), spins(s), phi(std::move(shared)) {
    if (phi->r() != lv.r()) throw std::invalid_argument("ContinuousSummandParams: level mismatch");
  }

  SummandModel model() const { return SummandModel::from_spins(phi, spins); }

  // d_2 = sum_{i <= j} x_i x_j - 1/2 over the six spins.
  double d2() const {
    const auto t = spins.twice();
    double acc = 0.0;
    for (int i = 0; i < 6; ++i) {
      for (int j = i; j < 6; ++j) acc += 0.25 * t[i] * t[j];
    }
    return acc - 0.5;
  }

  static double d3(Spin a, Spin b, Spin e) {
    const double x = a.value(), y = b.value(), w = e.value();
    return -0.5 * (x * x + y * y + w * w - 2 * x * y - 2 * x * w - 2 * y * w - x - y - w - 1);
  }
};

// log alpha~_r(z) (the function is positive on the window).
inline double alpha_tilde(const ContinuousSummandParams& p, double z) {
  const auto model = p.model();
  const auto& b = model.bump();
  if (z < b.support_lo() || z > b.support_hi()) throw std::domain_error("alpha_tilde: z outside the window");
  return model.log_modulus(z);
}

// beta_r(z) = log alpha~_r(z) / r.
inline double beta_r(const ContinuousSummandParams& p, double z) { return alpha_tilde(p, z) / p.level.r(); }

// Full argument of alpha~_r(z) including i^r xi^{2 d_2}; a multiple of 2 pi when positive.
inline double alpha_tilde_phase(const ContinuousSummandParams& p, double z) {
  const double rr = p.level.r();
  const auto model = p.model();
  const double pi = std::numbers::pi;
  double ph = pi * z + 2.0 * pi / rr * (3.0 * z * z - z - 2.0 * p.spins.twice_total() * z);
  ph += -6.0 * phi_im(p.level.r(), 1.0 / rr);
  model.for_each_arg(z, [&](double coef, double t) { ph += coef * phi_im(p.level.r(), t); });
  ph += pi / 2.0 * rr + 4.0 * pi * p.d2() / rr;
  return ph;
}

// Complex log of Delta~_r(u, v, w) for real arguments.
inline std::complex<double> delta_tilde_log(const PhiEvaluator& phi, double u, double v, double w) {
  const double rr = phi.r();
  auto at = [&](double t) {
    const double n = t * rr;
    const double nr = std::nearbyint(n);
    if (std::abs(n - nr) < 1e-9) return phi.at_rational(static_cast<long>(nr)).value();
    return phi(t).value();
  };
  std::complex<double> acc = 2.0 * at(1.0 / rr);
  acc += at((2 * u + 2 * v + 2 * w + 3) / rr - 1.0);
  acc -= std::numbers::ln2;
  acc -= at((2 * u + 2 * v - 2 * w + 1) / rr);
  acc -= at((2 * v + 2 * w - 2 * u + 1) / rr);
  acc -= at((2 * w + 2 * u - 2 * v + 1) / rr);
  return 0.5 * acc;
}

inline std::complex<double> delta_tilde_log(const PhiEvaluator& phi, Spin u, Spin v, Spin w) {
  return delta_tilde_log(phi, u.value(), v.value(), w.value());
}

// log|Delta~_r| for an admissible triple.
inline double delta_tilde(const Level& level, const PhiEvaluator& phi, Spin u, Spin v, Spin w) {
  if (!is_r_admissible(level, u, v, w)) throw std::domain_error("delta_tilde: inadmissible triple");
  return delta_tilde_log(phi, u, v, w).real();
}

// Log-assembled complex number: exp(log_scale) * mantissa.
struct ScaledComplex {
  double log_scale = 0.0;
  std::complex<double> mantissa{0.0, 0.0};

  double log_abs() const { return log_scale + std::log(std::abs(mantissa)); }
};

// g-bar in z-coordinates: psi(z) |g| e^{i phase}; returned in log form.
struct GbarValue {
  double cutoff = 0.0;
  double log_modulus = 0.0;
  double phase = 0.0;

  std::complex<double> value() const {
    if (cutoff == 0.0) return {0.0, 0.0};
    return cutoff * std::polar(std::exp(log_modulus), phase);
  }
};

inline GbarValue gbar(const SummandModel& model, double zeta) {
  const double z = (model.r() * zeta - 3.0) / 2.0;
  GbarValue out;
  out.cutoff = model.bump()(z);
  if (out.cutoff == 0.0) return out;
  out.log_modulus = model.log_modulus(z);
  out.phase = model.phase(z);
  return out;
}

// Integrals I(m) = int psi(z) |f(z)| e^{2 pi i m z} dz for the requested m, over the
// cutoff support.  Bulk unit cells reuse one set of phi evaluations through the
// exact shift identity; the two ramps are evaluated directly.
inline std::vector<ScaledComplex> fourier_integrals(const SummandModel& model, const std::vector<int>& ms) {
  using boost::math::quadrature::gauss;
  const auto& bump = model.bump();
  if (!(bump.hi > bump.lo)) throw std::domain_error("fourier_integrals: empty window");

  // Gauss-Legendre nodes on [0, 1].
  std::vector<double> x, w;
  {
    const auto& ab = gauss<double, 20>::abscissa();
    const auto& wt = gauss<double, 20>::weights();
    for (std::size_t i = 0; i < ab.size(); ++i) {
      const double sgns[2] = {1.0, -1.0};
      for (double s : sgns) {
        if (ab[i] == 0.0 && s < 0) continue;
        x.push_back(0.5 + 0.5 * s * ab[i]);
        w.push_back(0.5 * wt[i]);
      }
    }
  }

  struct Sample {
    double z;
    double weight;
    double logv;
  };
  std::vector<Sample> samples;

  auto add_ramp = [&](double a, double b) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double z = a + (b - a) * x[i];
      samples.push_back({z, w[i] * (b - a) * bump(z), model.log_modulus(z)});
    }
  };
  add_ramp(bump.support_lo(), bump.lo);

  const double span = bump.hi - bump.lo;
  const int cells = static_cast<int>(std::floor(span));
  for (std::size_t i = 0; i < x.size(); ++i) {
    double z = bump.lo + x[i];
    double lv = model.log_modulus(z);
    for (int k = 0; k < cells; ++k) {
      samples.push_back({z, w[i], lv});
      if (k + 1 < cells) {
        lv += model.log_step(z);
        z += 1.0;
      }
    }
  }
  const double rest = span - cells;
  if (rest > 1e-14) {
    const double a = bump.lo + cells;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double z = a + rest * x[i];
      samples.push_back({z, w[i] * rest, model.log_modulus(z)});
    }
  }
  add_ramp(bump.hi, bump.support_hi());

  double anchor = -std::numeric_limits<double>::infinity();
  for (const auto& s : samples) anchor = std::max(anchor, s.logv);

  std::vector<ScaledComplex> out(ms.size());
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const int m = ms[i];
    Accumulator re, im;
    for (const auto& s : samples) {
      const double v = s.weight * std::exp(s.logv - anchor);
      const double arg = 2.0 * std::numbers::pi * m * s.z;
      re.add(v * std::cos(arg));
      im.add(v * std::sin(arg));
    }
    out[i] = {anchor, {re.value(), im.value()}};
  }
  return out;
}

inline std::vector<ScaledComplex> fourier_integrals(const SummandModel& model, int m_max) {
  std::vector<int> ms(m_max + 1);
  for (int m = 0; m <= m_max; ++m) ms[m] = m;
  return fourier_integrals(model, ms);
}

}  // namespace qsixj
