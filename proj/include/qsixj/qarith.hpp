#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsixj/dd.hpp"
#include "qsixj/log_signed.hpp"

namespace qsixj {

enum class Precision { Double, DoubleDouble };

// Half-integer spin stored doubled.
struct Spin {
  int twice = 0;

  static Spin from_value(double v) { return Spin{static_cast<int>(std::lround(2.0 * v))}; }
  double value() const { return 0.5 * twice; }
  friend bool operator==(Spin, Spin) = default;
};

// Odd r >= 3 together with the shared prefix tables of log|[j]| and sign([j]!).
class Level {
 public:
  explicit Level(int r, Precision precision = Precision::Double)
      : r_(r), precision_(precision) {
    if (r < 3 || r % 2 == 0) throw std::invalid_argument("Level: r must be odd and >= 3");
    build_tables();
  }

  int r() const { return r_; }
  Precision precision() const { return precision_; }
  double sin_unit() const { return sin_unit_; }
  std::complex<double> xi() const { return std::polar(1.0, 2.0 * std::numbers::pi / r_); }
  int max_fact_arg() const { return static_cast<int>(tables_->sign.size()) - 1; }

  // [n] = sin(2 pi n / r) / sin(2 pi / r); zero exactly when r | n.
  double qint(long n) const {
    long k = ((n % r_) + r_) % r_;
    if (k == 0) return 0.0;
    return sin_pi_frac(2 * k) / sin_unit_;
  }

  LogSigned qfact(int n) const {
    if (n < 0) throw std::domain_error("qfact: negative argument " + std::to_string(n));
    if (n > max_fact_arg()) throw std::out_of_range("qfact: argument beyond table");
    const auto& t = *tables_;
    if (t.zeros[n] > 0) return LogSigned::zero();
    return {t.sign[n], t.logfact[n].value()};
  }

  // log|[n]!| as a double-double; only meaningful when qfact(n) is nonzero.
  dd log_qfact_dd(int n) const { return tables_->logfact.at(n); }
  int qfact_sign(int n) const { return tables_->zeros.at(n) > 0 ? 0 : tables_->sign.at(n); }

 private:
  struct Tables {
    std::vector<dd> logfact;
    std::vector<int8_t> sign;
    std::vector<int> zeros;
  };

  // sin(pi * m / r) with the argument folded into [0, pi/2] before the call.
  double sin_pi_frac(long m) const {
    long two_r = 2L * r_;
    m = ((m % two_r) + two_r) % two_r;
    double s = 1.0;
    if (m > r_) {
      m -= r_;
      s = -1.0;
    }
    if (2 * m > r_) m = r_ - m;
    return s * std::sin(std::numbers::pi * static_cast<double>(m) / r_);
  }

  void build_tables() {
    sin_unit_ = sin_pi_frac(2);
    auto t = std::make_shared<Tables>();
    const int n_max = 2 * r_ + 2;
    t->logfact.resize(n_max + 1);
    t->sign.resize(n_max + 1);
    t->zeros.resize(n_max + 1);
    Accumulator acc(precision_ == Precision::DoubleDouble);
    const double log_unit = std::log(sin_unit_);
    int sign = 1;
    int zeros = 0;
    t->logfact[0] = dd(0.0);
    t->sign[0] = 1;
    t->zeros[0] = 0;
    for (int j = 1; j <= n_max; ++j) {
      if (j % r_ == 0) {
        ++zeros;
      } else {
        double s = sin_pi_frac(2L * j);
        if (s < 0) sign = -sign;
        acc.add(std::log(std::abs(s)));
        acc.add(-log_unit);
      }
      t->logfact[j] = acc.total();
      t->sign[j] = static_cast<int8_t>(sign);
      t->zeros[j] = zeros;
    }
    tables_ = std::move(t);
  }

  int r_;
  Precision precision_;
  double sin_unit_ = 0.0;
  std::shared_ptr<const Tables> tables_;
};

inline double qint(const Level& level, long n) { return level.qint(n); }
inline LogSigned qfact(const Level& level, int n) { return level.qfact(n); }

// Spins in {0, 1/2, ..., (r-2)/2}, Clebsch-Gordan, and a + b + c <= r - 2.
inline bool is_r_admissible(const Level& level, Spin a, Spin b, Spin c) {
  const int cap = level.r() - 2;
  for (Spin s : {a, b, c}) {
    if (s.twice < 0 || s.twice > cap) return false;
  }
  const int sum = a.twice + b.twice + c.twice;
  if (sum % 2 != 0) return false;
  if (c.twice > a.twice + b.twice) return false;
  if (c.twice < std::abs(a.twice - b.twice)) return false;
  return sum / 2 <= cap;
}

}  // namespace qsixj
