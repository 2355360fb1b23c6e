#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qsixj {

// sign * exp(logmag); sign == 0 is an exact zero and logmag is then ignored.
struct LogSigned {
  int sign = 0;
  double logmag = 0.0;

  static LogSigned zero() { return {0, 0.0}; }
  static LogSigned one() { return {1, 0.0}; }

  static LogSigned from_real(double x) {
    if (x == 0.0) return zero();
    return {x > 0 ? 1 : -1, std::log(std::abs(x))};
  }

  bool is_zero() const { return sign == 0; }

  double to_double() const { return sign == 0 ? 0.0 : sign * std::exp(logmag); }

  // log|x|, -inf for zero.
  double log_abs() const {
    return sign == 0 ? -std::numeric_limits<double>::infinity() : logmag;
  }
};

inline LogSigned operator*(LogSigned a, LogSigned b) {
  if (a.sign == 0 || b.sign == 0) return LogSigned::zero();
  return {a.sign * b.sign, a.logmag + b.logmag};
}

inline LogSigned operator/(LogSigned a, LogSigned b) {
  if (b.sign == 0) throw std::domain_error("LogSigned: division by zero");
  if (a.sign == 0) return LogSigned::zero();
  return {a.sign * b.sign, a.logmag - b.logmag};
}

inline LogSigned operator-(LogSigned a) { return {-a.sign, a.logmag}; }

inline LogSigned operator+(LogSigned a, LogSigned b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  if (a.logmag < b.logmag) std::swap(a, b);
  double d = std::exp(b.logmag - a.logmag);
  if (a.sign == b.sign) return {a.sign, a.logmag + std::log1p(d)};
  if (d == 1.0) return LogSigned::zero();
  return {a.sign, a.logmag + std::log1p(-d)};
}

inline LogSigned operator-(LogSigned a, LogSigned b) { return a + (-b); }

}  // namespace qsixj
