#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsixj/dd.hpp"
#include "qsixj/log_signed.hpp"
#include "qsixj/qarith.hpp"
#include "qsixj/tetra.hpp"

namespace qsixj {

// The symbol {a b e; d c f}; storage order a, b, c, d, e, f.
struct SpinSextuple {
  Spin a, b, c, d, e, f;

  static SpinSextuple from_twice(const std::array<int, 6>& t) {
    return {{t[0]}, {t[1]}, {t[2]}, {t[3]}, {t[4]}, {t[5]}};
  }

  std::array<int, 6> twice() const {
    return {a.twice, b.twice, c.twice, d.twice, e.twice, f.twice};
  }

  std::array<Spin, 3> triangle(int j) const {
    const auto t = twice();
    const auto& tri = kTriangles.at(j);
    return {Spin{t[tri[0]]}, Spin{t[tri[1]]}, Spin{t[tri[2]]}};
  }

  // S_j, j = 0..3, in the order (a,b,e), (a,c,f), (b,d,f), (c,d,e).
  int S(int j) const {
    const auto t = twice();
    const auto& tri = kTriangles.at(j);
    return (t[tri[0]] + t[tri[1]] + t[tri[2]]) / 2;
  }

  // T_k, k = 0..2: a+b+c+d, a+d+e+f, b+c+e+f.
  int T(int k) const {
    const auto t = twice();
    int total = 0;
    for (int x : t) total += x;
    const auto [p, q] = kOppositePairs.at(k);
    return (total - t[p] - t[q]) / 2;
  }

  int m() const { return std::max({S(0), S(1), S(2), S(3)}); }
  int M() const { return std::min({T(0), T(1), T(2)}); }

  // Sum of all six spins, doubled.
  int twice_total() const {
    int s = 0;
    for (int x : twice()) s += x;
    return s;
  }

  friend bool operator==(const SpinSextuple&, const SpinSextuple&) = default;
};

inline bool is_admissible(const Level& level, const SpinSextuple& s) {
  for (int j = 0; j < 4; ++j) {
    auto t = s.triangle(j);
    if (!is_r_admissible(level, t[0], t[1], t[2])) return false;
  }
  return true;
}

inline void require_admissible(const Level& level, const SpinSextuple& s) {
  if (!is_admissible(level, s)) {
    throw std::domain_error("sextuple is not r-admissible at r = " + std::to_string(level.r()));
  }
}

// Square root of a possibly negative real radicand, kept as sign + log.
struct DeltaValue {
  int radicand_sign = 1;
  double log_radicand = 0.0;

  double logmag() const { return 0.5 * log_radicand; }
  bool imaginary() const { return radicand_sign < 0; }
  std::complex<double> value() const {
    double m = std::exp(logmag());
    return imaginary() ? std::complex<double>(0.0, m) : std::complex<double>(m, 0.0);
  }
};

inline DeltaValue delta_coeff(const Level& level, Spin u, Spin v, Spin w) {
  if (!is_r_admissible(level, u, v, w)) throw std::domain_error("delta_coeff: inadmissible triple");
  const int p = (u.twice + v.twice - w.twice) / 2;
  const int q = (v.twice + w.twice - u.twice) / 2;
  const int s = (w.twice + u.twice - v.twice) / 2;
  const int n = (u.twice + v.twice + w.twice) / 2 + 1;
  LogSigned rad = level.qfact(p) * level.qfact(q) * level.qfact(s) / level.qfact(n);
  return {rad.sign, rad.logmag};
}

namespace detail {

inline dd alpha_log_dd(const Level& level, const SpinSextuple& s, int z, int& sign) {
  int sg = (z % 2 == 0) ? 1 : -1;
  sg *= level.qfact_sign(z + 1);
  dd acc = level.log_qfact_dd(z + 1);
  for (int j = 0; j < 4; ++j) {
    const int n = z - s.S(j);
    sg *= level.qfact_sign(n);
    acc -= level.log_qfact_dd(n);
  }
  for (int k = 0; k < 3; ++k) {
    const int n = s.T(k) - z;
    sg *= level.qfact_sign(n);
    acc -= level.log_qfact_dd(n);
  }
  sign = sg;
  return acc;
}

}  // namespace detail

// (-1)^z [z+1]! / (prod_j [z-S_j]! prod_k [T_k-z]!).
inline LogSigned alpha_term(const Level& level, const SpinSextuple& s, int z) {
  if (z < s.m() || z > s.M()) throw std::domain_error("alpha_term: z outside [m, M]");
  int sign = 0;
  dd l = detail::alpha_log_dd(level, s, z, sign);
  if (sign == 0) return LogSigned::zero();
  return {sign, l.value()};
}

struct SixjResult {
  // |6j| (sign 0 when the symbol vanishes).
  LogSigned magnitude;
  // The value is i^quarter_turns * |6j|.
  int quarter_turns = 0;
  // Complex value; only populated when it fits in binary64.
  std::complex<double> value{0.0, 0.0};
  bool value_fits = false;

  // Diagnostics of the Racah sum.
  int terms_total = 0;
  int terms_nonzero = 0;
  bool same_sign = true;
  int z_max = 0;
  double max_term_logmag = 0.0;
  double log_abs_sum = 0.0;
  double delta_logmag = 0.0;

  double logmag() const { return magnitude.log_abs(); }
  std::complex<double> phase() const {
    static constexpr std::array<std::complex<double>, 4> kI = {
        std::complex<double>{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return kI[((quarter_turns % 4) + 4) % 4];
  }
};

inline SixjResult sixj_rw(const Level& level, const SpinSextuple& s) {
  require_admissible(level, s);
  const bool exact = level.precision() == Precision::DoubleDouble;
  SixjResult out;

  int imaginary_count = 0;
  double delta_log = 0.0;
  for (int j = 0; j < 4; ++j) {
    auto t = s.triangle(j);
    DeltaValue dv = delta_coeff(level, t[0], t[1], t[2]);
    if (dv.radicand_sign == 0) throw std::logic_error("sixj_rw: vanishing triangle coefficient");
    if (dv.imaginary()) ++imaginary_count;
    delta_log += dv.logmag();
  }
  out.delta_logmag = delta_log;

  const int m = s.m();
  const int M = s.M();
  std::vector<dd> logs;
  std::vector<int> signs;
  logs.reserve(M - m + 1);
  signs.reserve(M - m + 1);
  int first_sign = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (int z = m; z <= M; ++z) {
    int sg = 0;
    dd l = detail::alpha_log_dd(level, s, z, sg);
    ++out.terms_total;
    if (sg == 0) continue;
    ++out.terms_nonzero;
    if (first_sign == 0) first_sign = sg;
    if (sg != first_sign) out.same_sign = false;
    logs.push_back(l);
    signs.push_back(sg);
    if (l.value() > best) {
      best = l.value();
      out.z_max = z;
    }
  }
  if (logs.empty()) {
    out.magnitude = LogSigned::zero();
    out.value_fits = true;
    return out;
  }
  out.max_term_logmag = best;

  Accumulator pos(exact), neg(exact);
  const dd anchor(best);
  for (std::size_t i = 0; i < logs.size(); ++i) {
    double w = std::exp((logs[i] - anchor).value());
    (signs[i] > 0 ? pos : neg).add(w);
  }
  dd diff = pos.total() - neg.total();
  double mant = diff.value();
  if (mant == 0.0) {
    out.magnitude = LogSigned::zero();
    out.value_fits = true;
    return out;
  }
  const int sum_sign = mant > 0 ? 1 : -1;
  out.log_abs_sum = best + std::log(std::abs(mant));
  out.magnitude = {1, out.log_abs_sum + delta_log};
  out.quarter_turns = (imaginary_count + (sum_sign < 0 ? 2 : 0)) % 4;
  if (out.magnitude.logmag < 700.0) {
    out.value = out.phase() * std::exp(out.magnitude.logmag);
    out.value_fits = true;
  }
  return out;
}

}  // namespace qsixj
