#pragma once

#include <cmath>

namespace qsixj {

// Double-double value hi + lo with |lo| <= ulp(hi)/2.
struct dd {
  double hi = 0.0;
  double lo = 0.0;

  constexpr dd() = default;
  constexpr dd(double h) : hi(h), lo(0.0) {}  // NOLINT(google-explicit-constructor)
  constexpr dd(double h, double l) : hi(h), lo(l) {}

  double value() const { return hi + lo; }
};

inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline dd quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline dd operator+(dd a, dd b) {
  dd s = two_sum(a.hi, b.hi);
  dd t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, double b) {
  dd p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline dd& operator+=(dd& a, dd b) { return a = a + b; }
inline dd& operator-=(dd& a, dd b) { return a = a - b; }

// Compensated running sum; `exact` switches between Neumaier (double) and full double-double.
class Accumulator {
 public:
  explicit Accumulator(bool exact = false) : exact_(exact) {}

  void add(double x) {
    if (exact_) {
      acc_ += dd(x);
      return;
    }
    double t = acc_.hi + x;
    if (std::abs(acc_.hi) >= std::abs(x)) {
      acc_.lo += (acc_.hi - t) + x;
    } else {
      acc_.lo += (x - t) + acc_.hi;
    }
    acc_.hi = t;
  }

  void add(dd x) {
    if (exact_) {
      acc_ += x;
    } else {
      add(x.hi);
      add(x.lo);
    }
  }

  dd total() const { return exact_ ? acc_ : quick_two_sum(acc_.hi, acc_.lo); }
  double value() const { return acc_.hi + acc_.lo; }

 private:
  bool exact_;
  dd acc_{};
};

}  // namespace qsixj
