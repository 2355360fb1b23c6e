#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qsixj/continuous.hpp"
#include "qsixj/geometry.hpp"
#include "qsixj/phi.hpp"
#include "qsixj/qarith.hpp"
#include "qsixj/sixj.hpp"
#include "qsixj/tetra.hpp"

namespace qsixj {

struct HarnessOptions {
  Precision precision = Precision::Double;
  int threads = 1;
};

// Runs fn(0..n-1) on up to `threads` workers; results are returned in index order.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, int threads, F&& fn) {
  std::vector<T> out(n);
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next++;
      if (i >= n) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  for (std::size_t t = 0; t < k; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spin sequences

// NearestAdmissible: the admissible sextuple closest to the targets (sum of |2x + 1 - r eta|)
// such that every realised vertex keeps its angle sum below pi and the designated ideal vertex
// has S >= r/2.  Ties go to the smaller f, then e, c, b, d, a.
// PriorityFECB: round, lift the designated vertex, then fix odd triangles one spin at a time,
// taking the spin among f, e, c, b that sits in the most odd triangles.
enum class ParityPolicy { NearestAdmissible, PriorityFECB };

struct SpinSequenceRule {
  AngleSet angles;
  ParityPolicy parity = ParityPolicy::NearestAdmissible;
  bool ideal_bias = true;
};

struct SpinSequence {
  SpinSextuple spins;
  int designated_vertex = -1;  // first ideal vertex, -1 if none
  int adjustments = 0;         // unit steps away from the rounded targets
  bool hypothesis = false;     // some S_j >= r/2
};

class SpinSequenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline int triangle_sum(const std::array<int, 6>& tw, int j) {
  const auto& t = kTriangles[j];
  return tw[t[0]] + tw[t[1]] + tw[t[2]];
}

inline bool in_triangle(int j, int e) {
  const auto& t = kTriangles[j];
  return t[0] == e || t[1] == e || t[2] == e;
}

inline int priority_repair(std::array<int, 6>& tw, int r, int dv) {
  if (dv >= 0) {
    while (triangle_sum(tw, dv) < r) {
      for (int e : kTriangles[dv]) ++tw[e];
    }
    // An odd sum equal to r cannot be lowered by the repair below.
    if (triangle_sum(tw, dv) == r) ++tw[*std::min_element(kTriangles[dv].begin(), kTriangles[dv].end())];
  }
  static constexpr std::array<int, 4> kPriority = {5, 4, 2, 1};  // f, e, c, b
  int steps = 0;
  for (;;) {
    std::array<bool, 4> odd{};
    bool any = false;
    for (int j = 0; j < 4; ++j) {
      odd[j] = triangle_sum(tw, j) % 2 != 0;
      any = any || odd[j];
    }
    if (!any) return steps;
    if (steps == 4) throw SpinSequenceError("build_spin_sequence: parity repair did not converge");
    int pick = -1, best = 0;
    for (int e : kPriority) {
      if (tw[e] == 0) continue;
      if (dv >= 0 && in_triangle(dv, e) && triangle_sum(tw, dv) - 1 < r) continue;
      int count = 0;
      for (int j = 0; j < 4; ++j) {
        if (in_triangle(j, e) && odd[j]) ++count;
      }
      if (count > best) {
        best = count;
        pick = e;
      }
    }
    if (pick < 0) throw SpinSequenceError("build_spin_sequence: no spin available for parity repair");
    --tw[pick];
    ++steps;
  }
}

inline void nearest_admissible(std::array<int, 6>& tw, const std::array<double, 6>& target, int r,
                               const std::array<int, 4>& floor) {
  static constexpr int kReach = 2;
  static constexpr std::array<int, 6> kTieOrder = {5, 4, 2, 1, 3, 0};  // f, e, c, b, d, a
  const auto base = tw;
  std::array<int, 6> cur{}, best{};
  double best_dev = INFINITY;
  bool found = false;
  auto better = [&](double dev) {
    if (dev < best_dev - 1e-9) return true;
    if (dev > best_dev + 1e-9) return false;
    for (int e : kTieOrder) {
      if (cur[e] != best[e]) return cur[e] < best[e];
    }
    return false;
  };
  auto visit = [&](auto&& self, int i, double dev) -> void {
    if (dev > best_dev + 1e-9) return;
    if (i == 6) {
      for (int j = 0; j < 4; ++j) {
        const int s = triangle_sum(cur, j);
        if (s % 2 != 0 || s < floor[j] || s > 2 * (r - 2)) return;
        const auto& t = kTriangles[j];
        const int a = cur[t[0]], b = cur[t[1]], c = cur[t[2]];
        if (c > a + b || a > b + c || b > a + c) return;
      }
      if (better(dev)) {
        best = cur;
        best_dev = dev;
        found = true;
      }
      return;
    }
    for (int d = -kReach; d <= kReach; ++d) {
      const int v = base[i] + d;
      if (v < 0 || v > r - 2) continue;
      cur[i] = v;
      self(self, i + 1, dev + std::abs(v + 1 - target[i]));
    }
  };
  visit(visit, 0, 0.0);
  if (!found) throw SpinSequenceError("build_spin_sequence: no admissible sextuple near the targets");
  tw = best;
}

}  // namespace detail

inline SpinSequence build_spin_sequence(const SpinSequenceRule& rule, int r) {
  if (r < 3 || r % 2 == 0) throw std::invalid_argument("build_spin_sequence: r must be odd and >= 3");
  std::array<int, 6> tw{};
  std::array<double, 6> target{};
  for (int i = 0; i < 6; ++i) {
    target[i] = r * rule.angles.eta(i);
    tw[i] = static_cast<int>(std::clamp<long>(std::lround(target[i] - 1.0), 0, r - 2));
  }
  const auto rounded = tw;

  SpinSequence out;
  std::array<VertexType, 4> type{};
  for (int v = 0; v < 4; ++v) {
    type[v] = classify_vertex(rule.angles, v);
    if (type[v] == VertexType::Ideal && out.designated_vertex < 0) out.designated_vertex = v;
  }
  const int dv = rule.ideal_bias ? out.designated_vertex : -1;

  if (rule.parity == ParityPolicy::PriorityFECB) {
    detail::priority_repair(tw, r, dv);
  } else {
    // Realised eta sum (2S + 3) / r > 1 means 2S >= r - 1 for odd r.
    std::array<int, 4> floor{};
    for (int j = 0; j < 4; ++j) {
      if (j == dv) {
        floor[j] = r + 1;
      } else if (type[j] != VertexType::Normal) {
        floor[j] = r - 1;
      }
    }
    detail::nearest_admissible(tw, target, r, floor);
  }
  for (int i = 0; i < 6; ++i) out.adjustments += std::abs(tw[i] - rounded[i]);

  out.spins = SpinSextuple::from_twice(tw);
  const Level level(r);
  if (!is_admissible(level, out.spins)) {
    throw SpinSequenceError("build_spin_sequence: angles too degenerate for r = " + std::to_string(r));
  }
  out.hypothesis = 2 * out.spins.m() >= r;
  return out;
}

inline SpinSequence build_spin_sequence(const AngleSet& angles, int r) {
  return build_spin_sequence(SpinSequenceRule{angles}, r);
}

// ---------------------------------------------------------------------------
// Convergence study

struct AsymptoticReport {
  int r = 0;
  std::array<int, 6> twice{};
  double logmag_6j = 0.0;
  double two_pi_log_over_r = 0.0;
  double vol_target = 0.0;
  double det_g = 0.0;
  double zeta0 = 0.0;
  double gap = 0.0;
  // The predictor is evaluated at the angles the spins realise at this r.
  double vol_discrete = 0.0;
  double det_g_discrete = 0.0;
  double predictor_logmag = 0.0;
  double ratio = 0.0;
  int quarter_turns = 0;
  bool same_sign = false;
  bool hypothesis = false;
  bool sandwich_ok = false;
};

inline void check_sorted_odd(const std::vector<int>& r_list) {
  for (std::size_t i = 0; i < r_list.size(); ++i) {
    if (r_list[i] < 3 || r_list[i] % 2 == 0) throw std::invalid_argument("r values must be odd and >= 3");
    if (i > 0 && r_list[i] <= r_list[i - 1]) throw std::invalid_argument("r values must be ascending");
  }
}

inline AsymptoticReport asymptotic_point(const AngleSet& angles, const VolumeData& target, int r,
                                         Precision precision) {
  AsymptoticReport rep;
  rep.r = r;
  const auto seq = build_spin_sequence(angles, r);
  rep.twice = seq.spins.twice();
  rep.hypothesis = seq.hypothesis;
  const Level level(r, precision);
  const auto six = sixj_rw(level, seq.spins);
  if (six.magnitude.is_zero()) throw std::runtime_error("asymptotic_point: 6j vanishes");
  rep.logmag_6j = six.logmag();
  rep.quarter_turns = six.quarter_turns;
  rep.same_sign = six.same_sign;
  rep.two_pi_log_over_r = 2.0 * std::numbers::pi * rep.logmag_6j / r;
  rep.vol_target = target.volume;
  rep.det_g = target.det_g;
  rep.zeta0 = target.stationary.zeta0;
  rep.gap = std::abs(rep.two_pi_log_over_r - rep.vol_target);

  const auto vd = volume_data(AngleSet::from_spins(seq.spins, r));
  rep.vol_discrete = vd.volume;
  rep.det_g_discrete = vd.det_g;
  rep.predictor_logmag = predictor_log(vd.volume, vd.det_g, r);
  rep.ratio = std::exp(rep.logmag_6j - rep.predictor_logmag);

  // Max-term sandwich: |a(z0)| <= |sum| <= r |a(z0)| when all terms share a sign.
  rep.sandwich_ok = true;
  if (six.same_sign) {
    const double tol = 1e-9 * std::max(1.0, std::abs(six.max_term_logmag));
    rep.sandwich_ok = six.log_abs_sum >= six.max_term_logmag - tol &&
                      six.log_abs_sum <= six.max_term_logmag + std::log(static_cast<double>(r)) + tol;
    if (!rep.sandwich_ok) throw std::logic_error("asymptotic_point: max-term sandwich violated");
  }
  return rep;
}

inline std::vector<AsymptoticReport> convergence_table(const AngleSet& angles, const std::vector<int>& r_list,
                                                       const HarnessOptions& opt = {}) {
  if (r_list.empty()) return {};
  check_sorted_odd(r_list);
  const auto target = volume_data(angles);
  return parallel_map<AsymptoticReport>(r_list.size(), opt.threads, [&](std::size_t i) {
    return asymptotic_point(angles, target, r_list[i], opt.precision);
  });
}

// Exact fit of y(r) = a + b / r + c / r^2 through three points; returns (a, b, c).
template <class T>
std::array<T, 3> fit_inverse_quadratic(const std::array<int, 3>& r, const std::array<T, 3>& y) {
  using Mat = Eigen::Matrix<T, 3, 3>;
  using Vec = Eigen::Matrix<T, 3, 1>;
  Mat A;
  Vec b;
  for (int i = 0; i < 3; ++i) {
    const double x = 1.0 / r[i];
    A(i, 0) = T(1.0);
    A(i, 1) = T(x);
    A(i, 2) = T(x * x);
    b(i) = y[i];
  }
  const Vec s = A.colPivHouseholderQr().solve(b);
  return {s(0), s(1), s(2)};
}

// Richardson limit of the ratio from the last three rows (fit of log ratio).
inline double ratio_limit(const std::vector<AsymptoticReport>& rows) {
  if (rows.size() < 3) throw std::invalid_argument("ratio_limit: need three rows");
  const std::size_t n = rows.size();
  const std::array<int, 3> r{rows[n - 3].r, rows[n - 2].r, rows[n - 1].r};
  const std::array<double, 3> y{std::log(rows[n - 3].ratio), std::log(rows[n - 2].ratio),
                                std::log(rows[n - 1].ratio)};
  return std::exp(fit_inverse_quadratic(r, y)[0]);
}

// ---------------------------------------------------------------------------
// Second-order coefficient

// Ladder r0, 2 r0 - 1, 4 r0 - 3, ...  With r0 = 1 mod 24 every rung is 1 mod 24, which
// keeps the exact phase of the symbol on the regular family on one branch.
inline constexpr int kDefaultLadderStart = 1009;

inline std::vector<int> c1_ladder(int r0 = kDefaultLadderStart, int n = 4) {
  std::vector<int> out{r0};
  for (int i = 1; i < n; ++i) out.push_back(2 * out.back() - 1);
  return out;
}

struct ConstantFit {
  double k_sqrt2pi = 0.0;  // limit of |6j| / predictor with sqrt(2) pi
  double k_sqrt2 = 0.0;    // same with sqrt(2)
  std::string supported;
};

struct C1Row {
  int r = 0;
  std::array<int, 6> twice{};
  double logmag_6j = 0.0;
  double arg_6j = 0.0;
  // log(6j) - log(predictor) - i r Im(F + sum delta), phase unwrapped along the ladder.
  std::complex<double> residual;
};

struct C1Estimate {
  AngleSet angles;
  double det_g = 0.0;
  double vol = 0.0;
  double zeta0 = 0.0;
  std::vector<int> r_ladder;
  std::vector<C1Row> rows;
  ConstantFit constant_fit;
  std::complex<double> c1;
  double c1_err_re = 0.0;
  double c1_err_im = 0.0;
  double c1_err = 0.0;
  bool converged = false;
};

// Residual model: residual(r) = L + 2 pi i C1 / r + C2' / r^2, i.e. the convention
// 6j = predictor e^{i r Im B / 2 pi} K (1 + 2 pi i C1 / r + ...).  Im C1 comes from
// the magnitude, Re C1 from the phase.
inline C1Estimate extract_c1(const AngleSet& angles, const std::vector<int>& r_list, const HarnessOptions& opt = {},
                             double tolerance = 0.02) {
  if (r_list.size() < 3) throw std::invalid_argument("extract_c1: need at least three values of r");
  check_sorted_odd(r_list);
  C1Estimate out;
  out.angles = angles;
  const auto target = volume_data(angles);
  out.det_g = target.det_g;
  out.vol = target.volume;
  out.zeta0 = target.stationary.zeta0;
  out.r_ladder = r_list;

  out.rows = parallel_map<C1Row>(r_list.size(), opt.threads, [&](std::size_t i) {
    const int r = r_list[i];
    C1Row row;
    row.r = r;
    const auto seq = build_spin_sequence(angles, r);
    row.twice = seq.spins.twice();
    const auto six = sixj_rw(Level(r, opt.precision), seq.spins);
    row.logmag_6j = six.logmag();
    row.arg_6j = std::arg(six.phase());
    const auto vd = volume_data(AngleSet::from_spins(seq.spins, r));
    const double phase_b = r * vd.imag_part / (2.0 * std::numbers::pi);
    row.residual = {row.logmag_6j - predictor_log(vd.volume, vd.det_g, r),
                    std::remainder(row.arg_6j - phase_b, 2.0 * std::numbers::pi)};
    return row;
  });
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    const double prev = out.rows[i - 1].residual.imag();
    const double cur = out.rows[i].residual.imag();
    out.rows[i].residual.imag(prev + std::remainder(cur - prev, 2.0 * std::numbers::pi));
  }

  using cd = std::complex<double>;
  const std::size_t n = out.rows.size();
  auto triple = [&](std::size_t k) {
    const std::array<int, 3> r{out.rows[k].r, out.rows[k + 1].r, out.rows[k + 2].r};
    const std::array<cd, 3> y{out.rows[k].residual, out.rows[k + 1].residual, out.rows[k + 2].residual};
    return fit_inverse_quadratic(r, y);
  };
  const auto last = triple(n - 3);
  const cd two_pi_i(0.0, 2.0 * std::numbers::pi);
  out.c1 = last[1] / two_pi_i;
  cd alt;
  if (n >= 4) {
    alt = triple(n - 4)[1] / two_pi_i;
  } else {
    const auto& a = out.rows[n - 2];
    const auto& b = out.rows[n - 1];
    const cd slope = (a.residual - b.residual) / (1.0 / a.r - 1.0 / b.r);
    alt = slope / two_pi_i;
  }
  out.c1_err_re = std::abs(out.c1.real() - alt.real());
  out.c1_err_im = std::abs(out.c1.imag() - alt.imag());
  out.c1_err = std::abs(out.c1 - alt);
  out.converged = out.c1_err <= tolerance;

  const double k = std::exp(last[0].real());
  out.constant_fit.k_sqrt2pi = k;
  out.constant_fit.k_sqrt2 = k * std::numbers::pi;
  out.constant_fit.supported =
      std::abs(std::log(out.constant_fit.k_sqrt2pi)) <= std::abs(std::log(out.constant_fit.k_sqrt2)) ? "sqrt2pi"
                                                                                                      : "sqrt2";
  return out;
}

// ---------------------------------------------------------------------------
// Poisson spectrum

struct PoissonSpectrum {
  int r = 0;
  std::array<int, 6> twice{};
  std::vector<int> m;
  // fhat[i] = exp(log_scale) * values[i]; the lattice sum shares the scale.
  double log_scale = 0.0;
  std::vector<std::complex<double>> values;
  double lattice_sum = 0.0;
  double beta_max = 0.0;
  double z_argmax = 0.0;

  std::complex<double> at(int mm) const {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == mm) return values[i];
    }
    throw std::out_of_range("PoissonSpectrum: m not computed");
  }
  double ratio_to_zero(int mm) const { return std::abs(at(mm)) / std::abs(at(0)); }
  // Poisson side: sum_m fhat(m) over the computed range.
  double poisson_sum() const {
    std::complex<double> s(0.0);
    for (const auto& v : values) s += v;
    return s.real();
  }
};

inline PoissonSpectrum poisson_spectrum(const AngleSet& angles, int r, int m_max) {
  if (m_max < 0) throw std::invalid_argument("poisson_spectrum: m_max < 0");
  PoissonSpectrum out;
  out.r = r;
  const auto seq = build_spin_sequence(angles, r);
  out.twice = seq.spins.twice();
  const ContinuousSummandParams params(Level(r), seq.spins);
  const auto model = params.model();
  for (int k = -m_max; k <= m_max; ++k) out.m.push_back(k);
  const auto fi = fourier_integrals(model, out.m);
  out.log_scale = fi.front().log_scale;
  for (const auto& v : fi) out.values.push_back(v.mantissa);

  Accumulator acc;
  double best = -std::numeric_limits<double>::infinity();
  for (int z = seq.spins.m(); z <= seq.spins.M(); ++z) {
    const double lv = model.log_modulus(z);
    acc.add(std::exp(lv - out.log_scale));
    if (lv > best) {
      best = lv;
      out.z_argmax = z;
    }
  }
  out.lattice_sum = acc.value();
  out.beta_max = best / r;
  return out;
}

// ---------------------------------------------------------------------------
// Continuum integral against the stationary-phase closed form

struct GbarIntegral {
  int r = 0;
  double log_integral = 0.0;     // log |int gbar d zeta|
  double log_closed_form = 0.0;  // stationary-phase value
  double ratio = 0.0;
  double log_recont = 0.0;       // log(r sin(2 pi / r) prod |Delta~| |int gbar|)
  double log_predictor = 0.0;
};

inline SummandModel continuum_model(const AngleSet& angles, int r) {
  return SummandModel(std::make_shared<PhiEvaluator>(r), angles.sigmas(), angles.taus(), angles.eta_sum());
}

inline GbarIntegral integrate_gbar(const AngleSet& angles, int r) {
  const double pi = std::numbers::pi;
  const auto vd = volume_data(angles);
  const auto& st = vd.stationary;
  GbarIntegral out;
  out.r = r;
  const auto model = continuum_model(angles, r);
  const auto I = fourier_integrals(model, std::vector<int>{0});
  out.log_integral = std::log(2.0 / r) + I[0].log_abs();

  double lp = 0.0;
  for (double s : angles.sigmas()) lp += std::log(std::abs(1.0 - std::polar(1.0, 2.0 * pi * (st.zeta0 - s))));
  out.log_closed_form = std::log(16.0) - 3.0 * std::log(static_cast<double>(r)) - 0.5 * lp +
                        0.5 * std::log(2.0 * pi / (r * std::abs(st.Fpp))) + r * vd.F0.real();
  out.ratio = std::exp(out.log_integral - out.log_closed_form);

  double ld = 0.0;
  for (int j = 0; j < 4; ++j) {
    const auto& t = kTriangles[j];
    auto x = [&](int e) { return (r * angles.eta(e) - 1.0) / 2.0; };
    ld += delta_tilde_log(model.phi(), x(t[0]), x(t[1]), x(t[2])).real();
  }
  out.log_recont = std::log(r * std::sin(2.0 * pi / r)) + ld + out.log_integral;
  out.log_predictor = predictor_log(vd.volume, vd.det_g, r);
  return out;
}

// ---------------------------------------------------------------------------
// Output

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline const char* kConvergenceCsvHeader = "r,logmag_6j,two_pi_log_over_r,vol_target,gap,predictor_logmag,ratio";

inline void write_convergence_csv(std::ostream& os, const std::vector<AsymptoticReport>& rows) {
  os << kConvergenceCsvHeader << "\n";
  for (const auto& row : rows) {
    os << row.r << "," << format_double(row.logmag_6j) << "," << format_double(row.two_pi_log_over_r) << ","
       << format_double(row.vol_target) << "," << format_double(row.gap) << "," << format_double(row.predictor_logmag)
       << "," << format_double(row.ratio) << "\n";
  }
}

inline void write_poisson_csv(std::ostream& os, const PoissonSpectrum& p) {
  os << "m,log_abs_fhat,abs_ratio_to_fhat0\n";
  for (std::size_t i = 0; i < p.m.size(); ++i) {
    os << p.m[i] << "," << format_double(p.log_scale + std::log(std::abs(p.values[i]))) << ","
       << format_double(p.ratio_to_zero(p.m[i])) << "\n";
  }
}

// JSON with every number at 17 significant digits.
inline void write_c1_json(std::ostream& os, const C1Estimate& c) {
  auto num_array = [&](auto begin, auto end) {
    std::string s = "[";
    for (auto it = begin; it != end; ++it) {
      if (it != begin) s += ", ";
      if constexpr (std::is_integral_v<std::decay_t<decltype(*it)>>) {
        s += std::to_string(*it);
      } else {
        s += format_double(*it);
      }
    }
    return s + "]";
  };
  os << "{\n";
  os << "  \"angles\": " << num_array(c.angles.theta.begin(), c.angles.theta.end()) << ",\n";
  os << "  \"det_g\": " << format_double(c.det_g) << ",\n";
  os << "  \"vol\": " << format_double(c.vol) << ",\n";
  os << "  \"zeta0\": " << format_double(c.zeta0) << ",\n";
  os << "  \"constant_fit\": {\"sqrt2pi\": " << format_double(c.constant_fit.k_sqrt2pi)
     << ", \"sqrt2\": " << format_double(c.constant_fit.k_sqrt2) << ", \"supported\": \""
     << c.constant_fit.supported << "\"},\n";
  os << "  \"c1_re\": " << format_double(c.c1.real()) << ",\n";
  os << "  \"c1_im\": " << format_double(c.c1.imag()) << ",\n";
  os << "  \"c1_err\": " << format_double(c.c1_err) << ",\n";
  os << "  \"c1_err_re\": " << format_double(c.c1_err_re) << ",\n";
  os << "  \"c1_err_im\": " << format_double(c.c1_err_im) << ",\n";
  os << "  \"converged\": " << (c.converged ? "true" : "false") << ",\n";
  os << "  \"r_ladder\": " << num_array(c.r_ladder.begin(), c.r_ladder.end()) << "\n";
  os << "}\n";
}

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

// Static line plot; log_x / log_y switch the axes to log10 scale.
inline std::string svg_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                            const std::vector<PlotSeries>& series, bool log_x = false, bool log_y = false) {
  const double W = 640, H = 420, L = 80, R = 150, T = 40, B = 60;
  auto tx = [&](double v) { return log_x ? std::log10(v) : v; };
  auto ty = [&](double v) { return log_y ? std::log10(v) : v; };
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      x0 = std::min(x0, tx(s.x[i]));
      x1 = std::max(x1, tx(s.x[i]));
      y0 = std::min(y0, ty(s.y[i]));
      y1 = std::max(y1, ty(s.y[i]));
    }
  }
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > y0)) y1 = y0 + 1.0;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto px = [&](double v) { return L + (tx(v) - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double v) { return H - B - (ty(v) - y0) / (y1 - y0) * (H - T - B); };
  static constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c",
                                                         "#9467bd", "#ff7f0e", "#8c564b"};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  char buf[64];
  for (int k = 0; k <= 4; ++k) {
    const double xv = x0 + (x1 - x0) * k / 4.0;
    const double xp = L + (W - L - R) * k / 4.0;
    std::snprintf(buf, sizeof buf, "%.4g", log_x ? std::pow(10.0, xv) : xv);
    os << "<line x1=\"" << xp << "\" y1=\"" << H - B << "\" x2=\"" << xp << "\" y2=\"" << H - B + 5
       << "\" stroke=\"black\"/><text x=\"" << xp << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">" << buf
       << "</text>\n";
    const double yv = y0 + (y1 - y0) * k / 4.0;
    const double yp = H - B - (H - T - B) * k / 4.0;
    std::snprintf(buf, sizeof buf, "%.4g", log_y ? std::pow(10.0, yv) : yv);
    os << "<line x1=\"" << L - 5 << "\" y1=\"" << yp << "\" x2=\"" << L << "\" y2=\"" << yp
       << "\" stroke=\"black\"/><text x=\"" << L - 8 << "\" y=\"" << yp + 4 << "\" text-anchor=\"end\">" << buf
       << "</text>\n";
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">" << x_label
     << "</text>\n";
  os << "<text x=\"18\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
     << (T + H - B) / 2 << ")\">" << y_label << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % kColors.size()];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) os << px(s.x[i]) << "," << py(s.y[i]) << " ";
    os << "\"/>\n";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      os << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i]) << "\" r=\"2.5\" fill=\"" << color
         << "\"/>\n";
    }
    const double ly = T + 10 + 18 * k;
    os << "<line x1=\"" << W - R + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 30 << "\" y2=\"" << ly
       << "\" stroke=\"" << color << "\" stroke-width=\"2\"/><text x=\"" << W - R + 35 << "\" y=\"" << ly + 4
       << "\">" << s.name << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace qsixj
