#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsixj/clausen.hpp"
#include "qsixj/sixj.hpp"
#include "qsixj/tetra.hpp"

namespace qsixj {

using cplx = std::complex<double>;

class NotHyperbolic : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dihedral angles in storage order a, b, c, d, e, f.
struct AngleSet {
  std::array<double, 6> theta{};

  static AngleSet regular(double t) { return {{t, t, t, t, t, t}}; }

  static AngleSet from_eta(const std::array<double, 6>& eta) {
    AngleSet out;
    for (int i = 0; i < 6; ++i) out.theta[i] = std::numbers::pi - 2.0 * std::numbers::pi * eta[i];
    return out;
  }

  // Angles realised by a spin sextuple at level r: eta_x = (2x + 1) / r.
  static AngleSet from_spins(const SpinSextuple& s, int r) {
    std::array<double, 6> eta{};
    const auto t = s.twice();
    for (int i = 0; i < 6; ++i) eta[i] = (t[i] + 1.0) / r;
    return from_eta(eta);
  }

  double eta(int i) const { return (std::numbers::pi - theta[i]) / (2.0 * std::numbers::pi); }

  std::array<double, 6> etas() const {
    std::array<double, 6> out{};
    for (int i = 0; i < 6; ++i) out[i] = eta(i);
    return out;
  }

  double eta_sum() const {
    double s = 0.0;
    for (int i = 0; i < 6; ++i) s += eta(i);
    return s;
  }

  double sigma(int j) const {
    const auto& tri = kTriangles.at(j);
    return eta(tri[0]) + eta(tri[1]) + eta(tri[2]);
  }

  double tau(int k) const {
    const auto [p, q] = kOppositePairs.at(k);
    return eta_sum() - eta(p) - eta(q);
  }

  std::array<double, 4> sigmas() const { return {sigma(0), sigma(1), sigma(2), sigma(3)}; }
  std::array<double, 3> taus() const { return {tau(0), tau(1), tau(2)}; }

  double window_lo() const { return std::max({sigma(0), sigma(1), sigma(2), sigma(3)}); }
  double window_hi() const { return std::min({tau(0), tau(1), tau(2)}); }
};

using GramMatrix = Eigen::Matrix4d;

inline GramMatrix gram_matrix(const AngleSet& angles) {
  GramMatrix g = GramMatrix::Identity();
  for (int i = 0; i < 6; ++i) {
    auto [u, v] = kEdgeNodes[i];
    g(u, v) = g(v, u) = -std::cos(angles.theta[i]);
  }
  return g;
}

inline double gram_det(const AngleSet& angles) { return gram_matrix(angles).determinant(); }

enum class VertexType { Normal, Ideal, UltraIdeal };

inline const char* to_string(VertexType v) {
  switch (v) {
    case VertexType::Normal:
      return "normal";
    case VertexType::Ideal:
      return "ideal";
    case VertexType::UltraIdeal:
      return "ultra-ideal";
  }
  return "?";
}

// Vertex j is the corner shared by the edges of kTriangles[j].
inline VertexType classify_vertex(const AngleSet& angles, int vertex, double tol = 1e-9) {
  const auto& tri = kTriangles.at(vertex);
  const double s = angles.theta[tri[0]] + angles.theta[tri[1]] + angles.theta[tri[2]];
  if (std::abs(s - std::numbers::pi) <= tol) return VertexType::Ideal;
  return s > std::numbers::pi ? VertexType::Normal : VertexType::UltraIdeal;
}

struct PotentialValue {
  cplx F;
  cplx dF;
  cplx d2F;
};

// F(zeta) with its first two derivatives.
inline PotentialValue potential_F(const AngleSet& angles, double zeta) {
  const double pi = std::numbers::pi;
  const double pi2 = pi * pi;
  const cplx I(0.0, 1.0);
  const auto sig = angles.sigmas();
  const auto tau = angles.taus();
  auto on_branch = [](double t) { return std::abs(t - std::nearbyint(t)) < 1e-14; };
  if (on_branch(zeta)) throw std::domain_error("potential_F: zeta at a branch point");
  for (double s : sig) {
    if (on_branch(zeta - s)) throw std::domain_error("potential_F: zeta at a branch point");
  }
  for (double t : tau) {
    if (on_branch(t - zeta)) throw std::domain_error("potential_F: zeta at a branch point");
  }
  const double es = angles.eta_sum();

  cplx x = -2.0 * pi2 * zeta - li2_circle(zeta) - 6.0 * pi2 * zeta * zeta + 8.0 * pi2 * es * zeta;
  cplx dx = -2.0 * pi2 + 2.0 * pi * I * log_one_minus_circle(zeta) - 12.0 * pi2 * zeta + 8.0 * pi2 * es;
  for (double s : sig) {
    x += li2_circle(zeta - s);
    dx -= 2.0 * pi * I * log_one_minus_circle(zeta - s);
  }
  for (double t : tau) {
    x += li2_circle(t - zeta);
    dx += 2.0 * pi * I * log_one_minus_circle(t - zeta);
  }
  const cplx u = std::polar(1.0, 2.0 * pi * zeta);
  cplx h = -u / (1.0 - u);
  for (double s : sig) h += u / (std::polar(1.0, 2.0 * pi * s) - u);
  for (double t : tau) h -= u / (std::polar(1.0, 2.0 * pi * t) - u);
  const cplx inv = 1.0 / (4.0 * pi * I);
  return {inv * x, inv * dx, pi * I * h};
}

struct StationaryData {
  double zeta0 = 0.0;
  cplx u0;
  cplx a2, a1, a0;
  cplx Fpp;
  std::array<cplx, 2> roots;
  int candidates = 0;
};

namespace detail {

using Poly = std::vector<cplx>;

inline Poly poly_mul_linear(const Poly& p, cplx root) {
  // p(u) * (root - u)
  Poly out(p.size() + 1, cplx(0.0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i] += root * p[i];
    out[i + 1] -= p[i];
  }
  return out;
}

}  // namespace detail

// Coefficients (a2, a1, a0) of [prod_j (A_j - u) - (1 - u) prod_k (B_k - u)] / u.
inline std::array<cplx, 3> stationary_quadratic(const AngleSet& angles) {
  const double pi = std::numbers::pi;
  detail::Poly p1{cplx(1.0)}, p2{cplx(1.0)};
  for (double s : angles.sigmas()) p1 = detail::poly_mul_linear(p1, std::polar(1.0, 2.0 * pi * s));
  p2 = detail::poly_mul_linear(p2, cplx(1.0));
  for (double t : angles.taus()) p2 = detail::poly_mul_linear(p2, std::polar(1.0, 2.0 * pi * t));
  detail::Poly p(5);
  for (int i = 0; i < 5; ++i) p[i] = p1[i] - p2[i];
  double scale = 0.0;
  for (const auto& c : p) scale = std::max(scale, std::abs(c));
  if (std::abs(p[0]) > 1e-10 * std::max(1.0, scale)) {
    throw std::logic_error("stationary_quadratic: p(0) != 0");
  }
  return {p[3], p[2], p[1]};
}

// |det G| below this is treated as the Euclidean double-root limit.
inline constexpr double kEuclideanTol = 1e-12;

inline StationaryData stationary_point(const AngleSet& angles) {
  const double det = gram_det(angles);
  if (det > kEuclideanTol) throw NotHyperbolic("stationary_point: det G > 0 (" + std::to_string(det) + ")");
  StationaryData out;
  const auto q = stationary_quadratic(angles);
  out.a2 = q[0];
  out.a1 = q[1];
  out.a0 = q[2];
  const cplx disc = out.a1 * out.a1 - 4.0 * out.a0 * out.a2;
  if (std::abs(det) <= kEuclideanTol) {
    const cplx u = -out.a1 / (2.0 * out.a2);
    out.roots = {u, u};
  } else {
    cplx sq = std::sqrt(disc);
    if (std::real(std::conj(out.a1) * sq) < 0.0) sq = -sq;
    const cplx qq = -0.5 * (out.a1 + sq);
    out.roots = {qq / out.a2, out.a0 / qq};
  }

  const double lo = angles.window_lo();
  const double hi = angles.window_hi();
  double best_re = -std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> found;  // (zeta, Re F)
  for (const cplx& u : out.roots) {
    if (std::abs(std::abs(u) - 1.0) > 1e-8) continue;
    const double base = std::arg(u) / (2.0 * std::numbers::pi);
    const double zeta = base + std::ceil(lo - base);
    if (!(zeta > lo && zeta < hi)) continue;
    const double reF = potential_F(angles, zeta).F.real();
    found.emplace_back(zeta, reF);
    if (reF > best_re) {
      best_re = reF;
      out.zeta0 = zeta;
      out.u0 = u;
    }
  }
  out.candidates = static_cast<int>(found.size());
  if (found.empty()) throw NotHyperbolic("stationary_point: no unit-modulus root in the window");
  if (found.size() == 2 && std::abs(found[0].first - found[1].first) > 1e-3 &&
      std::abs(found[0].second - found[1].second) < 1e-12) {
    throw NotHyperbolic("stationary_point: two critical points with equal Re F");
  }
  out.Fpp = potential_F(angles, out.zeta0).d2F;
  return out;
}

// delta(eta1, eta2, eta3) on 0 <= eta_i <= 1, 1 <= sum <= 2.
namespace detail {

inline cplx delta_eta_unchecked(double e1, double e2, double e3) {
  const double s = e1 + e2 + e3;
  const cplx x = li2_circle(s) - li2_circle(e1 + e2 - e3) - li2_circle(e2 + e3 - e1) - li2_circle(e3 + e1 - e2);
  return x / cplx(0.0, 8.0 * std::numbers::pi);
}

}  // namespace detail

inline cplx delta_eta(double e1, double e2, double e3) {
  const double s = e1 + e2 + e3;
  const double eps = 1e-12;
  for (double e : {e1, e2, e3}) {
    if (e < -eps || e > 1.0 + eps) throw std::domain_error("delta_eta: eta outside [0, 1]");
  }
  if (s < 1.0 - eps || s > 2.0 + eps) throw std::domain_error("delta_eta: sum outside [1, 2]");
  return detail::delta_eta_unchecked(e1, e2, e3);
}

struct VolumeData {
  double volume = 0.0;
  double imag_part = 0.0;  // 2 pi Im(F(zeta0) + sum delta)
  cplx F0;
  cplx delta_sum;
  double det_g = 0.0;
  StationaryData stationary;
};

// Normal vertices put the triangle sum below 1; the real part stays valid there.
inline cplx delta_sum(const AngleSet& angles) {
  cplx s(0.0);
  for (int j = 0; j < 4; ++j) {
    const auto& tri = kTriangles[j];
    s += detail::delta_eta_unchecked(angles.eta(tri[0]), angles.eta(tri[1]), angles.eta(tri[2]));
  }
  return s;
}

inline VolumeData volume_data(const AngleSet& angles) {
  VolumeData out;
  out.det_g = gram_det(angles);
  out.stationary = stationary_point(angles);
  out.F0 = potential_F(angles, out.stationary.zeta0).F;
  out.delta_sum = delta_sum(angles);
  const cplx total = 2.0 * std::numbers::pi * (out.F0 + out.delta_sum);
  out.volume = std::abs(total.real());
  out.imag_part = total.imag();
  return out;
}

inline double volume(const AngleSet& angles) { return volume_data(angles).volume; }

// log of sqrt(2) pi r^{-3/2} (-det G)^{-1/4} e^{r Vol / 2 pi}.
inline double predictor_log(double vol, double det_g, int r) {
  if (!(det_g < 0.0)) throw NotHyperbolic("predictor: det G >= 0");
  return std::log(std::sqrt(2.0) * std::numbers::pi) - 1.5 * std::log(static_cast<double>(r)) -
         0.25 * std::log(-det_g) + r * vol / (2.0 * std::numbers::pi);
}

inline LogSigned predictor(const AngleSet& angles, int r) {
  const auto v = volume_data(angles);
  return {1, predictor_log(v.volume, v.det_g, r)};
}

}  // namespace qsixj
