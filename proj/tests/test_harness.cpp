#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qsixj/harness.hpp"

using namespace qsixj;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSeed = 20240611;

std::vector<AngleSet> random_hyperbolic(int n) {
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> U(0.1, kPi - 0.1);
  std::vector<AngleSet> out;
  while (static_cast<int>(out.size()) < n) {
    AngleSet a;
    for (auto& t : a.theta) t = U(rng);
    bool ok = gram_det(a) < -1e-3;
    for (int v = 0; v < 4 && ok; ++v) ok = classify_vertex(a, v) == VertexType::UltraIdeal;
    if (ok) out.push_back(a);
  }
  return out;
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(SpinSequence, RegularIdealGolden) {
  const auto s = build_spin_sequence(AngleSet::regular(kPi / 3), 101);
  EXPECT_EQ(s.spins.twice(), (std::array<int, 6>{34, 34, 33, 33, 34, 33}));
  EXPECT_EQ(s.designated_vertex, 0);
  EXPECT_EQ(s.adjustments, 3);
  EXPECT_TRUE(s.hypothesis);
}

TEST(SpinSequence, SmallLevelSmoke) {
  // All 2's would realise eta sums of exactly 1, i.e. ideal vertices.
  const auto s = build_spin_sequence(AngleSet::regular(kPi / 4), 9);
  EXPECT_EQ(s.spins.twice(), (std::array<int, 6>{3, 3, 3, 3, 2, 2}));
  EXPECT_TRUE(is_admissible(Level(9), s.spins));
  EXPECT_EQ(s.designated_vertex, -1);
}

TEST(SpinSequence, ParityRepair) {
  // Rounds to 37 everywhere at r = 101; the nearest even-sum choice lowers the opposite pair e, f.
  const auto s = build_spin_sequence(AngleSet::regular(kPi / 4), 101);
  EXPECT_EQ(s.spins.twice(), (std::array<int, 6>{37, 37, 37, 37, 36, 36}));
  EXPECT_EQ(s.adjustments, 2);
  const auto p = build_spin_sequence(SpinSequenceRule{AngleSet::regular(kPi / 4), ParityPolicy::PriorityFECB}, 101);
  EXPECT_EQ(p.spins.twice(), s.spins.twice());
}

TEST(SpinSequence, PriorityPolicyGolden) {
  const SpinSequenceRule rule{AngleSet::regular(kPi / 3), ParityPolicy::PriorityFECB};
  EXPECT_EQ(build_spin_sequence(rule, 101).spins.twice(), (std::array<int, 6>{34, 34, 33, 33, 34, 33}));
  // 3 * 66 + 3 lands on r itself; one more lift of a, then f and c are lowered.
  EXPECT_EQ(build_spin_sequence(rule, 201).spins.twice(), (std::array<int, 6>{68, 67, 65, 66, 67, 65}));
}

TEST(SpinSequence, IdealVerticesStayUltraIdealSide) {
  // At r = 201 the targets are exact integers and no symmetric choice has even sums.
  const auto s = build_spin_sequence(AngleSet::regular(kPi / 3), 201);
  EXPECT_EQ(s.spins.twice(), (std::array<int, 6>{68, 67, 66, 67, 67, 66}));
  EXPECT_EQ(2 * s.spins.S(0), 202);
  for (int j = 1; j < 4; ++j) EXPECT_EQ(2 * s.spins.S(j), 200);
}

TEST(SpinSequence, RejectsEvenLevel) {
  EXPECT_THROW(build_spin_sequence(AngleSet::regular(kPi / 4), 100), std::invalid_argument);
}

TEST(SpinSequence, PropertiesOnRandomSets) {
  for (const auto& a : random_hyperbolic(60)) {
    for (int r : {101, 301, 1001}) {
      SpinSequence s;
      try {
        s = build_spin_sequence(a, r);
      } catch (const SpinSequenceError&) {
        continue;
      }
      const Level level(r);
      EXPECT_TRUE(is_admissible(level, s.spins));
      for (int j = 0; j < 4; ++j) {
        const auto& t = kTriangles[j];
        const auto tw = s.spins.twice();
        EXPECT_EQ((tw[t[0]] + tw[t[1]] + tw[t[2]]) % 2, 0);
      }
      const auto tw = s.spins.twice();
      for (int i = 0; i < 6; ++i) EXPECT_LE(std::abs(tw[i] + 1 - r * a.eta(i)), 2.5);
      for (int j = 0; j < 4; ++j) EXPECT_GE(2 * s.spins.S(j), r - 1);
    }
  }
}

TEST(SpinSequence, IdealVertexOnRandomSets) {
  std::mt19937_64 rng(kSeed + 1);
  std::uniform_real_distribution<double> U(0.1, kPi - 0.1);
  int tested = 0;
  while (tested < 40) {
    AngleSet a;
    for (auto& t : a.theta) t = U(rng);
    a.theta[4] = kPi - a.theta[0] - a.theta[1];
    if (a.theta[4] < 0.1 || gram_det(a) > -1e-3) continue;
    bool ok = classify_vertex(a, 0) == VertexType::Ideal;
    for (int v = 1; v < 4 && ok; ++v) ok = classify_vertex(a, v) == VertexType::UltraIdeal;
    if (!ok) continue;
    ++tested;
    for (int r = 51; r <= 1051; r += 100) {
      const auto s = build_spin_sequence(a, r);
      EXPECT_EQ(s.designated_vertex, 0);
      EXPECT_GE(2 * s.spins.S(0), r);
      EXPECT_TRUE(is_admissible(Level(r), s.spins));
    }
  }
}

TEST(SpinSequence, IdealVertexMeetsHypothesis) {
  // Ideal vertex at 0 with unequal angles.
  AngleSet a{{1.0, 0.9, 0.6, 0.8, kPi - 1.9, 0.7}};
  ASSERT_EQ(classify_vertex(a, 0), VertexType::Ideal);
  for (int r : {51, 101, 303, 1001}) {
    const auto s = build_spin_sequence(a, r);
    EXPECT_EQ(s.designated_vertex, 0);
    EXPECT_GE(2 * s.spins.S(0), r);
    EXPECT_TRUE(s.hypothesis);
  }
}

TEST(ParallelMap, OrderAndErrors) {
  const auto v = parallel_map<int>(100, 4, [](std::size_t i) { return static_cast<int>(i * i); });
  for (int i = 0; i < 100; ++i) EXPECT_EQ(v[i], i * i);
  EXPECT_THROW(parallel_map<int>(10, 3,
                                 [](std::size_t i) {
                                   if (i == 7) throw std::runtime_error("x");
                                   return 0;
                                 }),
               std::runtime_error);
}

TEST(Convergence, EmptyAndInvalidLists) {
  EXPECT_TRUE(convergence_table(AngleSet::regular(kPi / 4), {}).empty());
  EXPECT_THROW(convergence_table(AngleSet::regular(kPi / 4), {101, 100}), std::invalid_argument);
  EXPECT_THROW(convergence_table(AngleSet::regular(kPi / 4), {201, 101}), std::invalid_argument);
  EXPECT_THROW(convergence_table(AngleSet::regular(1.4), {101}), NotHyperbolic);
}

TEST(Convergence, DeterministicAcrossThreads) {
  const std::vector<int> rs{101, 201, 401, 801};
  const auto a = convergence_table(AngleSet::regular(kPi / 4), rs, {Precision::Double, 1});
  const auto b = convergence_table(AngleSet::regular(kPi / 4), rs, {Precision::Double, 4});
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].twice, b[i].twice);
    EXPECT_EQ(a[i].logmag_6j, b[i].logmag_6j);
    EXPECT_EQ(a[i].ratio, b[i].ratio);
  }
}

TEST(Convergence, GapShrinksLikeLogROverR) {
  const std::vector<int> rs{101, 201, 401, 801, 1601};
  for (double theta : {kPi / 3, kPi / 4}) {
    const auto rows = convergence_table(AngleSet::regular(theta), rs, {Precision::Double, 4});
    double lo = INFINITY, hi = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      EXPECT_TRUE(rows[i].hypothesis);
      EXPECT_TRUE(rows[i].sandwich_ok);
      if (i > 0) {
        EXPECT_LT(rows[i].gap, rows[i - 1].gap) << "theta=" << theta << " r=" << rows[i].r;
      }
      const double s = rows[i].gap * rows[i].r / std::log(rows[i].r);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    EXPECT_LE(hi / lo, 1.2 / 0.8) << "theta=" << theta;
  }
}

TEST(Convergence, RatioTendsToOne) {
  const auto rows = convergence_table(AngleSet::regular(kPi / 4), {1001, 2001, 4001}, {Precision::Double, 3});
  EXPECT_NEAR(rows[0].ratio, 1.0, 0.1);
  // Ratio - 1 is O(1/r).
  EXPECT_NEAR((rows[0].ratio - 1.0) / (rows[2].ratio - 1.0), 4.0, 0.1);
  EXPECT_NEAR(ratio_limit(rows), 1.0, 1e-3);
}

TEST(Richardson, RecoversQuadraticInInverseR) {
  const std::array<int, 3> r{101, 201, 401};
  std::array<std::complex<double>, 3> y;
  const std::complex<double> a(0.3, -1.0), b(2.0, 5.0), c(-7.0, 1.5);
  for (int i = 0; i < 3; ++i) y[i] = a + b / double(r[i]) + c / double(r[i] * r[i]);
  const auto s = fit_inverse_quadratic(r, y);
  EXPECT_LT(std::abs(s[0] - a), 1e-12);
  EXPECT_LT(std::abs(s[1] - b), 1e-9);
  EXPECT_LT(std::abs(s[2] - c), 1e-6);
}

TEST(C1, LadderStaysOnOneResidueClass) {
  const auto l = c1_ladder();
  ASSERT_EQ(l.size(), 4u);
  for (int r : l) EXPECT_EQ(r % 24, 1);
  EXPECT_EQ(l[1], 2 * l[0] - 1);
}

TEST(C1, RegularIdealFamilyValues) {
  const HarnessOptions opt{Precision::DoubleDouble, 4};
  const auto c0 = extract_c1(AngleSet::regular(0.0), c1_ladder(), opt);
  EXPECT_NEAR(c0.c1.imag(), -0.2708, 0.02);
  EXPECT_LT(c0.c1_err, 1e-4);
  EXPECT_TRUE(c0.converged);
  EXPECT_EQ(c0.constant_fit.supported, "sqrt2pi");
  EXPECT_NEAR(c0.constant_fit.k_sqrt2pi, 1.0, 1e-4);
  // Referenced to r Im B at the realised angles, the phase left over is the constant 7 pi / 12.
  for (const auto& row : c0.rows) EXPECT_NEAR(row.residual.imag(), 7.0 * kPi / 12.0, 1e-8);
  EXPECT_NEAR(c0.c1.real(), 0.0, 1e-4);

  const auto p = extract_c1(AngleSet::regular(0.08 * kPi), c1_ladder(), opt);
  const auto m = extract_c1(AngleSet::regular(-0.08 * kPi), c1_ladder(), opt);
  EXPECT_NEAR(p.c1.imag(), -0.2782, 0.02);
  EXPECT_NEAR(p.c1.imag(), m.c1.imag(), p.c1_err_im + m.c1_err_im + 1e-6);
}

TEST(Poisson, SpectrumStructure) {
  const auto p = poisson_spectrum(AngleSet::regular(kPi / 4), 201, 3);
  ASSERT_EQ(p.m.size(), 7u);
  for (int m = 1; m <= 3; ++m) {
    EXPECT_LT(std::abs(p.at(-m) - std::conj(p.at(m))), 1e-10 * std::abs(p.at(0)));
    EXPECT_LT(p.ratio_to_zero(m), 1e-2);
  }
  EXPECT_NEAR(p.poisson_sum() / p.lattice_sum, 1.0, 1e-10);
  EXPECT_NEAR(p.at(0).real() / p.lattice_sum, 1.0, 1e-10);
  EXPECT_THROW(poisson_spectrum(AngleSet::regular(kPi / 4), 201, -1), std::invalid_argument);
}

TEST(Poisson, MaximumInsideWindow) {
  const auto p = poisson_spectrum(AngleSet::regular(kPi / 4), 401, 0);
  const auto s = build_spin_sequence(AngleSet::regular(kPi / 4), 401);
  EXPECT_GT(p.z_argmax, s.spins.m());
  EXPECT_LT(p.z_argmax, s.spins.M());
  const double zeta = (2.0 * p.z_argmax + 3.0) / 401;
  EXPECT_NEAR(zeta, volume_data(AngleSet::regular(kPi / 4)).stationary.zeta0, 0.02);
}

TEST(Gbar, ClosedFormRatio) {
  double prev = INFINITY;
  for (int r : {201, 401, 801}) {
    const auto g = integrate_gbar(AngleSet::regular(kPi / 4), r);
    EXPECT_NEAR(g.ratio, 1.0, 0.05) << "r=" << r;
    EXPECT_LT(std::abs(g.ratio - 1.0), prev);
    prev = std::abs(g.ratio - 1.0);
    EXPECT_NEAR(g.log_recont, g.log_predictor, 5.0 / r);
  }
}

TEST(Output, CsvFormat) {
  const auto rows = convergence_table(AngleSet::regular(kPi / 4), {101, 201});
  std::ostringstream os;
  write_convergence_csv(os, rows);
  const auto lines = split_lines(os.str());
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "r,logmag_6j,two_pi_log_over_r,vol_target,gap,predictor_logmag,ratio");
  std::istringstream row(lines[1]);
  std::string field;
  std::vector<std::string> f;
  while (std::getline(row, field, ',')) f.push_back(field);
  ASSERT_EQ(f.size(), 7u);
  EXPECT_EQ(std::stoi(f[0]), 101);
  EXPECT_EQ(std::stod(f[1]), rows[0].logmag_6j);
  EXPECT_EQ(std::stod(f[6]), rows[0].ratio);
}

TEST(Output, JsonRoundTrip) {
  const auto c = extract_c1(AngleSet::regular(0.0), c1_ladder(), {Precision::Double, 4});
  std::ostringstream os;
  write_c1_json(os, c);
  const auto j = nlohmann::json::parse(os.str());
  for (const char* key : {"angles", "det_g", "vol", "zeta0", "constant_fit", "c1_re", "c1_im", "c1_err", "r_ladder"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["c1_re"].get<double>(), c.c1.real());
  EXPECT_EQ(j["c1_im"].get<double>(), c.c1.imag());
  EXPECT_EQ(j["vol"].get<double>(), c.vol);
  EXPECT_EQ(j["r_ladder"].get<std::vector<int>>(), c.r_ladder);
  EXPECT_EQ(j["angles"].size(), 6u);
  EXPECT_EQ(j["constant_fit"]["supported"], "sqrt2pi");
}

TEST(Output, PoissonCsv) {
  const auto p = poisson_spectrum(AngleSet::regular(kPi / 4), 101, 2);
  std::ostringstream os;
  write_poisson_csv(os, p);
  const auto lines = split_lines(os.str());
  ASSERT_EQ(lines.size(), 6u);
  EXPECT_EQ(lines[0], "m,log_abs_fhat,abs_ratio_to_fhat0");
  EXPECT_EQ(lines[3].substr(0, 2), "0,");
}

TEST(Output, SvgPlot) {
  const std::string svg = svg_plot("gap", "r", "gap", {{"a", {1, 2, 3}, {3, 2, 1}}, {"b", {1, 2, 3}, {1, 2, 3}}}, true);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  std::size_t count = 0;
  for (std::size_t pos = 0; (pos = svg.find("<polyline", pos)) != std::string::npos; ++pos) ++count;
  EXPECT_EQ(count, 2u);
}
