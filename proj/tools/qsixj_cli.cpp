#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qsixj/geometry.hpp"
#include "qsixj/harness.hpp"
#include "qsixj/sixj.hpp"

using namespace qsixj;

namespace {

struct Global {
  std::string precision = "double";
  int threads = 1;
  std::uint64_t seed = 20240611;

  HarnessOptions options() const {
    return {precision == "dd" ? Precision::DoubleDouble : Precision::Double, std::max(1, threads)};
  }
};

// One value gives the regular tetrahedron, six give (a, b, c, d, e, f).
AngleSet parse_angles(const std::vector<double>& theta) {
  if (theta.size() == 1) return AngleSet::regular(theta[0]);
  if (theta.size() != 6) throw CLI::ValidationError("--theta", "expects 1 or 6 values");
  AngleSet a;
  for (int i = 0; i < 6; ++i) a.theta[i] = theta[i];
  return a;
}

// Spins are half-integers; accepts "3", "1.5" or "3/2".
int twice_spin(const std::string& s) {
  double v;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    v = std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
  } else {
    v = std::stod(s);
  }
  const double t = 2.0 * v;
  if (t < 0 || std::abs(t - std::round(t)) > 1e-9) throw CLI::ValidationError("--spins", "'" + s + "' is not a half-integer");
  return static_cast<int>(std::round(t));
}

void print_tetra(const AngleSet& a) {
  std::printf("theta = %s", format_double(a.theta[0]).c_str());
  for (int i = 1; i < 6; ++i) std::printf(",%s", format_double(a.theta[i]).c_str());
  std::printf("\ndet_g = %s\n", format_double(gram_det(a)).c_str());
  std::printf("vertices =");
  for (int v = 0; v < 4; ++v) std::printf(" %s", to_string(classify_vertex(a, v)));
  std::printf("\n");
  try {
    const auto vd = volume_data(a);
    std::printf("zeta0 = %s\n", format_double(vd.stationary.zeta0).c_str());
    std::printf("volume = %s\n", format_double(vd.volume).c_str());
    std::printf("imag_part = %s\n", format_double(vd.imag_part).c_str());
    std::printf("F_pp = %s%+.17gi\n", format_double(vd.stationary.Fpp.real()).c_str(), vd.stationary.Fpp.imag());
    std::printf("stationary_candidates = %d\n", vd.stationary.candidates);
  } catch (const NotHyperbolic& e) {
    std::printf("hyperbolic = no (%s)\n", e.what());
  }
}

std::vector<int> r_range(int r_min, int r_max, int step) {
  std::vector<int> out;
  for (int r = r_min; r <= r_max; r = step > 0 ? r + step : 2 * r + 1) out.push_back(r);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum 6j symbols at roots of unity and their asymptotics"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--precision", g.precision, "Arithmetic for the symbol")
      ->check(CLI::IsMember({"double", "dd"}))
      ->envname("QSIXJ_PRECISION");
  app.add_option("--threads", g.threads, "Worker threads")->envname("QSIXJ_THREADS");
  app.add_option("--seed", g.seed, "Seed for random sampling")->envname("QSIXJ_SEED");

  // sixj eval
  auto* sixj = app.add_subcommand("sixj", "Evaluate a 6j symbol")->require_subcommand(1);
  auto* eval = sixj->add_subcommand("eval", "Value at q = xi^2, xi = exp(2 pi i / r)");
  int r_eval = 0;
  std::vector<std::string> spins;
  eval->add_option("--r", r_eval, "Odd level r >= 3")->required();
  eval->add_option("--spins", spins, "Spins a,b,e,d,c,f (symbol rows {a b e; d c f})")
      ->required()
      ->expected(6)
      ->delimiter(',');
  eval->callback([&] {
    std::array<int, 6> in{};
    for (int i = 0; i < 6; ++i) in[i] = twice_spin(spins[i]);
    const auto s = SpinSextuple::from_twice({in[0], in[1], in[4], in[3], in[2], in[5]});
    const Level level(r_eval, g.options().precision);
    if (!is_admissible(level, s)) {
      std::fprintf(stderr, "spins are not admissible at r = %d\n", r_eval);
      throw CLI::RuntimeError(2);
    }
    const auto res = sixj_rw(level, s);
    if (res.value_fits) {
      std::printf("value = %s%+.17gi\n", format_double(res.value.real()).c_str(), res.value.imag());
    }
    std::printf("logmag = %s\n", res.magnitude.is_zero() ? "-inf" : format_double(res.logmag()).c_str());
    std::printf("sign = %d\n", res.magnitude.is_zero() ? 0 : 1);
    std::printf("phase = i^%d\n", ((res.quarter_turns % 4) + 4) % 4);
    std::printf("terms = %d (nonzero %d), same_sign = %s\n", res.terms_total, res.terms_nonzero,
                res.same_sign ? "yes" : "no");
  });

  // tetra analyze
  auto* tetra = app.add_subcommand("tetra", "Tetrahedron geometry")->require_subcommand(1);
  auto* analyze = tetra->add_subcommand("analyze", "Gram determinant, vertex types, stationary point, volume");
  std::vector<double> theta_t;
  int n_random = 0;
  analyze->add_option("--theta", theta_t, "Dihedral angles, 1 (regular) or 6 values")->delimiter(',');
  analyze->add_option("--random", n_random, "Analyse N angle sets drawn uniformly from (0, pi)^6");
  analyze->callback([&] {
    if (n_random > 0) {
      std::mt19937_64 rng(g.seed);
      std::uniform_real_distribution<double> U(0.0, std::numbers::pi);
      for (int i = 0; i < n_random; ++i) {
        AngleSet a;
        for (auto& t : a.theta) t = U(rng);
        if (i > 0) std::printf("\n");
        print_tetra(a);
      }
      return;
    }
    if (theta_t.empty()) throw CLI::ValidationError("tetra analyze", "needs --theta or --random");
    print_tetra(parse_angles(theta_t));
  });

  // asym converge / c1 / poisson
  auto* asym = app.add_subcommand("asym", "Asymptotic experiments")->require_subcommand(1);
  std::vector<double> theta_a;

  auto* converge = asym->add_subcommand("converge", "Convergence table of 2 pi log|6j| / r (CSV)");
  int r_min = 101, r_max = 1601, r_step = 0;
  std::string svg_path;
  converge->add_option("--theta", theta_a, "Dihedral angles, 1 or 6 values")->required()->delimiter(',');
  converge->add_option("--r-min", r_min, "Smallest odd r")->capture_default_str();
  converge->add_option("--r-max", r_max, "Largest r")->capture_default_str();
  converge->add_option("--r-step", r_step, "Even step between levels; 0 doubles (r -> 2r + 1)")
      ->capture_default_str();
  converge->add_option("--svg", svg_path, "Also write gap and ratio plots to this SVG file");
  converge->callback([&] {
    if (r_step % 2 != 0) throw CLI::ValidationError("--r-step", "must be even");
    const auto rows = convergence_table(parse_angles(theta_a), r_range(r_min, r_max, r_step), g.options());
    write_convergence_csv(std::cout, rows);
    if (!svg_path.empty()) {
      PlotSeries gap{"gap", {}, {}}, ratio{"|ratio - 1|", {}, {}};
      for (const auto& row : rows) {
        gap.x.push_back(row.r);
        gap.y.push_back(std::abs(row.gap));
        ratio.x.push_back(row.r);
        ratio.y.push_back(std::abs(row.ratio - 1.0));
      }
      std::ofstream(svg_path) << svg_plot("Convergence", "r", "value", {gap, ratio}, true, true);
    }
  });

  auto* c1 = asym->add_subcommand("c1", "Extract the 1/r coefficient C1 (JSON)");
  int r0 = kDefaultLadderStart, rungs = 4;
  c1->add_option("--theta", theta_a, "Dihedral angles, 1 or 6 values")->required()->delimiter(',');
  c1->add_option("--r-ladder", r0, "First level r0; the ladder is r0, 2 r0 - 1, ...")->capture_default_str();
  c1->add_option("--rungs", rungs, "Number of levels (>= 3)")->capture_default_str();
  c1->callback([&] {
    write_c1_json(std::cout, extract_c1(parse_angles(theta_a), c1_ladder(r0, rungs), g.options()));
  });

  auto* poisson = asym->add_subcommand("poisson", "Fourier coefficients of the continued summand (CSV)");
  int r_p = 201, m_max = 3;
  poisson->add_option("--theta", theta_a, "Dihedral angles, 1 or 6 values")->required()->delimiter(',');
  poisson->add_option("--r", r_p, "Odd level r")->capture_default_str();
  poisson->add_option("--m-max", m_max, "Largest |m|")->capture_default_str();
  poisson->callback([&] { write_poisson_csv(std::cout, poisson_spectrum(parse_angles(theta_a), r_p, m_max)); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
