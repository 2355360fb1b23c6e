#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "qsixj/qarith.hpp"

using namespace qsixj;

namespace {

long double direct_qint(int r, long n) {
  const long double pi = std::numbers::pi_v<long double>;
  return std::sin(2 * pi * n / r) / std::sin(2 * pi / r);
}

}  // namespace

TEST(QInt, Examples) {
  Level l5(5), l7(7);
  EXPECT_EQ(qint(l5, 1), 1.0);
  EXPECT_EQ(qint(l5, 0), 0.0);
  EXPECT_NEAR(qint(l5, 2), 0.6180339887498949, 1e-15);
  EXPECT_EQ(qint(l7, 7), 0.0);
}

TEST(QInt, PeriodicAndMatchesSineRatio) {
  for (int r = 3; r <= 51; r += 2) {
    Level level(r);
    for (long n = 0; n <= 2 * r; ++n) {
      EXPECT_EQ(level.qint(n + r), level.qint(n)) << "r=" << r << " n=" << n;
      if (n % r != 0) {
        EXPECT_NEAR(level.qint(n), static_cast<double>(direct_qint(r, n)), 1e-13);
      }
    }
    EXPECT_EQ(level.qint(-1), -level.qint(1));
  }
}

TEST(QFact, Examples) {
  Level l5(5), l7(7);
  auto f0 = qfact(l5, 0);
  EXPECT_EQ(f0.sign, 1);
  EXPECT_EQ(f0.logmag, 0.0);
  auto f3 = qfact(l5, 3);
  EXPECT_EQ(f3.sign, -1);
  EXPECT_NEAR(std::exp(f3.logmag), 0.3819660112501051, 1e-14);
  EXPECT_EQ(qfact(l7, 7).sign, 0);
  EXPECT_THROW(qfact(l7, -1), std::domain_error);
}

TEST(QFact, RatioIsQInt) {
  for (Precision p : {Precision::Double, Precision::DoubleDouble}) {
    for (int r = 3; r <= 51; r += 2) {
      Level level(r, p);
      for (int n = 1; n <= 2 * r - 1; ++n) {
        auto num = level.qfact(n);
        auto den = level.qfact(n - 1);
        if (den.is_zero()) continue;
        double ratio = (num / den).to_double();
        double want = level.qint(n);
        if (want == 0.0) {
          EXPECT_EQ(num.sign, 0);
        } else {
          EXPECT_NEAR(ratio / want, 1.0, 1e-12) << "r=" << r << " n=" << n;
        }
      }
    }
  }
}

TEST(QFact, SignCountsNegativeSines) {
  for (int r = 3; r <= 41; r += 2) {
    Level level(r);
    for (int n = 0; n <= 2 * r; ++n) {
      int negatives = 0;
      bool has_zero = false;
      for (int j = 1; j <= n; ++j) {
        int k = j % r;
        if (k == 0) has_zero = true;
        if (2 * k > r) ++negatives;
      }
      int want = has_zero ? 0 : (negatives % 2 ? -1 : 1);
      EXPECT_EQ(level.qfact(n).sign, want) << "r=" << r << " n=" << n;
    }
  }
}

TEST(QFact, MatchesDirectProduct) {
  Level level(23);
  long double prod = 1;
  for (int n = 1; n < 23; ++n) {
    prod *= direct_qint(23, n);
    auto f = level.qfact(n);
    EXPECT_NEAR(f.to_double() / static_cast<double>(prod), 1.0, 1e-12);
  }
}

TEST(Admissible, Examples) {
  Level l7(7), l5(5);
  EXPECT_TRUE(is_r_admissible(l7, Spin{1}, Spin{1}, Spin{2}));
  EXPECT_FALSE(is_r_admissible(l7, Spin{2}, Spin{2}, Spin{6}));
  EXPECT_FALSE(is_r_admissible(l5, Spin{3}, Spin{3}, Spin{2}));
  EXPECT_FALSE(is_r_admissible(l7, Spin{1}, Spin{1}, Spin{1}));  // half-odd sum
}

TEST(Admissible, PermutationInvariant) {
  for (int r : {5, 7, 9, 11}) {
    Level level(r);
    for (int x = 0; x <= r; ++x) {
      for (int y = 0; y <= r; ++y) {
        for (int z = 0; z <= r; ++z) {
          std::array<int, 3> t = {x, y, z};
          std::sort(t.begin(), t.end());
          const bool base = is_r_admissible(level, Spin{x}, Spin{y}, Spin{z});
          do {
            EXPECT_EQ(is_r_admissible(level, Spin{t[0]}, Spin{t[1]}, Spin{t[2]}), base);
          } while (std::next_permutation(t.begin(), t.end()));
        }
      }
    }
  }
}

TEST(Level, RejectsEvenOrSmall) {
  EXPECT_THROW(Level(4), std::invalid_argument);
  EXPECT_THROW(Level(1), std::invalid_argument);
}
