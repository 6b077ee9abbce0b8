#include <gtest/gtest.h>

#include <random>

#include "capbound/affine_geometry.hpp"
#include "capbound/lambda_counting.hpp"

using namespace capbound;

namespace {

// Enumerates {0..beta}^alpha directly.
std::uint64_t brute(std::uint64_t alpha, std::uint64_t beta, std::uint64_t gamma) {
  std::vector<std::uint64_t> t(alpha, 0);
  std::uint64_t count = 0;
  while (true) {
    std::uint64_t sum = 0;
    for (auto v : t) sum += v;
    count += sum <= gamma;
    std::size_t i = alpha;
    while (i-- > 0) {
      if (++t[i] <= beta) break;
      t[i] = 0;
      if (i == 0) return count;
    }
  }
}

}  // namespace

TEST(LambdaExact, Examples) {
  EXPECT_EQ(lambda_exact({2, 2, 2}), 6);
  EXPECT_EQ(lambda_exact({4, 3, 12}), 256);
  EXPECT_EQ(lambda_exact({7, 4, 0}), 1);
  EXPECT_EQ(lambda_exact({3, 0, 5}), 1);
  EXPECT_EQ(lambda_exact({3, 2, 100}), 27);
  EXPECT_THROW(lambda_exact({0, 2, 2}), Error);
}

TEST(LambdaExact, MatchesEnumeration) {
  for (std::uint64_t a = 1; a <= 5; ++a)
    for (std::uint64_t b = 0; b <= 4; ++b)
      for (std::uint64_t g = 0; g <= a * b; ++g) ASSERT_EQ(lambda_exact({a, b, g}), brute(a, b, g)) << a << b << g;
}

TEST(LambdaExact, ComplementSymmetryAndMonotonicity) {
  for (std::uint64_t a = 1; a <= 8; ++a)
    for (std::uint64_t b = 1; b <= 5; ++b) {
      const BigInt total = big_pow(b + 1, a);
      for (std::uint64_t g = 0; g < a * b; ++g) {
        // Tuples with sum <= g pair with tuples of sum >= ab - g under x -> b - x.
        EXPECT_EQ(lambda_exact({a, b, g}) + lambda_exact({a, b, a * b - g - 1}), total);
        EXPECT_LE(lambda_exact({a, b, g}), lambda_exact({a, b, g + 1}));
      }
    }
}

TEST(LambdaExact, LargeArgumentsStayExact) {
  // Lambda(200, 1, 100) = sum_{i<=100} C(200, i) = (2^200 + C(200,100)) / 2.
  BigInt c = 1;
  for (int i = 1; i <= 100; ++i) c = c * (201 - i) / i;
  EXPECT_EQ(lambda_exact({200, 1, 100}), (big_pow(2, 200) + c) / 2);
}

TEST(SaddleBound, Examples) {
  EXPECT_NEAR(saddle_bound({2, 2, 2}, 0.5), 12.25, 1e-12);
  for (double t : {0.01, 0.3, 0.9, 0.999999}) EXPECT_GE(saddle_bound({5, 3, 0}, t), 1.0);
  for (double t : {0.0, 1.0, -0.5, 2.0}) {
    try {
      (void)saddle_bound({2, 2, 2}, t);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::DomainError);
    }
  }
}

TEST(SaddleBound, DominatesExactCount) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> a(1, 30), b(1, 10);
  std::uniform_real_distribution<double> t(1e-6, 1 - 1e-6);
  for (int i = 0; i < 500; ++i) {
    const std::uint64_t al = a(rng), be = b(rng);
    const std::uint64_t ga = std::uniform_int_distribution<std::uint64_t>(0, al * be)(rng);
    const double tt = t(rng);
    const double exact = lambda_exact({al, be, ga}).convert_to<double>();
    ASSERT_GE(saddle_bound({al, be, ga}, tt), exact * (1 - 1e-12)) << al << " " << be << " " << ga << " " << tt;
  }
}

TEST(GRankUpperBound, Examples) {
  // m * Lambda(n, q-1, floor((q-1)n/m)).
  EXPECT_EQ(g_rank_upper_bound(3, 3, 3), 3 * brute(3, 2, 2));
  EXPECT_EQ(g_rank_upper_bound(4, 2, 4), 4 * brute(4, 1, 1));
  EXPECT_THROW(g_rank_upper_bound(3, 3, 2), Error);
}
