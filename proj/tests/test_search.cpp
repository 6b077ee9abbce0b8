#include <gtest/gtest.h>

#include "capbound/search.hpp"
#include "oracles.hpp"

using namespace capbound;

TEST(ExactSearch, SmallValues) {
  EXPECT_EQ(max_m_general_exact(2, 3, 3).best_size, 4u);
  EXPECT_EQ(max_m_general_exact(3, 2, 4).best_size, 4u);
  EXPECT_EQ(max_m_general_exact(2, 4, 4).best_size, 3u);
  EXPECT_EQ(max_m_general_exact(2, 5, 3).best_size, 6u);
  const auto r = max_m_general_exact(2, 3, 3);
  EXPECT_TRUE(r.exact);
  EXPECT_TRUE(is_m_general(r.witness, 3));
}

TEST(ExactSearch, MatchesSubsetEnumeration) {
  for (auto [n, q, m] : std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>>{
           {1, 2, 3}, {2, 2, 3}, {2, 2, 4}, {2, 3, 3}, {2, 3, 4}, {1, 4, 3}, {2, 4, 4}, {3, 2, 4}, {4, 2, 4}, {4, 2, 5}}) {
    const auto brute = oracle::max_m_general_brute(field_of_order(q), n, m);
    EXPECT_EQ(max_m_general_exact(n, q, m).best_size, brute) << n << " " << q << " " << m;
  }
}

TEST(ExactSearch, Deterministic) {
  const auto a = max_m_general_exact(2, 5, 3), b = max_m_general_exact(2, 5, 3);
  EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
}

TEST(ExactSearch, BudgetExhaustionGivesLowerBound) {
  const auto r = max_m_general_exact(3, 3, 3, 20);
  EXPECT_FALSE(r.exact);
  EXPECT_LE(r.best_size, 9u);
  EXPECT_TRUE(is_m_general(r.witness, 3));
  EXPECT_EQ(r.nodes_visited, 20u);
}

TEST(ExactSearch, Errors) {
  EXPECT_THROW(max_m_general_exact(2, 3, 2), Error);
  EXPECT_THROW(max_m_general_exact(2, 3, 5), Error);
  EXPECT_THROW(max_m_general_exact(20, 3, 3), Error);
}

TEST(Search, WitnessSurvivesFrobenius) {
  // x -> x^p is a field automorphism, so it preserves m-generality coordinatewise.
  for (auto [n, q, m] : std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>>{{2, 4, 3}, {2, 9, 3}, {2, 8, 4}, {3, 4, 4}}) {
    const auto r = q == 4 && n == 2 ? max_m_general_exact(n, q, m) : greedy_m_general(n, q, m, 3, 10);
    const auto& f = r.witness.field();
    PointSet image(n, f);
    for (const auto& pt : r.witness) {
      std::vector<Residue> c = pt.coords();
      for (auto& x : c) x = f.pow(x, f.p());
      image.push_back(std::move(c));
    }
    EXPECT_EQ(image.size(), r.best_size);
    EXPECT_TRUE(is_m_general(image, m)) << n << " " << q << " " << m;
  }
}

TEST(GreedySearch, SeedDeterminismAndValidity) {
  const auto a = greedy_m_general(3, 3, 3, 5, 20), b = greedy_m_general(3, 3, 3, 5, 20);
  EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
  EXPECT_EQ(a.to_json()["rng"], "mt19937_64");
  EXPECT_TRUE(is_m_general(a.witness, 3));
  EXPECT_LE(a.best_size, 9u);
  EXPECT_FALSE(a.exact);
}

TEST(GreedySearch, ChainInequalityOnFoundSets) {
  // |S| - 2m + 3 <= m Lambda(n, q-1, floor((q-1)n/m)) for m-general S with q odd or m even.
  for (auto [n, q, m] : std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>>{
           {3, 3, 3}, {4, 3, 3}, {3, 5, 3}, {4, 2, 4}, {3, 4, 4}, {4, 3, 4}, {5, 2, 6}}) {
    const auto r = greedy_m_general(n, q, m, 1, 10);
    EXPECT_LE(static_cast<std::int64_t>(r.best_size) - 2 * static_cast<std::int64_t>(m) + 3,
              g_rank_upper_bound(n, q, m).convert_to<std::int64_t>());
  }
}

TEST(Sandwich, Examples) {
  for (auto [n, q, m] : std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>>{{2, 3, 3}, {3, 3, 3}, {3, 2, 4}}) {
    const auto s = sandwich_check(n, q, m);
    EXPECT_TRUE(s.pass);
    EXPECT_TRUE(s.lower_exact);
    EXPECT_LE(s.trivial_lower, s.lower);
    EXPECT_EQ(s.to_json()["result"], "pass");
  }
  EXPECT_EQ(sandwich_check(3, 3, 3).lower, 9u);
}
