#pragma once

// Lower-bound witnesses: largest m-general sets found by exhaustive backtracking (tiny spaces)
// or seeded randomized greedy insertion.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "capbound/affine_geometry.hpp"
#include "capbound/bound_engine.hpp"
#include "capbound/error.hpp"
#include "capbound/finite_field.hpp"

namespace capbound {

inline constexpr std::uint64_t kDefaultSearchBudget = 100'000'000;
inline constexpr const char* kRngName = "mt19937_64";

struct SearchResult {
  std::uint64_t n = 0, q = 0, m = 0;
  std::size_t best_size = 0;
  PointSet witness;
  bool exact = false;  // search space exhausted within budget
  std::uint64_t nodes_visited = 0;
  std::uint64_t budget = 0;
  std::string method{};
  std::string rng{};  // generator identifier for greedy runs
  std::uint64_t seed = 0;
  std::uint64_t restarts = 0;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["schema"] = 1;
    j["n"] = n;
    j["q"] = q;
    j["m"] = m;
    j["method"] = method;
    j["best_size"] = best_size;
    j["exact"] = exact;
    j["nodes_visited"] = nodes_visited;
    j["budget"] = budget;
    if (!rng.empty()) {
      j["rng"] = rng;
      j["seed"] = seed;
      j["restarts"] = restarts;
    }
    j["witness"] = to_text(witness);
    return j;
  }
};

namespace detail {

inline void check_search_params(std::uint64_t n, std::uint64_t m) {
  if (n < 1) throw Error(ErrorKind::ParameterRange, "n must be >= 1");
  if (m < 3 || m > n + 2) throw Error(ErrorKind::ParameterRange, "need 3 <= m <= n+2");
}

/// Whether `candidate` can join `chosen` (all indices into `pts`) keeping it m-general, checking
/// only the (m-1)-subsets of `chosen` that contain chosen[must_include] when must_include is set.
class Admissibility {
 public:
  Admissibility(const PointSet& pts, std::size_t m) : pts_(pts), m_(m), rows_(m) {}

  /// Every (m-1)-subset of chosen[0..size) that includes chosen[anchor] (or any subset if
  /// anchor == npos) together with the candidate is in general position.
  bool check(std::span<const std::size_t> chosen, std::size_t candidate, std::size_t anchor) {
    const std::size_t need = m_ - 1;
    if (chosen.size() < need) return true;
    std::vector<std::size_t> pool;
    pool.reserve(chosen.size());
    std::size_t fixed = 0;
    if (anchor != npos) {
      rows_[0] = pts_[chosen[anchor]].coords().data();
      fixed = 1;
      for (std::size_t i = 0; i < chosen.size(); ++i)
        if (i != anchor) pool.push_back(chosen[i]);
    } else {
      pool.assign(chosen.begin(), chosen.end());
    }
    rows_[need] = pts_[candidate].coords().data();
    const std::size_t pick = need - fixed;
    if (pick == 0) return independent();
    if (pool.size() < pick) return true;
    comb_.resize(pick);
    std::iota(comb_.begin(), comb_.end(), 0);
    while (true) {
      for (std::size_t i = 0; i < pick; ++i) rows_[fixed + i] = pts_[pool[comb_[i]]].coords().data();
      if (!independent()) return false;
      std::size_t i = pick;
      while (i-- > 0) {
        if (comb_[i] != i + pool.size() - pick) break;
        if (i == 0) return true;
      }
      ++comb_[i];
      for (std::size_t j = i + 1; j < pick; ++j) comb_[j] = comb_[j - 1] + 1;
    }
  }

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

 private:
  bool independent() { return differences_independent(pts_.field(), pts_.dimension(), rows_, work_); }

  const PointSet& pts_;
  std::size_t m_;
  std::vector<const Residue*> rows_;
  std::vector<std::size_t> comb_;
  std::vector<Residue> work_;
};

}  // namespace detail

/// Depth-first search over lexicographically increasing point sequences with the bound
/// |current| + |admissible candidates| <= best pruning. The first maximum found in that order
/// is the witness, so results are deterministic.
inline SearchResult max_m_general_exact(std::uint64_t n, std::uint64_t q, std::uint64_t m,
                                        std::uint64_t budget = kDefaultSearchBudget) {
  detail::check_search_params(n, m);
  const FieldSpec field = field_of_order(q);
  const PointSet pts = enumerate_points(n, field);
  detail::Admissibility adm(pts, m);

  SearchResult res{.n = n, .q = q, .m = m, .witness = PointSet(n, field)};
  res.budget = budget;
  res.method = "exact";
  std::vector<std::size_t> current, best;
  bool out_of_budget = false;

  // candidates: admissible indices greater than the last chosen point.
  auto dfs = [&](auto&& self, const std::vector<std::size_t>& candidates) -> void {
    if (current.size() > best.size()) best = current;
    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
      if (current.size() + (candidates.size() - ci) <= best.size()) return;
      if (res.nodes_visited >= budget) {
        out_of_budget = true;
        return;
      }
      ++res.nodes_visited;
      const std::size_t pt = candidates[ci];
      current.push_back(pt);
      std::vector<std::size_t> next;
      next.reserve(candidates.size() - ci);
      for (std::size_t cj = ci + 1; cj < candidates.size(); ++cj)
        if (adm.check(current, candidates[cj], current.size() - 1)) next.push_back(candidates[cj]);
      self(self, next);
      current.pop_back();
      if (out_of_budget) return;
    }
  };

  std::vector<std::size_t> all(pts.size());
  std::iota(all.begin(), all.end(), 0);
  dfs(dfs, all);

  res.exact = !out_of_budget;
  res.best_size = best.size();
  res.witness = pts.subset(best);
  if (!is_m_general(res.witness, m)) throw std::logic_error("exact search produced a non-m-general witness");
  return res;
}

/// Seed for one greedy restart, derived from the master seed.
inline std::uint64_t restart_seed(std::uint64_t seed, std::uint64_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart), static_cast<std::uint32_t>(restart >> 32)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (std::uint64_t{words[0]} << 32) | words[1];
}

/// Greedy insertion in a shuffled point order, best of `restarts` runs (earliest wins ties).
inline SearchResult greedy_m_general(std::uint64_t n, std::uint64_t q, std::uint64_t m, std::uint64_t seed,
                                     std::uint64_t restarts) {
  detail::check_search_params(n, m);
  const FieldSpec field = field_of_order(q);
  const PointSet pts = enumerate_points(n, field);
  detail::Admissibility adm(pts, m);

  SearchResult res{.n = n, .q = q, .m = m, .witness = PointSet(n, field)};
  res.method = "greedy";
  res.rng = kRngName;
  res.seed = seed;
  res.restarts = restarts;
  res.budget = restarts;
  std::vector<std::size_t> best, order(pts.size()), current;
  for (std::uint64_t r = 0; r < std::max<std::uint64_t>(restarts, 1); ++r) {
    std::mt19937_64 rng(restart_seed(seed, r));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    current.clear();
    for (auto pt : order) {
      ++res.nodes_visited;
      if (adm.check(current, pt, detail::Admissibility::npos)) current.push_back(pt);
    }
    if (current.size() > best.size()) best = current;
  }
  res.exact = false;
  res.best_size = best.size();
  res.witness = pts.subset(best);
  if (!is_m_general(res.witness, m)) throw std::logic_error("greedy search produced a non-m-general witness");
  return res;
}

struct SandwichResult {
  std::uint64_t n = 0, q = 0, m = 0;
  std::size_t lower = 0;
  bool lower_exact = false;
  std::uint64_t trivial_lower = 0;
  double theorem_bound = 0;
  double gap_ratio = 0;  // theorem_bound / lower
  bool pass = false;

  nlohmann::json to_json() const {
    return {{"schema", 1},
            {"check", "sandwich"},
            {"params", {{"n", n}, {"q", q}, {"m", m}}},
            {"result", pass ? "pass" : "fail"},
            {"lower", lower},
            {"lower_exact", lower_exact},
            {"trivial_lower", trivial_lower},
            {"theorem_bound", round_sig12(theorem_bound)},
            {"gap_ratio", round_sig12(gap_ratio)}};
  }
};

/// Best known lower bound (exact search, falling back to greedy when the budget runs out)
/// against the upper bound. Exact values must also clear the trivial lower bound.
inline SandwichResult sandwich_check(std::uint64_t n, std::uint64_t q, std::uint64_t m,
                                     std::uint64_t budget = kDefaultSearchBudget, std::uint64_t seed = 1,
                                     std::uint64_t restarts = 50) {
  const auto report = theorem_bound(n, q, m);
  SandwichResult s{n, q, m};
  auto exact = max_m_general_exact(n, q, m, budget);
  s.lower = exact.best_size;
  s.lower_exact = exact.exact;
  if (!exact.exact) s.lower = std::max(s.lower, greedy_m_general(n, q, m, seed, restarts).best_size);
  s.trivial_lower = trivial_lower_bound(n, q, m);
  s.theorem_bound = *report.theorem_bound;
  s.gap_ratio = s.lower ? s.theorem_bound / static_cast<double>(s.lower) : 0.0;
  s.pass = static_cast<double>(s.lower) < s.theorem_bound && (!s.lower_exact || s.trivial_lower <= s.lower);
  return s;
}

}  // namespace capbound
