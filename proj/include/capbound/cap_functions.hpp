#pragma once

// The distinctness indicator T_m^S and the polynomial G_m^S on S^m, with the checks that
// tie them together: T = G on m-general sets, the rank of T_2, and the characteristic-2
// decomposition of T_{2k+1} into T_{2k} terms.

#include <cassert>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "capbound/affine_geometry.hpp"
#include "capbound/error.hpp"
#include "capbound/finite_field.hpp"

namespace capbound {

/// Default cap on the number of bracket evaluations in eval_G_direct.
inline constexpr std::uint64_t kBracketBudget = 10'000'000;
/// Default cap on |S|^m for exhaustive tuple scans.
inline constexpr std::uint64_t kTupleBudget = 10'000'000;

using Tuple = std::vector<std::size_t>;

/// Outcome of a verification check, serialised as
/// {schema, check, params, result: "pass"|"fail", counterexample?}.
struct Verdict {
  std::string check;
  nlohmann::json params = nlohmann::json::object();
  bool pass = true;
  std::optional<Tuple> counterexample;
  std::string detail;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["schema"] = 1;
    j["check"] = check;
    j["params"] = params;
    j["result"] = pass ? "pass" : "fail";
    if (counterexample) j["counterexample"] = *counterexample;
    if (!detail.empty()) j["detail"] = detail;
    return j;
  }
};

namespace detail {

inline std::uint64_t checked_power(std::uint64_t base, std::uint64_t e, std::uint64_t budget, const char* what) {
  std::uint64_t total = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (base != 0 && total > budget / base)
      throw Error(ErrorKind::BudgetExceeded, std::string(what) + " exceeds budget " + std::to_string(budget));
    total *= base;
  }
  if (total > budget)
    throw Error(ErrorKind::BudgetExceeded, std::string(what) + " exceeds budget " + std::to_string(budget));
  return total;
}

inline Tuple indices_of(const PointSet& s, std::span<const Point> xs) {
  Tuple idx;
  idx.reserve(xs.size());
  for (const auto& x : xs) {
    auto i = s.index_of(x);
    if (!i) throw Error(ErrorKind::NotInDomain, "point is not in S");
    idx.push_back(*i);
  }
  return idx;
}

inline void check_indices(const PointSet& s, std::span<const std::size_t> idx) {
  for (auto i : idx)
    if (i >= s.size()) throw Error(ErrorKind::NotInDomain, "tuple index out of range");
}

/// Advances an odometer over {0..base-1}^len (last slot fastest); false after the last tuple.
inline bool next_tuple(Tuple& t, std::size_t base) {
  for (std::size_t i = t.size(); i-- > 0;) {
    if (++t[i] < base) return true;
    t[i] = 0;
  }
  return false;
}

inline bool all_distinct(std::span<const std::size_t> idx) {
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j)
      if (idx[i] == idx[j]) return false;
  return true;
}

inline std::vector<std::vector<Residue>> difference_vectors(const PointSet& s, std::span<const std::size_t> idx) {
  std::vector<std::vector<Residue>> diffs;
  if (idx.size() <= 1) return diffs;
  const auto& f = s.field();
  const auto& last = s[idx.back()].coords();
  for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
    const auto& xi = s[idx[i]].coords();
    std::vector<Residue> d(xi.size());
    for (std::size_t j = 0; j < xi.size(); ++j) d[j] = f.sub(xi[j], last[j]);
    diffs.push_back(std::move(d));
  }
  return diffs;
}

}  // namespace detail

// ---- T ----

inline Residue eval_T_index(const PointSet& s, std::span<const std::size_t> idx) {
  detail::check_indices(s, idx);
  return detail::all_distinct(idx) ? 1 : 0;
}

/// 1 iff all arguments are pairwise distinct.
inline FieldElement eval_T(const PointSet& s, std::span<const Point> xs) {
  const auto idx = detail::indices_of(s, xs);
  return s.field().element(eval_T_index(s, idx));
}

// ---- G ----

/// Literal sum over t in F_q^(m-1) of prod_j [1 - (sum_i t_i (x_ij - x_mj))^(q-1)].
inline Residue eval_G_direct_index(const PointSet& s, std::span<const std::size_t> idx,
                                   std::uint64_t budget = kBracketBudget) {
  detail::check_indices(s, idx);
  if (idx.empty()) throw Error(ErrorKind::ParameterRange, "need at least one argument");
  const auto& f = s.field();
  const std::size_t n = s.dimension();
  const std::size_t free = idx.size() - 1;
  const std::uint64_t t_count = detail::checked_power(f.q(), free, budget, "q^(m-1)");
  if (t_count * n > budget)
    throw Error(ErrorKind::BudgetExceeded, "q^(m-1)*n exceeds budget " + std::to_string(budget));

  const auto diffs = detail::difference_vectors(s, idx);
  Tuple t(free, 0);
  Residue total = 0;
  for (std::uint64_t step = 0; step < t_count; ++step) {
    Residue prod = 1;
    for (std::size_t j = 0; j < n && prod != 0; ++j) {
      Residue dot = 0;
      for (std::size_t i = 0; i < free; ++i)
        dot = f.add(dot, f.mul(static_cast<Residue>(t[i]), diffs[i][j]));
      prod = f.mul(prod, f.sub(1, f.pow(dot, f.q() - 1)));
    }
    total = f.add(total, prod);
    detail::next_tuple(t, f.q());
  }
  return total;
}

inline FieldElement eval_G_direct(const PointSet& s, std::span<const Point> xs, std::uint64_t budget = kBracketBudget) {
  const auto idx = detail::indices_of(s, xs);
  return s.field().element(eval_G_direct_index(s, idx, budget));
}

/// q^d mod p with d the nullity of the difference vectors: 1 when independent, 0 otherwise.
inline Residue eval_G_rank_index(const PointSet& s, std::span<const std::size_t> idx) {
  detail::check_indices(s, idx);
  if (idx.empty()) throw Error(ErrorKind::ParameterRange, "need at least one argument");
  const auto& f = s.field();
  const auto diffs = detail::difference_vectors(s, idx);
  const std::size_t d = nullspace_dim(f, diffs);
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < d; ++i) count = count * f.q() % f.p();
  return f.from_integer(count);
}

inline FieldElement eval_G_rank(const PointSet& s, std::span<const Point> xs) {
  const auto idx = detail::indices_of(s, xs);
  return s.field().element(eval_G_rank_index(s, idx));
}

// ---- function tables ----

/// Dense value table of a k-variable function on S^k; tuple (i_1..i_k) sits at
/// sum i_j |S|^(k-j).
class FunctionTable {
 public:
  FunctionTable(PointSet domain, std::size_t arity, std::vector<Residue> values)
      : domain_(std::move(domain)), arity_(arity), values_(std::move(values)) {
    if (arity_ < 1) throw Error(ErrorKind::ParameterRange, "arity must be >= 1");
    std::uint64_t expect = 1;
    for (std::size_t i = 0; i < arity_; ++i) expect *= domain_.size();
    if (values_.size() != expect) throw Error(ErrorKind::DomainError, "table size must be |S|^arity");
    for (auto v : values_)
      if (v >= domain_.field().q()) throw Error(ErrorKind::DomainError, "table value outside field");
  }

  template <class Fn>
  static FunctionTable tabulate(const PointSet& domain, std::size_t arity, Fn&& fn,
                                std::uint64_t budget = kTupleBudget) {
    if (arity < 1) throw Error(ErrorKind::ParameterRange, "arity must be >= 1");
    const auto total = detail::checked_power(domain.size(), arity, budget, "|S|^arity");
    std::vector<Residue> values;
    values.reserve(total);
    if (total > 0) {
      Tuple t(arity, 0);
      do values.push_back(fn(std::span<const std::size_t>(t)));
      while (detail::next_tuple(t, domain.size()));
    }
    return FunctionTable(domain, arity, std::move(values));
  }

  const PointSet& domain() const noexcept { return domain_; }
  std::size_t arity() const noexcept { return arity_; }
  const std::vector<Residue>& values() const noexcept { return values_; }

  Residue at(std::span<const std::size_t> idx) const {
    if (idx.size() != arity_) throw Error(ErrorKind::ArityUnsupported, "wrong tuple length");
    std::size_t pos = 0;
    for (auto i : idx) {
      if (i >= domain_.size()) throw Error(ErrorKind::NotInDomain, "tuple index out of range");
      pos = pos * domain_.size() + i;
    }
    return values_[pos];
  }

  /// value(sigma(tuple)) == value(tuple) for all permutations; adjacent transpositions suffice.
  bool is_symmetric() const {
    if (values_.empty() || arity_ == 1) return true;
    Tuple t(arity_, 0);
    do {
      for (std::size_t a = 0; a + 1 < arity_; ++a) {
        Tuple u = t;
        std::swap(u[a], u[a + 1]);
        if (at(u) != at(t)) return false;
      }
    } while (detail::next_tuple(t, domain_.size()));
    return true;
  }

 private:
  PointSet domain_;
  std::size_t arity_;
  std::vector<Residue> values_;
};

inline FunctionTable make_T_table(const PointSet& s, std::size_t m) {
  return FunctionTable::tabulate(s, m, [&](std::span<const std::size_t> t) { return eval_T_index(s, t); });
}

inline FunctionTable make_G_table(const PointSet& s, std::size_t m) {
  return FunctionTable::tabulate(s, m, [&](std::span<const std::size_t> t) { return eval_G_rank_index(s, t); });
}

// ---- checks ----

struct Exhaustive {};
struct Sampled {
  std::uint64_t count = 1000;
  std::uint64_t seed = 0;
};
using CheckMode = std::variant<Exhaustive, Sampled>;

/// Compares T and G (rank route) on S^m; reports the first differing tuple.
/// Exhaustive mode scans tuples in lexicographic index order.
inline Verdict check_T_equals_G(const PointSet& s, std::size_t m, CheckMode mode = Exhaustive{},
                                std::uint64_t budget = kTupleBudget) {
  if (m < 1) throw Error(ErrorKind::ParameterRange, "m must be >= 1");
  Verdict v;
  v.check = "T_equals_G";
  v.params = {{"n", s.dimension()}, {"q", s.field().q()}, {"m", m}, {"size", s.size()}};
  if (s.empty()) return v;
  auto test = [&](const Tuple& t) {
    if (eval_T_index(s, t) != eval_G_rank_index(s, t)) {
      v.pass = false;
      v.counterexample = t;
      v.detail = "T=" + std::to_string(eval_T_index(s, t)) + " G=" + std::to_string(eval_G_rank_index(s, t));
      return false;
    }
    return true;
  };
  if (std::holds_alternative<Exhaustive>(mode)) {
    detail::checked_power(s.size(), m, budget, "|S|^m");
    v.params["mode"] = "exhaustive";
    Tuple t(m, 0);
    do
      if (!test(t)) return v;
    while (detail::next_tuple(t, s.size()));
  } else {
    const auto& sm = std::get<Sampled>(mode);
    v.params["mode"] = "sampled";
    v.params["count"] = sm.count;
    v.params["seed"] = sm.seed;
    std::mt19937_64 rng(sm.seed);
    std::uniform_int_distribution<std::size_t> pick(0, s.size() - 1);
    Tuple t(m);
    for (std::uint64_t c = 0; c < sm.count; ++c) {
      for (auto& x : t) x = pick(rng);
      if (!test(t)) return v;
    }
  }
  return v;
}

/// Expected rank of the |B| x |B| matrix J - I over characteristic p.
constexpr std::size_t t2_expected_rank(std::size_t size, std::uint64_t p) noexcept {
  if (size == 0) return 0;
  return size % p == 1 % p ? size - 1 : size;
}

/// Rank of the value matrix of a 2-variable table (a lower bound for its 2-rank).
inline std::size_t flatten_rank_lower_bound(const FunctionTable& table) {
  if (table.arity() != 2)
    throw Error(ErrorKind::ArityUnsupported, "matrix lower bound only defined for 2-variable functions");
  const std::size_t s = table.domain().size();
  return matrix_rank(FqMatrix(table.domain().field(), s, s, table.values()));
}

/// Rank of the T_2 matrix on B (zeros on the diagonal, ones elsewhere).
inline std::size_t t2_rank_formula(const PointSet& b) {
  if (b.empty()) throw Error(ErrorKind::ParameterRange, "|B| must be >= 1");
  const std::size_t rank = flatten_rank_lower_bound(make_T_table(b, 2));
  assert(rank == t2_expected_rank(b.size(), b.field().p()));
  return rank;
}

/// Over characteristic 2: T_{2k+1}(x) == sum_i T_{2k}(x without x_i), checked on all of S^(2k+1).
inline Verdict char2_odd_identity(const PointSet& s, std::size_t k_half, std::uint64_t budget = kTupleBudget) {
  if (s.field().p() != 2) throw Error(ErrorKind::WrongCharacteristic, "identity requires characteristic 2");
  if (k_half < 1) throw Error(ErrorKind::ParameterRange, "k must be >= 1");
  const std::size_t m = 2 * k_half + 1;
  Verdict v;
  v.check = "char2_odd_identity";
  v.params = {{"n", s.dimension()}, {"q", s.field().q()}, {"m", m}, {"size", s.size()}};
  if (s.empty()) return v;
  detail::checked_power(s.size(), m, budget, "|S|^(2k+1)");
  const auto& f = s.field();
  Tuple t(m, 0), omitted(m - 1);
  do {
    const Residue lhs = eval_T_index(s, t);
    Residue rhs = 0;
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t w = 0;
      for (std::size_t j = 0; j < m; ++j)
        if (j != i) omitted[w++] = t[j];
      rhs = f.add(rhs, eval_T_index(s, omitted));
    }
    if (lhs != rhs) {
      v.pass = false;
      v.counterexample = t;
      return v;
    }
  } while (detail::next_tuple(t, s.size()));
  return v;
}

}  // namespace capbound
