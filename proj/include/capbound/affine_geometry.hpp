#pragma once

// Points of AG(n,q), general position and m-general sets.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "capbound/error.hpp"
#include "capbound/finite_field.hpp"

namespace capbound {

using BigInt = boost::multiprecision::cpp_int;

/// Default cap on q^n for full enumeration of AG(n,q).
inline constexpr std::uint64_t kEnumerationBudget = 10'000'000;

class Point {
 public:
  Point(FieldSpec field, std::vector<Residue> coords) : field_(std::move(field)), coords_(std::move(coords)) {
    if (coords_.empty()) throw Error(ErrorKind::ParameterRange, "point dimension must be >= 1");
    for (auto c : coords_)
      if (c >= field_.q()) throw Error(ErrorKind::DomainError, "coordinate outside field");
  }

  std::size_t dimension() const noexcept { return coords_.size(); }
  const FieldSpec& field() const noexcept { return field_; }
  const std::vector<Residue>& coords() const noexcept { return coords_; }
  Residue operator[](std::size_t j) const { return coords_[j]; }
  FieldElement coord(std::size_t j) const { return field_.element(coords_.at(j)); }

  friend bool operator==(const Point& a, const Point& b) noexcept {
    return a.coords_ == b.coords_ && a.field_ == b.field_;
  }
  /// Lexicographic by coordinate index, first coordinate most significant.
  friend bool operator<(const Point& a, const Point& b) noexcept { return a.coords_ < b.coords_; }

 private:
  FieldSpec field_;
  std::vector<Residue> coords_;
};

/// Ordered, duplicate-free collection of points in one AG(n,q).
class PointSet {
 public:
  PointSet(std::size_t n, FieldSpec field) : n_(n), field_(std::move(field)) {
    if (n_ < 1) throw Error(ErrorKind::ParameterRange, "ambient dimension must be >= 1");
  }

  PointSet(std::size_t n, FieldSpec field, std::vector<Point> points) : PointSet(n, std::move(field)) {
    for (auto& p : points) push_back(std::move(p));
  }

  /// Appends a point; throws on ambient mismatch or duplicates.
  void push_back(Point p) {
    if (p.dimension() != n_ || !(p.field() == field_))
      throw Error(ErrorKind::AmbientMismatch, "point not in this ambient space");
    if (index_.contains(p.coords())) throw Error(ErrorKind::DomainError, "duplicate point");
    index_.emplace(p.coords(), points_.size());
    points_.push_back(std::move(p));
  }

  /// Convenience for literal coordinates.
  void push_back(std::vector<Residue> coords) { push_back(Point(field_, std::move(coords))); }

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  std::size_t dimension() const noexcept { return n_; }
  const FieldSpec& field() const noexcept { return field_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const noexcept { return points_; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  std::optional<std::size_t> index_of(const Point& p) const {
    if (!(p.field() == field_)) return std::nullopt;
    auto it = index_.find(p.coords());
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const Point& p) const { return index_of(p).has_value(); }

  PointSet subset(std::span<const std::size_t> indices) const {
    PointSet out(n_, field_);
    for (auto i : indices) out.push_back(points_.at(i));
    return out;
  }

 private:
  std::size_t n_;
  FieldSpec field_;
  std::vector<Point> points_;
  std::map<std::vector<Residue>, std::size_t> index_;
};

/// All q^n points of AG(n,q) in lexicographic order.
inline PointSet enumerate_points(std::size_t n, const FieldSpec& field,
                                 std::uint64_t budget = kEnumerationBudget) {
  if (n < 1) throw Error(ErrorKind::ParameterRange, "n must be >= 1");
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= field.q();
    if (total > budget)
      throw Error(ErrorKind::BudgetExceeded, "q^n exceeds enumeration budget " + std::to_string(budget));
  }
  PointSet out(n, field);
  std::vector<Residue> coords(n, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    out.push_back(Point(field, coords));
    for (std::size_t j = n; j-- > 0;) {
      if (++coords[j] < field.q()) break;
      coords[j] = 0;
    }
  }
  return out;
}

namespace detail {

/// Rank test on the differences x_i - x_last for raw coordinate rows of length n.
/// `work` is scratch space reused across calls.
inline bool differences_independent(const FieldSpec& f, std::size_t n, std::span<const Residue* const> pts,
                                    std::vector<Residue>& work) {
  const std::size_t m = pts.size();
  if (m <= 1) return true;
  const std::size_t rows = m - 1;
  if (rows > n) return false;
  work.resize(rows * n);
  const Residue* last = pts[m - 1];
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < n; ++j) work[i * n + j] = f.sub(pts[i][j], last[j]);
  return eliminate(f, work, rows, n) == rows;
}

}  // namespace detail

/// True iff the m-1 difference vectors x_i - x_m are linearly independent (true for m = 1).
inline bool in_general_position(std::span<const Point> xs) {
  if (xs.empty()) throw Error(ErrorKind::ParameterRange, "need at least one point");
  const auto& f = xs.front().field();
  const std::size_t n = xs.front().dimension();
  std::vector<const Residue*> rows;
  rows.reserve(xs.size());
  for (const auto& x : xs) {
    if (x.dimension() != n || !(x.field() == f))
      throw Error(ErrorKind::AmbientMismatch, "points from different ambient spaces");
    rows.push_back(x.coords().data());
  }
  std::vector<Residue> work;
  return detail::differences_independent(f, n, rows, work);
}

/// Every m-subset of S in general position; vacuously true when |S| < m.
/// Subsets are visited in lexicographic index order and the scan stops at the first failure.
inline bool is_m_general(const PointSet& s, std::size_t m) {
  if (m < 1) throw Error(ErrorKind::ParameterRange, "m must be >= 1");
  if (s.size() < m) return true;
  const std::size_t n = s.dimension();
  if (m - 1 > n) return false;
  std::vector<std::size_t> comb(m);
  for (std::size_t i = 0; i < m; ++i) comb[i] = i;
  std::vector<const Residue*> rows(m);
  std::vector<Residue> work;
  while (true) {
    for (std::size_t i = 0; i < m; ++i) rows[i] = s[comb[i]].coords().data();
    if (!detail::differences_independent(s.field(), n, rows, work)) return false;
    std::size_t i = m;
    while (i-- > 0) {
      if (comb[i] != i + s.size() - m) break;
      if (i == 0) return true;
    }
    ++comb[i];
    for (std::size_t j = i + 1; j < m; ++j) comb[j] = comb[j - 1] + 1;
  }
}

inline BigInt binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  BigInt out = 1;
  for (std::uint64_t i = 0; i < r; ++i) {
    out *= (n - i);
    out /= (i + 1);
  }
  return out;
}

inline BigInt big_pow(std::uint64_t base, std::uint64_t e) {
  BigInt out = 1;
  for (std::uint64_t i = 0; i < e; ++i) out *= base;
  return out;
}

/// Smallest s with q^(m-2) * C(s, m-1) >= q^n: greedy extension guarantees an m-general set
/// of at least this size.
inline std::uint64_t trivial_lower_bound(std::uint64_t n, std::uint64_t q, std::uint64_t m) {
  if (m < 3 || m > n + 2) throw Error(ErrorKind::ParameterRange, "need 3 <= m <= n+2");
  if (q < 2) throw Error(ErrorKind::ParameterRange, "q must be >= 2");
  const BigInt target = big_pow(q, n);
  const BigInt flat = big_pow(q, m - 2);
  auto covers = [&](std::uint64_t s) { return flat * binomial(s, m - 1) >= target; };
  std::uint64_t lo = m - 1, hi = m - 1;
  while (!covers(hi)) {
    lo = hi + 1;
    hi *= 2;
  }
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (covers(mid)) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

// ---- text format: header `n=<n> p=<p> k=<k>`, then one comma-separated point per line ----

inline void write_point_set(std::ostream& os, const PointSet& s) {
  os << "n=" << s.dimension() << " p=" << s.field().p() << " k=" << s.field().k() << '\n';
  for (const auto& pt : s) {
    for (std::size_t j = 0; j < pt.dimension(); ++j) {
      if (j) os << ',';
      os << pt[j];
    }
    os << '\n';
  }
}

inline std::string to_text(const PointSet& s) {
  std::ostringstream os;
  write_point_set(os, s);
  return os.str();
}

/// Parses the text format; the field is rebuilt with make_field(p, k).
inline PointSet read_point_set(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorKind::ParseError, "missing header");
  unsigned long n = 0, p = 0, k = 0;
  if (std::sscanf(line.c_str(), "n=%lu p=%lu k=%lu", &n, &p, &k) != 3)
    throw Error(ErrorKind::ParseError, "bad header: " + line);
  PointSet out(n, make_field(p, static_cast<std::int64_t>(k)));
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    std::vector<Residue> coords;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        std::size_t used = 0;
        const unsigned long v = std::stoul(tok, &used);
        coords.push_back(static_cast<Residue>(v));
      } catch (const std::logic_error&) {
        throw Error(ErrorKind::ParseError, "bad coordinate: " + tok);
      }
    }
    if (coords.size() != n) throw Error(ErrorKind::ParseError, "wrong coordinate count: " + line);
    out.push_back(std::move(coords));
  }
  return out;
}

}  // namespace capbound
