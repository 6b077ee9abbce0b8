#pragma once

// Exact arithmetic in F_{p^k} (polynomial basis) and Gaussian elimination over it.
//
// Elements are addressed by their polynomial-basis index: the coefficient vector
// (c_0, ..., c_{k-1}) maps to sum c_i p^i, so index 0 is zero and index 1 is one.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "capbound/error.hpp"

namespace capbound {

using Residue = std::uint32_t;

/// Largest field order accepted by make_field.
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 16;

/// Fields up to this order get dense add/mul tables.
inline constexpr std::uint64_t kTableCacheOrder = 256;

namespace detail {

constexpr bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Coefficients low-degree-first, no trailing zeros except for the zero polynomial (empty).
using Poly = std::vector<Residue>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Residue inv_mod(Residue a, Residue p) {
  // p is prime, so a^(p-2) works; p <= 2^16 keeps products in 64 bits.
  std::uint64_t result = 1, base = a % p;
  std::uint64_t e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<Residue>(result);
}

/// Remainder of a modulo a nonzero b over F_p.
inline Poly poly_mod(Poly a, const Poly& b, Residue p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const Residue lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const std::uint64_t factor = std::uint64_t{a.back()} * lead_inv % p;
    for (std::size_t i = 0; i <= db; ++i) {
      const std::uint64_t sub = factor * b[i] % p;
      a[shift + i] = static_cast<Residue>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

/// Monic irreducibility by trial division against every monic polynomial of degree <= deg/2.
inline bool is_irreducible(const Poly& f, Residue p) {
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly g(d + 1);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<Residue>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

struct FieldData {
  Residue p = 0;
  unsigned k = 0;
  Residue q = 0;
  Poly modulus;                       // monic, degree k
  std::vector<std::uint16_t> add_tab;  // q*q, only when q <= kTableCacheOrder
  std::vector<std::uint16_t> mul_tab;
  std::vector<Residue> inv_tab;        // always filled (q <= 2^16)
};

}  // namespace detail

class FieldElement;

/// An immutable finite field F_{p^k}; cheap to copy, safe to share across threads.
class FieldSpec {
 public:
  FieldSpec() = default;

  Residue p() const noexcept { return data_->p; }
  unsigned k() const noexcept { return data_->k; }
  Residue q() const noexcept { return data_->q; }
  Residue characteristic() const noexcept { return data_->p; }
  /// Monic modulus, coefficients low-degree-first (length k+1).
  const std::vector<Residue>& modulus() const noexcept { return data_->modulus; }
  bool valid() const noexcept { return static_cast<bool>(data_); }

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) noexcept {
    if (a.data_ == b.data_) return true;
    if (!a.data_ || !b.data_) return false;
    return a.data_->p == b.data_->p && a.data_->modulus == b.data_->modulus;
  }

  std::vector<Residue> coefficients(Residue x) const {
    std::vector<Residue> c(k());
    for (auto& ci : c) {
      ci = x % p();
      x /= p();
    }
    return c;
  }

  Residue from_coefficients(std::span<const Residue> c) const {
    if (c.size() != k()) throw Error(ErrorKind::DomainError, "coefficient vector length must equal k");
    Residue x = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i] >= p()) throw Error(ErrorKind::DomainError, "coefficient out of range");
      x = x * p() + c[i];
    }
    return x;
  }

  Residue add(Residue a, Residue b) const noexcept {
    if (!data_->add_tab.empty()) return data_->add_tab[a * q() + b];
    if (k() == 1) return (a + b) % p();
    Residue out = 0, scale = 1;
    for (unsigned i = 0; i < k(); ++i) {
      out += ((a % p() + b % p()) % p()) * scale;
      a /= p();
      b /= p();
      scale *= p();
    }
    return out;
  }

  Residue neg(Residue a) const noexcept {
    Residue out = 0, scale = 1;
    for (unsigned i = 0; i < k(); ++i) {
      out += ((p() - a % p()) % p()) * scale;
      a /= p();
      scale *= p();
    }
    return out;
  }

  Residue sub(Residue a, Residue b) const noexcept { return add(a, neg(b)); }

  Residue mul(Residue a, Residue b) const noexcept {
    if (!data_->mul_tab.empty()) return data_->mul_tab[a * q() + b];
    return mul_slow(a, b);
  }

  /// Multiplicative inverse; throws ZeroInverse for 0.
  Residue inv(Residue a) const {
    if (a == 0) throw Error(ErrorKind::ZeroInverse, "inverse of zero");
    return data_->inv_tab[a];
  }

  Residue pow(Residue a, std::uint64_t e) const noexcept {
    Residue result = 1;
    while (e) {
      if (e & 1) result = mul(result, a);
      a = mul(a, a);
      e >>= 1;
    }
    return result;
  }

  /// The integer n embedded via n * 1, i.e. n mod p in the prime subfield.
  Residue from_integer(std::uint64_t n) const noexcept { return static_cast<Residue>(n % p()); }

  FieldElement element(Residue index) const;
  FieldElement zero() const;
  FieldElement one() const;

  std::string to_string() const {
    std::string s = "F_" + std::to_string(q()) + " mod ";
    bool first = true;
    for (std::size_t i = modulus().size(); i-- > 0;) {
      const Residue c = modulus()[i];
      if (c == 0) continue;
      if (!first) s += "+";
      first = false;
      if (c != 1 || i == 0) s += std::to_string(c);
      if (i >= 1) s += "x";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  friend FieldSpec make_field_with_modulus(Residue p, std::vector<Residue> modulus);

  explicit FieldSpec(std::shared_ptr<const detail::FieldData> data) : data_(std::move(data)) {}

  Residue mul_slow(Residue a, Residue b) const noexcept {
    const Residue pp = p();
    const unsigned kk = k();
    if (kk == 1) return static_cast<Residue>(std::uint64_t{a} * b % pp);
    std::vector<std::uint64_t> prod(2 * kk - 1, 0);
    std::vector<Residue> ca(kk), cb(kk);
    for (unsigned i = 0; i < kk; ++i) {
      ca[i] = a % pp;
      a /= pp;
      cb[i] = b % pp;
      b /= pp;
    }
    for (unsigned i = 0; i < kk; ++i)
      for (unsigned j = 0; j < kk; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{ca[i]} * cb[j]) % pp;
    const auto& f = modulus();
    for (std::size_t d = prod.size(); d-- > kk;) {
      const std::uint64_t lead = prod[d];
      if (lead == 0) continue;
      for (unsigned i = 0; i <= kk; ++i) {
        const std::size_t pos = d - kk + i;
        prod[pos] = (prod[pos] + pp - lead * f[i] % pp) % pp;
      }
    }
    Residue out = 0;
    for (std::size_t i = kk; i-- > 0;) out = out * pp + static_cast<Residue>(prod[i]);
    return out;
  }

  std::shared_ptr<const detail::FieldData> data_;
};

/// Builds F_{p^k} from an explicit monic irreducible modulus (coefficients low-degree-first).
inline FieldSpec make_field_with_modulus(Residue p, std::vector<Residue> modulus) {
  if (!detail::is_prime(p)) throw Error(ErrorKind::CompositeP, std::to_string(p) + " is not prime");
  if (modulus.size() < 2) throw Error(ErrorKind::DegreeZero, "modulus must have degree >= 1");
  if (modulus.back() != 1) throw Error(ErrorKind::DomainError, "modulus must be monic");
  for (auto c : modulus)
    if (c >= p) throw Error(ErrorKind::DomainError, "modulus coefficient out of range");
  const unsigned k = static_cast<unsigned>(modulus.size() - 1);
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxFieldOrder) throw Error(ErrorKind::ParameterRange, "field order exceeds 2^16");
  }
  if (!detail::is_irreducible(modulus, p)) throw Error(ErrorKind::DomainError, "modulus is reducible");

  auto data = std::make_shared<detail::FieldData>();
  data->p = p;
  data->k = k;
  data->q = static_cast<Residue>(q);
  data->modulus = std::move(modulus);
  FieldSpec untabled{data};

  // a^(q-2) = a^-1 in F_q^*.
  data->inv_tab.assign(q, 0);
  for (Residue a = 1; a < q; ++a) data->inv_tab[a] = untabled.pow(a, q - 2);
  if (q <= kTableCacheOrder) {
    std::vector<std::uint16_t> add_tab(q * q), mul_tab(q * q);
    for (Residue a = 0; a < q; ++a)
      for (Residue b = 0; b < q; ++b) {
        add_tab[a * q + b] = static_cast<std::uint16_t>(untabled.add(a, b));
        mul_tab[a * q + b] = static_cast<std::uint16_t>(untabled.mul_slow(a, b));
      }
    data->add_tab = std::move(add_tab);
    data->mul_tab = std::move(mul_tab);
  }
  return FieldSpec{std::shared_ptr<const detail::FieldData>(std::move(data))};
}

/// F_{p^k} with the lexicographically smallest monic irreducible modulus, comparing
/// coefficients from the constant term upward.
inline FieldSpec make_field(std::uint64_t p, std::int64_t k) {
  if (!detail::is_prime(p)) throw Error(ErrorKind::CompositeP, std::to_string(p) + " is not prime");
  if (k < 1) throw Error(ErrorKind::DegreeZero, "extension degree must be >= 1");
  if (p > kMaxFieldOrder) throw Error(ErrorKind::ParameterRange, "field order exceeds 2^16");
  std::uint64_t q = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxFieldOrder) throw Error(ErrorKind::ParameterRange, "field order exceeds 2^16");
  }
  const auto pr = static_cast<Residue>(p);
  const auto deg = static_cast<std::size_t>(k);
  // Lex order with c_0 most significant: enumerate c_0 in the outer digit.
  for (std::uint64_t code = 0; code < q; ++code) {
    detail::Poly f(deg + 1);
    std::uint64_t c = code;
    for (std::size_t i = deg; i-- > 0;) {
      f[i] = static_cast<Residue>(c % p);
      c /= p;
    }
    f[deg] = 1;
    if (deg == 1 || detail::is_irreducible(f, pr)) return make_field_with_modulus(pr, std::move(f));
  }
  throw Error(ErrorKind::DomainError, "no irreducible polynomial found");  // unreachable
}

/// (p, k) with q = p^k, or nullopt when q is not a prime power.
inline std::optional<std::pair<std::uint64_t, unsigned>> prime_power_decomposition(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  unsigned k = 0;
  while (q % p == 0) {
    q /= p;
    ++k;
  }
  if (q != 1) return std::nullopt;
  return std::pair{p, k};
}

/// The field of order q built by make_field; ParameterRange if q is not a prime power.
inline FieldSpec field_of_order(std::uint64_t q) {
  auto pk = prime_power_decomposition(q);
  if (!pk) throw Error(ErrorKind::ParameterRange, std::to_string(q) + " is not a prime power");
  return make_field(pk->first, pk->second);
}

/// A field value bound to its field; arithmetic checks that both operands share a field.
class FieldElement {
 public:
  FieldElement(FieldSpec field, Residue index) : field_(std::move(field)), value_(index) {
    if (value_ >= field_.q()) throw Error(ErrorKind::DomainError, "element index out of range");
  }

  Residue index() const noexcept { return value_; }
  const FieldSpec& field() const noexcept { return field_; }
  std::vector<Residue> coefficients() const { return field_.coefficients(value_); }
  bool is_zero() const noexcept { return value_ == 0; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.field_, a.field_.add(a.value_, b.value_)};
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.field_, a.field_.sub(a.value_, b.value_)};
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.field_, a.field_.mul(a.value_, b.value_)};
  }
  FieldElement operator-() const { return {field_, field_.neg(value_)}; }
  FieldElement inverse() const { return {field_, field_.inv(value_)}; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) noexcept {
    return a.value_ == b.value_ && a.field_ == b.field_;
  }

 private:
  static void check_same(const FieldElement& a, const FieldElement& b) {
    if (!(a.field_ == b.field_)) throw Error(ErrorKind::FieldMismatch, "operands from different fields");
  }

  FieldSpec field_;
  Residue value_;
};

inline FieldElement FieldSpec::element(Residue index) const { return {*this, index}; }
inline FieldElement FieldSpec::zero() const { return {*this, 0}; }
inline FieldElement FieldSpec::one() const { return {*this, 1}; }

enum class ArithOp { add, mul, inv, neg };

/// Unary ops (inv, neg) ignore `b`.
inline FieldElement field_arith(const FieldElement& a, const FieldElement& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::mul: return a * b;
    case ArithOp::inv: return a.inverse();
    case ArithOp::neg: return -a;
  }
  throw Error(ErrorKind::DomainError, "unknown op");
}

/// Dense row-major matrix over one field.
class FqMatrix {
 public:
  FqMatrix(FieldSpec field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

  FqMatrix(FieldSpec field, std::size_t rows, std::size_t cols, std::vector<Residue> entries)
      : field_(std::move(field)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) throw Error(ErrorKind::DomainError, "entry count != rows*cols");
    for (auto e : entries_)
      if (e >= field_.q()) throw Error(ErrorKind::DomainError, "entry outside field");
  }

  static FqMatrix identity(const FieldSpec& field, std::size_t n) {
    FqMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const FieldSpec& field() const noexcept { return field_; }
  Residue at(std::size_t r, std::size_t c) const { return entries_.at(r * cols_ + c); }
  void set(std::size_t r, std::size_t c, Residue v) { entries_.at(r * cols_ + c) = v; }
  std::span<const Residue> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }
  std::span<Residue> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }
  const std::vector<Residue>& entries() const noexcept { return entries_; }

 private:
  FieldSpec field_;
  std::size_t rows_, cols_;
  std::vector<Residue> entries_;
};

namespace detail {

/// In-place row reduction of a rows x cols row-major buffer; returns the rank.
/// Pivot for each column is the first nonzero entry at or below the current row.
inline std::size_t eliminate(const FieldSpec& f, std::span<Residue> a, std::size_t rows, std::size_t cols) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[rank * cols + j]);
    const Residue pinv = f.inv(a[rank * cols + c]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const Residue lead = a[r * cols + c];
      if (lead == 0) continue;
      const Residue factor = f.neg(f.mul(lead, pinv));
      for (std::size_t j = c; j < cols; ++j)
        a[r * cols + j] = f.add(a[r * cols + j], f.mul(factor, a[rank * cols + j]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

inline std::size_t matrix_rank(const FqMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  std::vector<Residue> work = m.entries();
  return detail::eliminate(m.field(), work, m.rows(), m.cols());
}

/// Dimension of {t : sum t_i v_i = 0}, i.e. #vectors - rank.
inline std::size_t nullspace_dim(const FieldSpec& field, std::span<const std::vector<Residue>> vectors) {
  if (vectors.empty()) return 0;
  const std::size_t n = vectors.front().size();
  std::vector<Residue> work;
  work.reserve(vectors.size() * n);
  for (const auto& v : vectors) {
    if (v.size() != n) throw Error(ErrorKind::AmbientMismatch, "vectors of differing length");
    for (auto x : v) {
      if (x >= field.q()) throw Error(ErrorKind::DomainError, "entry outside field");
      work.push_back(x);
    }
  }
  if (n == 0) return vectors.size();
  return vectors.size() - detail::eliminate(field, work, vectors.size(), n);
}

}  // namespace capbound
