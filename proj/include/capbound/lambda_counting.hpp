#pragma once

// Lambda(alpha, beta, gamma): alpha-tuples over {0..beta} with sum <= gamma.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "capbound/error.hpp"

namespace capbound {

using BigInt = boost::multiprecision::cpp_int;

struct LambdaQuery {
  std::uint64_t alpha = 1;  // tuple length
  std::uint64_t beta = 0;   // per-coordinate cap
  std::uint64_t gamma = 0;  // sum cap
};

/// Exact count: sum of the first gamma+1 coefficients of ((1 - x^(beta+1)) / (1 - x))^alpha.
/// Convolves one factor at a time, truncated at degree min(gamma, alpha*beta).
inline BigInt lambda_exact(const LambdaQuery& query) {
  if (query.alpha < 1) throw Error(ErrorKind::ParameterRange, "alpha must be >= 1");
  const std::uint64_t top = std::min<std::uint64_t>(query.gamma, query.alpha * query.beta);
  std::vector<BigInt> coeffs(top + 1, 0), next(top + 1);
  coeffs[0] = 1;
  for (std::uint64_t factor = 0; factor < query.alpha; ++factor) {
    // Multiplying by 1 + x + ... + x^beta is a sliding-window sum over the old coefficients.
    BigInt window = 0;
    for (std::uint64_t d = 0; d <= top; ++d) {
      window += coeffs[d];
      if (d > query.beta) window -= coeffs[d - query.beta - 1];
      next[d] = window;
    }
    std::swap(coeffs, next);
  }
  BigInt total = 0;
  for (const auto& c : coeffs) total += c;
  return total;
}

namespace detail {

/// 1 + t + ... + t^(terms-1), summed explicitly so it stays accurate as t -> 1.
inline double geometric_sum(double t, std::uint64_t terms) {
  double sum = 0.0, power = 1.0;
  for (std::uint64_t i = 0; i < terms; ++i) {
    sum += power;
    power *= t;
  }
  return sum;
}

}  // namespace detail

/// t^(-gamma) * (sum_{i<=beta} t^i)^alpha, an upper bound on Lambda for every t in (0,1).
inline double saddle_bound(const LambdaQuery& query, double t) {
  if (!(t > 0.0 && t < 1.0)) throw Error(ErrorKind::DomainError, "t must lie in (0,1)");
  const double log_val = -static_cast<double>(query.gamma) * std::log(t) +
                         static_cast<double>(query.alpha) * std::log(detail::geometric_sum(t, query.beta + 1));
  return std::exp(log_val);
}

/// m * Lambda(n, q-1, floor((q-1)n/m)): the monomial-counting bound on the rank of G_m^S.
inline BigInt g_rank_upper_bound(std::uint64_t n, std::uint64_t q, std::uint64_t m) {
  if (m < 3) throw Error(ErrorKind::ParameterRange, "m must be >= 3");
  if (n < 1) throw Error(ErrorKind::ParameterRange, "n must be >= 1");
  if (q < 2) throw Error(ErrorKind::ParameterRange, "q must be >= 2");
  return BigInt(m) * lambda_exact({n, q - 1, (q - 1) * n / m});
}

}  // namespace capbound
