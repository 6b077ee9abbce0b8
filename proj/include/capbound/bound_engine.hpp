#pragma once

// Upper bounds on the size of m-general sets in AG(n,q).
//
// The bound is 2m + m * (min_{t in (0,1)} h_q(t))^n with
//   h_q(t) = t^(-(q-1)/m) * (1 + t + ... + t^(q-1)).
// h_q is convex on (0,1); its critical point is the root of
//   r_q(x) = (q+m-1)x - (q-1) - x^q ((q-1)(m-1)(1-x) + m),
// which changes sign from - to + on [(q-1)/(q+m-1), 1).

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "capbound/error.hpp"
#include "capbound/finite_field.hpp"
#include "capbound/lambda_counting.hpp"

namespace capbound {

inline constexpr double kDefaultRootTol = 1e-12;

/// t^(-(q-1)/m) * sum_{i<q} t^i.
inline double h_q(std::uint64_t m, std::uint64_t q, double t) {
  if (!(t > 0.0 && t < 1.0)) throw Error(ErrorKind::DomainError, "t must lie in (0,1)");
  if (m == 0) throw Error(ErrorKind::ParameterRange, "m must be positive");
  const double s = static_cast<double>(q - 1) / static_cast<double>(m);
  return std::pow(t, -s) * detail::geometric_sum(t, q);
}

inline double r_q(std::uint64_t m, std::uint64_t q, double x) {
  const double qd = static_cast<double>(q), md = static_cast<double>(m);
  return (qd + md - 1) * x - (qd - 1) - std::pow(x, qd) * ((qd - 1) * (md - 1) * (1 - x) + md);
}

namespace detail {

inline double r_q_derivative(std::uint64_t m, std::uint64_t q, double x) {
  const double qd = static_cast<double>(q), md = static_cast<double>(m);
  const double c = (qd - 1) * (md - 1);
  return (qd + md - 1) - qd * std::pow(x, qd - 1) * (c * (1 - x) + md) + std::pow(x, qd) * c;
}

inline void check_m_q(std::uint64_t m, std::uint64_t q) {
  if (m < 3) throw Error(ErrorKind::ParameterRange, "m must be >= 3");
  if (!prime_power_decomposition(q)) throw Error(ErrorKind::ParameterRange, std::to_string(q) + " is not a prime power");
}

}  // namespace detail

inline bool parity_supported(std::uint64_t m, std::uint64_t q) noexcept { return q % 2 == 1 || m % 2 == 0; }

struct Minimum {
  double x0 = 0;
  double h_min = 0;
};

/// Lower endpoint of the bracket holding the critical point.
inline double bracket_low(std::uint64_t m, std::uint64_t q) {
  return static_cast<double>(q - 1) / static_cast<double>(q + m - 1);
}

/// Upper endpoint 1 - delta: delta starts at 1e-6 and is halved until r_q is positive there.
inline std::optional<double> bracket_high(std::uint64_t m, std::uint64_t q) {
  const double lo = bracket_low(m, q);
  double delta = 1e-6;
  for (int attempt = 0; attempt < 40; ++attempt, delta /= 2) {
    const double hi = 1.0 - delta;
    if (hi <= lo) break;
    if (r_q(m, q, hi) > 0) return hi;
  }
  return std::nullopt;
}

/// Bisection on r_q over the sign bracket, then two Newton polishing steps kept inside the bracket.
inline Minimum minimize_h(std::uint64_t m, std::uint64_t q, double tol = kDefaultRootTol) {
  detail::check_m_q(m, q);
  if (!(tol > 0)) throw Error(ErrorKind::DomainError, "tol must be positive");
  double lo = bracket_low(m, q);
  const auto top = bracket_high(m, q);
  if (!(r_q(m, q, lo) < 0) || !top)
    throw Error(ErrorKind::BracketFailure,
                "r_q has no (-,+) bracket for m=" + std::to_string(m) + " q=" + std::to_string(q));
  double hi = *top;
  const double bracket_lo = lo, bracket_hi = hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (r_q(m, q, mid) < 0 ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int step = 0; step < 2; ++step) {
    const double d = detail::r_q_derivative(m, q, x);
    if (d == 0) break;
    const double next = x - r_q(m, q, x) / d;
    if (!(next > bracket_lo && next < bracket_hi)) break;
    if (std::abs(r_q(m, q, next)) > std::abs(r_q(m, q, x))) break;
    x = next;
  }
  return {x, h_q(m, q, x)};
}

/// log_q of the minimised base; the exponent of q in the growth-rate bound.
inline double mu_upper(std::uint64_t m, std::uint64_t q) {
  detail::check_m_q(m, q);
  if (!parity_supported(m, q))
    throw Error(ErrorKind::ParityUnsupported, "q even and m odd is not covered");
  return std::log(minimize_h(m, q).h_min) / std::log(static_cast<double>(q));
}

/// f(x) = x - (m^2 - m x + x) / e^(m - x), whose root in (0,1) is alpha.
inline double alpha_residual(std::uint64_t m, double x) {
  const double md = static_cast<double>(m);
  return x - (md * md - md * x + x) * std::exp(x - md);
}

inline double alpha_residual_derivative(std::uint64_t m, double x) {
  const double md = static_cast<double>(m);
  return 1.0 - std::exp(x - md) * (md * md - md * x + x + 1 - md);
}

inline double solve_alpha(std::uint64_t m, double tol = 1e-14) {
  if (m < 3) throw Error(ErrorKind::ParameterRange, "m must be >= 3");
  double lo = 0.0, hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (alpha_residual(m, mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// (m^2 - alpha m + alpha) / (m e^(1 - alpha/m)); for large q the bound behaves like 1 - log_q of this.
inline double asymptotic_base(std::uint64_t m) {
  const double a = solve_alpha(m);
  const double md = static_cast<double>(m);
  return (md * md - a * md + a) / (md * std::exp(1.0 - a / md));
}

/// Rounds up to `places` decimals; displayed bounds never understate the computed value.
inline double round_up(double v, int places = 3) {
  const double scale = std::pow(10.0, places);
  return std::ceil(v * scale - 1e-9) / scale;
}

/// Rounds down to `places` decimals; used for bases, where a smaller base means a weaker bound.
inline double round_down(double v, int places = 3) {
  const double scale = std::pow(10.0, places);
  return std::floor(v * scale + 1e-9) / scale;
}

/// %.12g round trip, so JSON carries 12 significant digits.
inline double round_sig12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

struct BoundReport {
  std::uint64_t n = 0, q = 0, m = 0;
  bool parity_supported = false;
  std::optional<double> x0;
  std::optional<double> beta;  // x0 (q+m-1) - q + 1
  std::optional<double> h_min;
  std::optional<double> theorem_bound;
  std::optional<double> mu_upper;
  double alpha = 0;
  double asymptotic_base = 0;
  std::optional<BigInt> lambda_value;  // Lambda(n, q-1, floor((q-1)n/m))

  /// e.g. "6 + 3(2.756)^n"; empty when the bound is withheld.
  std::string formula() const {
    if (!h_min) return {};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%llu + %llu(%.3f)^n", static_cast<unsigned long long>(2 * m),
                  static_cast<unsigned long long>(m), round_up(*h_min));
    return buf;
  }

  nlohmann::json to_json() const {
    auto num = [](const std::optional<double>& v) -> nlohmann::json {
      return v ? nlohmann::json(round_sig12(*v)) : nlohmann::json(nullptr);
    };
    nlohmann::json j;
    j["schema"] = 1;
    j["n"] = n;
    j["q"] = q;
    j["m"] = m;
    j["x0"] = num(x0);
    j["beta"] = num(beta);
    j["h_min"] = num(h_min);
    j["theorem_bound"] = num(theorem_bound);
    j["mu_upper"] = num(mu_upper);
    j["mu_upper_display"] = mu_upper ? nlohmann::json(round_up(*mu_upper)) : nlohmann::json(nullptr);
    j["alpha"] = round_sig12(alpha);
    j["asymptotic_base"] = round_sig12(asymptotic_base);
    j["lambda_value"] = lambda_value ? nlohmann::json(lambda_value->str()) : nlohmann::json(nullptr);
    j["parity_supported"] = parity_supported;
    if (h_min && n > 0) j["formula"] = formula();
    return j;
  }

  static std::string csv_header() {
    return "n,q,m,x0,h_min,theorem_bound,mu_upper,alpha,asymptotic_base,lambda_value,parity_supported";
  }

  std::string csv_row() const {
    auto num = [](const std::optional<double>& v) -> std::string {
      if (!v) return "";
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", *v);
      return buf;
    };
    return std::to_string(n) + "," + std::to_string(q) + "," + std::to_string(m) + "," + num(x0) + "," +
           num(h_min) + "," + num(theorem_bound) + "," + num(mu_upper) + "," + num(alpha) + "," +
           num(asymptotic_base) + "," + (lambda_value ? lambda_value->str() : std::string()) + "," +
           (parity_supported ? "true" : "false");
  }
};

namespace detail {

/// Fills everything that does not depend on n. Cells outside the parity condition keep
/// only alpha and the asymptotic base.
inline BoundReport base_report(std::uint64_t q, std::uint64_t m) {
  check_m_q(m, q);
  BoundReport r;
  r.q = q;
  r.m = m;
  r.parity_supported = parity_supported(m, q);
  r.alpha = solve_alpha(m);
  r.asymptotic_base = asymptotic_base(m);
  if (r.parity_supported) {
    const auto mn = minimize_h(m, q);
    r.x0 = mn.x0;
    r.beta = mn.x0 * static_cast<double>(q + m - 1) - static_cast<double>(q) + 1;
    r.h_min = mn.h_min;
    r.mu_upper = std::log(mn.h_min) / std::log(static_cast<double>(q));
  }
  return r;
}

inline void attach_n(BoundReport& r, std::uint64_t n) {
  r.n = n;
  r.lambda_value = lambda_exact({n, r.q - 1, (r.q - 1) * n / r.m});
  if (!r.h_min) return;
  const double md = static_cast<double>(r.m);
  const double analytic = md * std::pow(*r.h_min, static_cast<double>(n));
  r.theorem_bound = 2 * md + analytic;
  const double exact = md * r.lambda_value->convert_to<double>();
  if (!(analytic >= exact * (1 - 1e-9)))
    throw std::logic_error("analytic rank bound fell below the exact monomial count");
}

}  // namespace detail

/// Full report for one (n,q,m); throws ParityUnsupported for q even and m odd.
inline BoundReport theorem_bound(std::uint64_t n, std::uint64_t q, std::uint64_t m) {
  if (m < 3 || m > n + 2) throw Error(ErrorKind::ParameterRange, "need 3 <= m <= n+2");
  detail::check_m_q(m, q);
  if (!parity_supported(m, q))
    throw Error(ErrorKind::ParityUnsupported, "q even and m odd is not covered by the bound");
  auto r = detail::base_report(q, m);
  detail::attach_n(r, n);
  return r;
}

enum class TableStyle { exact, asymptotic };

/// One report per (m,q), m outer and q inner. Unsupported-parity cells are flagged rather
/// than raising. With `n` set, each supported cell also carries the bound for that n.
inline std::vector<BoundReport> generate_table(const std::vector<std::uint64_t>& ms,
                                               const std::vector<std::uint64_t>& qs, TableStyle style,
                                               std::optional<std::uint64_t> n = std::nullopt) {
  std::vector<BoundReport> rows;
  rows.reserve(ms.size() * qs.size());
  for (auto m : ms) {
    for (auto q : qs) {
      auto r = detail::base_report(q, m);
      if (style == TableStyle::asymptotic) {
        r.x0.reset();
        r.beta.reset();
        r.h_min.reset();
        r.mu_upper.reset();
        if (r.parity_supported)
          r.mu_upper = 1.0 - std::log(r.asymptotic_base) / std::log(static_cast<double>(q));
      } else if (n && m <= *n + 2) {
        detail::attach_n(r, *n);
      }
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

}  // namespace capbound
