#pragma once

// Command-line front end. Exit codes: 0 success, 1 usage or parameter error,
// 2 parity case not covered by the bound, 3 budget exhausted where exactness was required.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "capbound/capbound.hpp"
#include "capbound/verify.hpp"

namespace capbound::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kParity = 2, kBudget = 3 };

/// CAPBOUND_BUDGET if set and numeric, else `fallback`.
inline std::uint64_t default_budget(std::uint64_t fallback) {
  if (const char* env = std::getenv("CAPBOUND_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
    }
  }
  return fallback;
}

/// Accepts "3..8" or "2,3,5"; empty input yields an empty list.
inline std::vector<std::uint64_t> parse_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  if (text.empty()) return out;
  auto num = [&](const std::string& tok) -> std::uint64_t {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorKind::ParseError, "bad list element '" + tok + "'");
    return std::stoull(tok);
  };
  if (auto dots = text.find(".."); dots != std::string::npos) {
    const auto lo = num(text.substr(0, dots)), hi = num(text.substr(dots + 2));
    if (hi < lo) throw Error(ErrorKind::ParseError, "empty range " + text);
    for (auto v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(num(tok));
  return out;
}

inline std::uint64_t non_negative(std::int64_t v, const char* name) {
  if (v < 0) throw Error(ErrorKind::ParameterRange, std::string("--") + name + " must be non-negative");
  return static_cast<std::uint64_t>(v);
}

inline std::string fmt(double v, int precision) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << v;
  return os.str();
}

inline void print_bound_text(std::ostream& os, const BoundReport& r) {
  os << "n=" << r.n << " q=" << r.q << " m=" << r.m << "\n";
  os << "x0              " << fmt(*r.x0, 12) << "\n";
  os << "beta            " << fmt(*r.beta, 12) << "\n";
  os << "h_min           " << fmt(*r.h_min, 12) << "\n";
  os << "mu_upper        " << fmt(round_up(*r.mu_upper), 3) << "  (raw " << fmt(*r.mu_upper, 12) << ")\n";
  os << "alpha           " << fmt(r.alpha, 12) << "\n";
  os << "asymptotic_base " << fmt(r.asymptotic_base, 12) << "\n";
  os << "lambda_value    " << r.lambda_value->str() << "\n";
  os << "bound           M_" << r.m - 1 << "(n," << r.q << ") < " << r.formula() << " = "
     << fmt(*r.theorem_bound, 6) << " at n=" << r.n << "\n";
}

inline void print_table_text(std::ostream& os, const std::vector<BoundReport>& rows,
                             const std::vector<std::uint64_t>& ms, const std::vector<std::uint64_t>& qs,
                             TableStyle style) {
  if (style == TableStyle::asymptotic) {
    os << "m   alpha   base    mu_m(q) < 1 - log_q(base)\n";
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const auto& r = rows[i * qs.size()];
      os << std::left << std::setw(4) << r.m << fmt(r.alpha, 3) << "   " << fmt(round_down(r.asymptotic_base), 3)
         << "   1 - log_q(" << fmt(round_down(r.asymptotic_base), 3) << ")\n";
    }
    return;
  }
  os << "m\\q";
  for (auto q : qs) os << std::right << std::setw(7) << q;
  os << "\n";
  std::size_t i = 0;
  for (auto m : ms) {
    os << std::left << std::setw(3) << m;
    for (std::size_t j = 0; j < qs.size(); ++j, ++i) {
      const auto& r = rows[i];
      os << std::right << std::setw(7) << (r.mu_upper ? fmt(round_up(*r.mu_upper), 3) : std::string("N/A"));
    }
    os << "\n";
  }
}

/// Parses argv and runs one subcommand; all output goes to `out` (or --output) and `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounds and verification for m-general sets in AG(n,q)", "capbound"};
  app.require_subcommand(1, 1);

  std::string format = "text";
  std::string output_path;
  const auto add_io = [&](CLI::App* sub, std::vector<std::string> formats) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember(std::move(formats)));
    sub->add_option("--output", output_path, "Write to this file instead of standard output");
  };

  std::int64_t n = -1, q = -1, m = -1;
  auto* bound = app.add_subcommand("bound", "Upper bound on the largest m-general set in AG(n,q)");
  bound->add_option("--n", n, "Dimension")->required();
  bound->add_option("--q", q, "Field order")->required();
  bound->add_option("--m", m, "Generality")->required();
  add_io(bound, {"json", "csv", "text"});

  std::string ms_text = "3..8", qs_text = "2,3,4,5,7,8,9,11", style_text = "exact";
  std::optional<std::int64_t> table_n;
  auto* table = app.add_subcommand("table", "Growth-rate bounds over a grid of (m,q)");
  table->add_option("--ms", ms_text, "m values: a..b or comma list");
  table->add_option("--qs", qs_text, "q values: a..b or comma list");
  table->add_option("--style", style_text, "exact or asymptotic")->check(CLI::IsMember({"exact", "asymptotic"}));
  table->add_option("--n", table_n, "Also evaluate the bound at this n");
  add_io(table, {"json", "csv", "text"});

  std::string suite;
  std::optional<std::int64_t> verify_budget;
  auto* verify_cmd = app.add_subcommand("verify", "Run an invariant suite");
  verify_cmd->add_option("--suite", suite, "fields|indicators|char2|lambda|analysis|all")->required();
  verify_cmd->add_option("--budget", verify_budget, "Tuple budget for exhaustive checks");
  add_io(verify_cmd, {"json", "text"});

  bool use_exact = false, use_greedy = false;
  std::int64_t seed = 1, restarts = 50;
  std::optional<std::int64_t> search_budget;
  std::string witness_path;
  auto* search = app.add_subcommand("search", "Largest m-general set found in AG(n,q)");
  search->add_option("--n", n, "Dimension")->required();
  search->add_option("--q", q, "Field order")->required();
  search->add_option("--m", m, "Generality")->required();
  auto* exact_flag = search->add_flag("--exact", use_exact, "Exhaustive backtracking (default)");
  auto* greedy_flag = search->add_flag("--greedy", use_greedy, "Randomized greedy insertion");
  exact_flag->excludes(greedy_flag);
  search->add_option("--seed", seed, "Greedy master seed");
  search->add_option("--restarts", restarts, "Greedy restarts");
  search->add_option("--budget", search_budget, "Node budget for exact search");
  search->add_option("--witness", witness_path, "Write the witness point set to this file");
  add_io(search, {"json", "text"});

  std::int64_t alpha = -1, beta = -1, gamma = -1;
  auto* lambda = app.add_subcommand("lambda", "Count alpha-tuples over {0..beta} with sum <= gamma");
  lambda->add_option("--alpha", alpha, "Tuple length")->required();
  lambda->add_option("--beta", beta, "Coordinate cap")->required();
  lambda->add_option("--gamma", gamma, "Sum cap")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  std::ofstream file;
  if (!output_path.empty()) {
    file.open(output_path);
    if (!file) {
      err << "error: cannot open " << output_path << "\n";
      return kUsage;
    }
  }
  std::ostream& os = output_path.empty() ? out : file;

  try {
    if (bound->parsed()) {
      const auto r = theorem_bound(non_negative(n, "n"), non_negative(q, "q"), non_negative(m, "m"));
      if (format == "json") os << r.to_json().dump() << "\n";
      else if (format == "csv") os << BoundReport::csv_header() << "\n" << r.csv_row() << "\n";
      else print_bound_text(os, r);
      return kOk;
    }

    if (table->parsed()) {
      const auto ms = parse_list(ms_text), qs = parse_list(qs_text);
      if (ms.empty() || qs.empty()) throw Error(ErrorKind::ParseError, "--ms and --qs must be non-empty");
      for (auto mv : ms)
        if (mv < 3) throw Error(ErrorKind::ParameterRange, "m values must be >= 3");
      for (auto qv : qs)
        if (!prime_power_decomposition(qv)) throw Error(ErrorKind::ParameterRange, std::to_string(qv) + " is not a prime power");
      const auto style = style_text == "exact" ? TableStyle::exact : TableStyle::asymptotic;
      std::optional<std::uint64_t> at_n;
      if (table_n) at_n = non_negative(*table_n, "n");
      const auto rows = generate_table(ms, qs, style, at_n);
      if (format == "json") {
        nlohmann::json j;
        j["schema"] = 1;
        j["style"] = style_text;
        j["rows"] = nlohmann::json::array();
        for (const auto& r : rows) j["rows"].push_back(r.to_json());
        os << j.dump() << "\n";
      } else if (format == "csv") {
        os << BoundReport::csv_header() << "\n";
        for (const auto& r : rows) os << r.csv_row() << "\n";
      } else {
        print_table_text(os, rows, ms, qs, style);
      }
      return kOk;
    }

    if (verify_cmd->parsed()) {
      const std::uint64_t budget =
          verify_budget ? non_negative(*verify_budget, "budget") : default_budget(kTupleBudget);
      const auto verdicts = verify::run_suite(suite, budget);
      bool all_pass = true;
      for (const auto& v : verdicts) {
        all_pass = all_pass && v.pass;
        if (format == "json" || !v.pass) os << v.to_json().dump() << "\n";
        else os << "PASS " << v.check << " " << v.params.dump() << "\n";
      }
      if (format != "json")
        os << "suite " << suite << ": " << verdicts.size() << " checks, " << (all_pass ? "all pass" : "FAILURES")
           << "\n";
      return all_pass ? kOk : kUsage;
    }

    if (search->parsed()) {
      const auto nn = non_negative(n, "n"), qq = non_negative(q, "q"), mm = non_negative(m, "m");
      const std::uint64_t budget =
          search_budget ? non_negative(*search_budget, "budget") : default_budget(kDefaultSearchBudget);
      const auto r = use_greedy ? greedy_m_general(nn, qq, mm, non_negative(seed, "seed"), non_negative(restarts, "restarts"))
                                : max_m_general_exact(nn, qq, mm, budget);
      if (!witness_path.empty()) {
        std::ofstream w(witness_path);
        if (!w) throw Error(ErrorKind::ParameterRange, "cannot open " + witness_path);
        write_point_set(w, r.witness);
      }
      if (format == "json") {
        os << r.to_json().dump() << "\n";
      } else {
        os << "method " << r.method << "  n=" << nn << " q=" << qq << " m=" << mm << "\n";
        os << "best_size " << r.best_size << (r.exact ? "  (exact maximum)" : "  (lower bound)") << "\n";
        os << "nodes_visited " << r.nodes_visited << "\n";
        os << "witness\n" << to_text(r.witness);
      }
      return kOk;
    }

    if (lambda->parsed()) {
      const LambdaQuery query{non_negative(alpha, "alpha"), non_negative(beta, "beta"), non_negative(gamma, "gamma")};
      os << lambda_exact(query).str() << "\n";
      return kOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::ParityUnsupported:
        err << "the bound covers q odd, or m and q both even; q even with m odd is excluded\n";
        return kParity;
      case ErrorKind::BudgetExceeded: return kBudget;
      default: return kUsage;
    }
  }
  return kUsage;
}

}  // namespace capbound::cli
