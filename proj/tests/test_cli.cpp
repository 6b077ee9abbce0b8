#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "capbound_cli.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "capbound");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = capbound::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, BoundJson) {
  const auto r = run({"bound", "--n", "4", "--q", "3", "--m", "3", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["formula"], "6 + 3(2.756)^n");
  EXPECT_NEAR(j["theorem_bound"].get<double>(), 178.85, 0.01);
  EXPECT_EQ(r.out, run({"bound", "--n", "4", "--q", "3", "--m", "3", "--format", "json"}).out);
}

TEST(Cli, BoundTextAndCsv) {
  const auto t = run({"bound", "--n", "3", "--q", "2", "--m", "4"});
  ASSERT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("8 + 4(1.755)^n"), std::string::npos);
  const auto c = run({"bound", "--n", "3", "--q", "2", "--m", "4", "--format", "csv"});
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(c.out.substr(0, c.out.find('\n')), capbound::BoundReport::csv_header());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"bound", "--n", "4", "--q", "2", "--m", "3"}).code, 2);
  EXPECT_EQ(run({"bound", "--n", "4", "--q", "6", "--m", "4"}).code, 1);
  EXPECT_EQ(run({"bound", "--n", "4", "--q", "3"}).code, 1);
  EXPECT_EQ(run({"bound", "--n", "-1", "--q", "3", "--m", "3"}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"table", "--ms", ""}).code, 1);
  EXPECT_EQ(run({"verify", "--suite", "nonsense"}).code, 1);
  EXPECT_EQ(run({"search", "--n", "20", "--q", "3", "--m", "3"}).code, 3);
}

TEST(Cli, TableText) {
  const auto r = run({"table", "--ms", "3..4", "--qs", "2,3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("N/A"), std::string::npos);
  EXPECT_NE(r.out.find("0.923"), std::string::npos);
  const auto a = run({"table", "--style", "asymptotic", "--ms", "3..8", "--qs", "101"});
  ASSERT_EQ(a.code, 0);
  EXPECT_NE(a.out.find("1.188"), std::string::npos);
  EXPECT_NE(a.out.find("2.944"), std::string::npos);
}

TEST(Cli, TableJsonWithN) {
  const auto r = run({"table", "--ms", "4", "--qs", "3,5", "--n", "6", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["rows"].size(), 2u);
  EXPECT_FALSE(j["rows"][0]["theorem_bound"].is_null());
}

TEST(Cli, SearchWithWitnessFile) {
  const auto path = std::filesystem::temp_directory_path() / "capbound_cli_witness.txt";
  const auto r = run({"search", "--n", "2", "--q", "3", "--m", "3", "--format", "json", "--witness", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["best_size"], 4);
  EXPECT_TRUE(j["exact"].get<bool>());
  std::ifstream in(path);
  const auto s = capbound::read_point_set(in);
  EXPECT_EQ(s.size(), 4u);
  EXPECT_TRUE(capbound::is_m_general(s, 3));
  std::filesystem::remove(path);
}

TEST(Cli, SearchBudgetLimitedStillSucceeds) {
  const auto r = run({"search", "--n", "3", "--q", "3", "--m", "3", "--budget", "10", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_FALSE(nlohmann::json::parse(r.out)["exact"].get<bool>());
}

TEST(Cli, GreedyIsSeedDeterministic) {
  const std::vector<std::string> args{"search", "--n", "3", "--q", "3", "--m", "3", "--greedy", "--seed", "9",
                                      "--format", "json"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(run({"search", "--n", "2", "--q", "3", "--m", "3", "--greedy", "--exact"}).code, 1);
}

TEST(Cli, Lambda) {
  const auto r = run({"lambda", "--alpha", "2", "--beta", "2", "--gamma", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "6\n");
}

TEST(Cli, VerifyLambdaSuite) {
  const auto r = run({"verify", "--suite", "lambda", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.out;
  std::istringstream lines(r.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    EXPECT_EQ(nlohmann::json::parse(line)["result"], "pass");
    ++count;
  }
  EXPECT_GT(count, 0);
}

TEST(Cli, OutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "capbound_cli_out.json";
  const auto r = run({"bound", "--n", "3", "--q", "3", "--m", "3", "--format", "json", "--output", path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  EXPECT_EQ(nlohmann::json::parse(in)["m"], 3);
  std::filesystem::remove(path);
}
