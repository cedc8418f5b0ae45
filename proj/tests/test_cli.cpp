#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "golden_cases.hpp"
#include "poolhire/cli.hpp"

namespace fs = std::filesystem;
using poolhire::cli_main;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

// Commands run from the source tree so scenario paths in reports are
// relative and identical on every machine.
class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    saved_ = fs::current_path();
    fs::current_path(fs::path(POOLHIRE_SCENARIO_DIR).parent_path());
    scratch_ = fs::temp_directory_path() / ("poolhire_cli_" + std::to_string(::getpid()));
    fs::create_directories(scratch_);
  }
  void TearDown() override {
    fs::current_path(saved_);
    fs::remove_all(scratch_);
  }

  static Result call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli_main(args, out, err);
    return {code, out.str(), err.str()};
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
  }

  fs::path tmp(const std::string& name) const { return scratch_ / name; }

  fs::path saved_;
  fs::path scratch_;
};

}  // namespace

TEST_F(Cli, GoldenReports) {
  const bool update = std::getenv("POOLHIRE_UPDATE_GOLDEN") != nullptr;
  for (const auto& g : golden_cases()) {
    const auto r = call(g.args);
    EXPECT_EQ(r.code, g.code) << g.name << ": " << r.err;
    const auto path = fs::path(POOLHIRE_GOLDEN_DIR) / (g.name + ".json");
    if (update) {
      fs::create_directories(path.parent_path());
      std::ofstream(path, std::ios::binary) << r.out;
      continue;
    }
    ASSERT_TRUE(fs::exists(path)) << path << " missing; rerun with POOLHIRE_UPDATE_GOLDEN=1";
    EXPECT_EQ(r.out, slurp(path)) << g.name;
  }
}

TEST_F(Cli, ReportsAreByteStable) {
  for (const auto& g : golden_cases()) EXPECT_EQ(call(g.args).out, call(g.args).out) << g.name;
}

TEST_F(Cli, EveryGoldenReplays) {
  for (const auto& g : golden_cases()) {
    auto args = g.args;
    const auto report = tmp(g.name + ".json");
    args.insert(args.end(), {"--output", report.string()});
    EXPECT_EQ(call(args).code, g.code);
    const auto r = call({"--replay", report.string()});
    EXPECT_EQ(r.code, 0) << g.name << ": " << r.err;
  }
}

TEST_F(Cli, ReplayDetectsDivergence) {
  const auto report = tmp("r.json");
  call({"run", "scenarios/example1.json", "--output", report.string()});
  auto text = slurp(report);
  // Tamper with a recorded hire.
  const auto at = text.find("\"w5\"", text.find("\"hired\""));
  ASSERT_NE(at, std::string::npos);
  text.replace(at, 4, "\"w4\"");
  std::ofstream(report, std::ios::binary) << text;
  EXPECT_EQ(call({"--replay", report.string()}).code, 1);

  // Editing the embedded scenario breaks its digest.
  call({"run", "scenarios/example1.json", "--output", report.string()});
  text = slurp(report);
  const auto score = text.find("\"score\": 100");
  ASSERT_NE(score, std::string::npos);
  text.replace(score, 12, "\"score\": 101");
  std::ofstream(report, std::ios::binary) << text;
  EXPECT_EQ(call({"--replay", report.string()}).code, 1);

  EXPECT_EQ(call({"--replay", tmp("absent.json").string()}).code, 2);
  std::ofstream(tmp("junk.json")) << "not json";
  EXPECT_EQ(call({"--replay", tmp("junk.json").string()}).code, 2);
}

TEST_F(Cli, ExitCodesForBadInput) {
  EXPECT_EQ(call({"run", "missing.json"}).code, 2);
  EXPECT_EQ(call({"manipulate", "scenarios/example1.json", "--target", "w9"}).code, 2);
  EXPECT_EQ(call({"check", "scenarios/example1.json", "--property", "nonsense"}).code, 2);
  EXPECT_EQ(call({"check", "scenarios/example2.json", "--property", "aggregation-independence", "--budget", "3"}).code, 2);
  EXPECT_EQ(call({"run", "scenarios/example4_nsw.json", "--rule", "sa"}).code, 0);
  EXPECT_EQ(call({"run", "scenarios/example1.json", "--rule", "nsw"}).code, 2);
  EXPECT_EQ(call({"oracle", "--mode", "equivalence", "--corpus", "weird"}).code, 2);
  EXPECT_EQ(call({}).code, 2);
  const auto r = call({"run", "missing.json"});
  EXPECT_NE(r.err.find("missing.json"), std::string::npos);
}

TEST_F(Cli, CsvLedger) {
  const auto csv = tmp("ledger.csv");
  EXPECT_EQ(call({"run", "scenarios/example1.json", "--csv", csv.string(), "--output", tmp("r.json").string()}).code, 0);
  EXPECT_EQ(slurp(csv),
            "round,phase,worker,score,minority\n"
            "1,reserved,w1,100,1\n"
            "1,open,w2,90,1\n"
            "2,reserved,w5,20,1\n"
            "2,open,w3,80,0\n");
  call({"run", "scenarios/example4_nsw.json", "--csv", csv.string(), "--output", tmp("r.json").string()});
  EXPECT_EQ(slurp(csv), "round,phase,worker,score,minority\n1,female,w1,100,0\n1,male,w3,80,0\n");
}

TEST_F(Cli, EnvironmentFallbackLosesToFlags) {
  ::setenv("POOLHIRE_RULE", "sa", 1);
  const auto env_run = call({"run", "scenarios/example1.json"});
  const auto flag_run = call({"run", "scenarios/example1.json", "--rule", "sm"});
  ::unsetenv("POOLHIRE_RULE");
  EXPECT_NE(env_run.out.find("\"rule\": \"SA\""), std::string::npos);
  EXPECT_NE(flag_run.out.find("\"rule\": \"SM\""), std::string::npos);
}

TEST_F(Cli, OracleEquivalenceStream) {
  const auto r = call({"oracle", "--corpus", "default", "--mode", "equivalence", "--rule", "sa", "--trials", "50"});
  EXPECT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  int count = 0;
  std::string last;
  while (std::getline(lines, line)) {
    ++count;
    last = line;
  }
  EXPECT_EQ(count, 51);
  EXPECT_NE(last.find("\"failures\":0"), std::string::npos);
  EXPECT_NE(last.find("\"seed\":1"), std::string::npos);
  const auto sm = call({"oracle", "--corpus", "default", "--mode", "equivalence", "--rule", "sm", "--trials", "50"});
  EXPECT_EQ(sm.code, 1);
}

TEST_F(Cli, PluralChecks) {
  EXPECT_EQ(call({"plural", "scenarios/example6_plural.json", "--check", "common-top"}).code, 0);
  EXPECT_EQ(call({"plural", "scenarios/example6_plural.json", "--check", "permutation"}).code, 0);
  EXPECT_EQ(call({"plural", "scenarios/example6_plural.json", "--check", "aggregation", "--institution", "i2", "--q", "3"}).code, 0);
  EXPECT_EQ(call({"plural", "scenarios/example6_plural.json", "--check", "aggregation", "--institution", "i9", "--q", "3"}).code, 2);
}
