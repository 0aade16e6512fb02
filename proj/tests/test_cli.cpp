#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using namespace curvebound::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result invoke(const RunConfig& c) {
  std::ostringstream out;
  std::ostringstream err;
  const int s = run(c, out, err);
  return {s, out.str(), err.str()};
}

RunConfig genus8_config(const std::string& command) {
  RunConfig c;
  c.command = command;
  c.q = 4;
  c.g = 8;
  c.prescribed = {{1, 24}};
  c.bounds = fs::path(CURVEBOUND_TEST_BOUNDS);
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("curvebound_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name())) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

size_t lines(const std::string& s) { return static_cast<size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, PrimePowers) {
  for (long q : {2L, 3L, 4L, 8L, 9L, 25L, 27L, 49L, 1024L}) EXPECT_TRUE(is_prime_power(q)) << q;
  for (long q : {0L, 1L, 6L, 10L, 12L, 36L, 100L}) EXPECT_FALSE(is_prime_power(q)) << q;
}

TEST(Cli, CountCurve) {
  RunConfig c;
  c.command = "count-curve";
  const Result r = invoke(c);
  ASSERT_EQ(r.status, kSuccess) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "N_1 = 22, genus = 8");
  EXPECT_NE(r.out.find("div(f) = 6P0 + P1 + P2 - 4Q1 - 4Q2"), std::string::npos);

  c.format = "json";
  const auto js = nlohmann::json::parse(invoke(c).out);
  EXPECT_EQ(js["N_1"], 22);
  EXPECT_EQ(js["genus"], 8);
  EXPECT_EQ(js["divisor_of_f"].size(), 5u);

  c.format = "csv";
  c.max_degree = 2;
  const Result csv = invoke(c);
  ASSERT_EQ(csv.status, kSuccess);
  EXPECT_EQ(lines(csv.out), 1u + 10u + 4u);  // 10 rational places and 4 of degree 2
}

TEST(Cli, ZetaCurve) {
  RunConfig c;
  c.command = "zeta-curve";
  const Result r = invoke(c);
  ASSERT_EQ(r.status, kSuccess) << r.err;
  const auto js = nlohmann::json::parse(r.out);
  EXPECT_EQ(js["genus"], 8);
  EXPECT_EQ(js["N"][0], 22);
  EXPECT_EQ(js["h"][7], "17");
}

TEST(Cli, EliminateGenus8Csv) {
  const Result r = invoke(genus8_config("eliminate"));
  ASSERT_EQ(r.status, kSuccess) << r.err;
  EXPECT_EQ(lines(r.out), 27u);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "index,h,argument,h1,h2");
  int eliminated = 0;
  while (std::getline(in, line)) eliminated += line.find(",none,") == std::string::npos;
  EXPECT_EQ(eliminated, 25);
}

TEST(Cli, EnumerateResolventJsonLines) {
  RunConfig c = genus8_config("enumerate");
  c.prescribed = {{1, 16}, {2, 8}, {3, 32}};
  const Result r = invoke(c);
  ASSERT_EQ(r.status, kSuccess) << r.err;
  EXPECT_EQ(lines(r.out), 44u);
  std::istringstream in(r.out);
  std::string line;
  while (std::getline(in, line)) EXPECT_EQ(nlohmann::json::parse(line).size(), 9u);
}

TEST(Cli, UsageErrors) {
  RunConfig c = genus8_config("frobnicate");
  Result r = invoke(c);
  EXPECT_EQ(r.status, kUsage);
  EXPECT_NE(r.err.find("unknown command"), std::string::npos);

  c = genus8_config("eliminate");
  c.q = 6;
  r = invoke(c);
  EXPECT_EQ(r.status, kUsage);
  EXPECT_NE(r.err.find("prime power"), std::string::npos);

  c = genus8_config("eliminate");
  c.format = "yaml";
  EXPECT_EQ(invoke(c).status, kUsage);

  c = genus8_config("eliminate");
  c.q = 2;
  c.g = 1;
  c.prescribed = {{1, 3}};
  r = invoke(c);
  EXPECT_EQ(r.status, kSuccess) << r.err;  // the supersingular test is skipped for nonsquare q
  EXPECT_EQ(lines(r.out), 2u);

  c = genus8_config("replay-theorem2");
  c.bounds = fs::path("/nonexistent/bounds.json");
  EXPECT_EQ(invoke(c).status, kUsage);

  c = genus8_config("count-curve");
  c.format = "csv";
  c.max_degree = 9;
  EXPECT_EQ(invoke(c).status, kUsage);

  c = genus8_config("count-curve");
  c.curve = fs::path("/nonexistent/curve.txt");
  EXPECT_EQ(invoke(c).status, kUsage);
}

TEST(Cli, StepFailureLeavesNoOutputFile) {
  TempDir dir;
  RunConfig c = genus8_config("replay-theorem2");
  c.p7_override = 2497;
  c.output = dir.path() / "cert.json";
  const Result r = invoke(c);
  EXPECT_EQ(r.status, kStepFailed);
  EXPECT_NE(r.err.find("galois-contradiction"), std::string::npos);
  EXPECT_FALSE(fs::exists(*c.output));
  EXPECT_TRUE(fs::is_empty(dir.path()));
}

TEST(Cli, MissingBoundFailsLoudly) {
  TempDir dir;
  const fs::path bounds = dir.path() / "bounds.json";
  std::ofstream(bounds) << R"({"version": 1, "entries": [{"q": 4, "genus": 8, "bound": 24, "citation": "test"}]})";
  RunConfig c = genus8_config("replay-theorem2");
  c.bounds = bounds;
  c.output = dir.path() / "cert.json";
  const Result r = invoke(c);
  EXPECT_EQ(r.status, kUsage);
  EXPECT_NE(r.err.find("genus 15"), std::string::npos);
  EXPECT_FALSE(fs::exists(*c.output));
}

TEST(Cli, ReRunsAreByteIdentical) {
  TempDir dir;
  RunConfig c = genus8_config("eliminate");
  c.format = "json";
  c.output = dir.path() / "a.json";
  ASSERT_EQ(invoke(c).status, kSuccess);
  c.output = dir.path() / "b.json";
  c.threads = 3;
  ASSERT_EQ(invoke(c).status, kSuccess);
  EXPECT_EQ(slurp(dir.path() / "a.json"), slurp(dir.path() / "b.json"));
  // Only the two artifacts, no leftover temporaries.
  EXPECT_EQ(std::distance(fs::directory_iterator(dir.path()), fs::directory_iterator{}), 2);

  RunConfig cc;
  cc.command = "count-curve";
  EXPECT_EQ(invoke(cc).out, invoke(cc).out);
}

TEST(Cli, OutputReplacesExistingFileAtomically) {
  TempDir dir;
  const fs::path target = dir.path() / "out.md";
  std::ofstream(target) << "stale";
  RunConfig c;
  c.command = "count-curve";
  c.output = target;
  ASSERT_EQ(invoke(c).status, kSuccess);
  EXPECT_EQ(slurp(target).substr(0, 19), "N_1 = 22, genus = 8");
}

TEST(Cli, TimestampHeader) {
  RunConfig c;
  c.command = "count-curve";
  c.timestamp = true;
  const std::string md = invoke(c).out;
  EXPECT_EQ(md.rfind("<!-- generated ", 0), 0u);
  c.format = "json";
  const auto js = nlohmann::json::parse(invoke(c).out);
  EXPECT_TRUE(js.contains("generated"));
  EXPECT_EQ(js["N_1"], 22);
}

TEST(Cli, CurveConfigFile) {
  TempDir dir;
  const fs::path cfg = dir.path() / "curve.txt";
  std::ofstream(cfg) << "# the default cover, spelled out\nh = 1 1 0 1\ng = 0 0 1 0 1 1 1\nf_y = 1 1\nf_0 = 0 0 1\n";
  RunConfig c;
  c.command = "count-curve";
  c.curve = cfg;
  const Result r = invoke(c);
  ASSERT_EQ(r.status, kSuccess) << r.err;
  EXPECT_EQ(r.out.substr(0, 19), "N_1 = 22, genus = 8");
}
