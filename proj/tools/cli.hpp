#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace curvebound::cli {

struct RunConfig {
  std::string command;  // enumerate, eliminate, replay-theorem2, count-curve, zeta-curve
  long q = 4;
  int g = 8;
  std::map<int, long> prescribed;
  std::string format;  // json, csv, markdown; empty selects the command default
  std::optional<std::filesystem::path> output;
  unsigned threads = 1;
  std::optional<std::filesystem::path> bounds;
  std::optional<std::filesystem::path> curve;  // KummerCoverSpec text
  int max_degree = 1;                          // count-curve --format csv place table
  std::optional<long> p7_override;
  bool timestamp = false;
};

enum ExitStatus { kSuccess = 0, kUsage = 1, kStepFailed = 2 };

bool is_prime_power(long q);

// Runs one command, writing the artifact to config.output (atomically) or to
// out, and diagnostics to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace curvebound::cli
