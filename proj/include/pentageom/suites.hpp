#pragma once

// Named randomized property suites. Each suite samples its own inputs from a
// master seed, shards the work over a fixed number of streams and merges the
// shard results in order, so a report depends only on (suite, n, seed, tol).

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace pentageom {

inline constexpr const char* kReportSchema = "penta-geom/1";
inline constexpr int kShards = 8;

struct SuiteConfig {
  /// Number of samples/configurations; 0 picks the suite default.
  long n = 0;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  /// Worker threads; 0 means PENTA_GEOM_THREADS or the hardware count.
  int threads = 0;
};

struct SuiteReport {
  std::string suite;
  std::string claim;
  bool pass = false;
  long n = 0;
  long checks = 0;
  long failures = 0;
  nlohmann::ordered_json tolerances = nlohmann::ordered_json::object();
  nlohmann::ordered_json worst = nlohmann::ordered_json::object();
  /// Extra diagnostics (threshold calibration, secondary inequality variants).
  nlohmann::ordered_json calibration = nlohmann::ordered_json::object();
  std::vector<std::string> first_failures;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;

  /// The "timing" member is the only non-deterministic part and is omitted
  /// when include_timing is false.
  nlohmann::ordered_json to_json(bool include_timing = true) const;
};

const std::vector<std::string>& suite_names();
long default_suite_size(std::string_view name);

/// Throws UnknownSuite for names not in suite_names().
SuiteReport run_suite(std::string_view name, const SuiteConfig& cfg = {});

/// Worker count after applying PENTA_GEOM_THREADS.
int resolve_threads(int requested);

}  // namespace pentageom
