#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hamlie/lie_algebra.hpp"

namespace hamlie {

struct ScenarioResult {
  std::string id;
  std::string suite;
  std::string description;
  std::string anchor;
  std::string provenance;
  std::string status;  // pass, fail, skipped, error
  std::string expected;  // JSON text
  std::string measured;  // JSON text
  std::string detail;
  double seconds = 0;
  double budget = 0;
};

struct Report {
  std::string suite;
  int max_dim = 63;
  std::uint64_t seed = 0;
  std::vector<ScenarioResult> results;

  int count(const std::string& status) const;
  /// No scenario failed or errored.
  bool ok() const { return count("fail") == 0 && count("error") == 0; }
};

std::vector<std::string> known_suites();
/// $HAMLIE_SCENARIOS, else the data directory of the build tree.
std::string default_scenarios_path();

struct VerifyOptions {
  std::string suite = "all";
  int max_dim = 63;
  std::uint64_t seed = 1;
  std::string scenarios_path;  // empty: default_scenarios_path()
  int threads = 0;             // 0: hardware concurrency
  bool strict_time = false;    // over-budget scenarios fail
};

/// Throws InputError for an unknown suite or a malformed registry.
Report run_verify(const VerifyOptions& opt);

/// json, md or csv; timings are omitted unless requested so that json output
/// is byte-identical across runs.
std::string emit(const Report& r, const std::string& format, bool timings = false);

/// Checks: simple, derived, center, rank-invariant, normalizer, grading, jacobi.
std::string analyze(const LieAlg& l, const std::vector<std::string>& checks, const std::string& mode,
                    std::uint64_t seed, const std::string& format);

}  // namespace hamlie
