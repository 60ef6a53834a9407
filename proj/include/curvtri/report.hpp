#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "curvtri/inequality.hpp"
#include "curvtri/simplex.hpp"

namespace curvtri {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

/// Name under which the n-dimensional Euler checks are selected.
inline constexpr const char* kSimplexEulerName = "simplex-euler";

struct SuiteConfig {
  bool all = false;
  std::vector<std::string> inequalities;
  std::optional<GeometryKind> geometry;
  std::uint64_t seed = 42;
  std::int64_t samples = 10000;
  std::optional<int> dimension;
  double tolerance = kHoldsFloor;
};

/// Throws InvalidInput for inconsistent selections (unknown names, a
/// dimension without simplex-euler, simplex-euler in hyperbolic geometry).
void check_suite_config(const SuiteConfig& cfg);

nlohmann::json to_json(const Triangle& t);
nlohmann::json to_json(const CounterexampleRecord& c);
nlohmann::json to_json(const VerificationResult& r);
nlohmann::json to_json(const SimplexVerification& r);
nlohmann::json to_json(const SuiteConfig& cfg);

/// Runs the selected suites and assembles the versioned report. Results are
/// ordered by registry order, then geometry, then dimension.
nlohmann::json run_verification(const SuiteConfig& cfg);

/// Copy of a report with every "wall_time_s" field removed.
nlohmann::json strip_timing(nlohmann::json report);

}  // namespace curvtri
