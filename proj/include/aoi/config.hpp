#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "aoi/model.hpp"

namespace aoi {

/// Model parameters plus solver/simulation knobs, as read from a config
/// file.
struct RunConfig {
  ModelParams params;
  double epsilon = 1e-6;
  long max_iters = 100000;
  int slots = 5000;
  int runs = 1000;
  std::uint64_t seed = 1;
};

/// Parses a flat key=value file. Blank lines and '#' comments are ignored.
/// Recognized keys: battery_capacity, cost_primary, cost_backup,
/// reliability_primary, reliability_backup, harvest_prob, harvest_amount,
/// age_fresh, age_stale, age_max, epsilon, max_iters, slots, runs, seed.
/// harvest_prob, reliability_backup, cost_primary and cost_backup are
/// required; the rest default as in RunConfig/ModelParams. Unknown or
/// duplicate keys, malformed lines, and parameter-invariant violations
/// throw std::runtime_error with a file:line diagnostic.
RunConfig parse_config(const std::string& path);

/// Same, from an in-memory string; `origin` labels diagnostics.
RunConfig parse_config_text(std::string_view text, const std::string& origin = "<config>");

}  // namespace aoi
