#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "aoi/model.hpp"
#include "aoi/policies.hpp"

namespace aoi {

struct TrajectoryPoint {
  int slot = 0;     // 1-based
  int battery = 0;  // after the slot's update
  int age = 0;
  Action action = Action::idle;
  double running_avg = 0.0;  // mean age over slots 1..slot
};

struct EpisodeResult {
  double time_avg_aoi = 0.0;  // mean age over slots 1..T
  std::vector<TrajectoryPoint> trajectory;  // empty unless recording was requested
  std::uint64_t seed = 0;
};

struct MonteCarloStats {
  double mean_aoi = 0.0;
  double std_aoi = 0.0;  // sample standard deviation across runs (M-1 denominator)
  int runs = 0;
  int slots = 0;
};

/// Default initial state: empty battery, saturated age.
State default_start(const ModelParams& params);

/// One seeded episode. Per slot, in order: harvest draw (probability
/// lambda), policy action on the pre-harvest battery, freshness draw for
/// requests, then battery/age update. mt19937_64 is seeded with `seed`
/// directly, so identical inputs give bit-identical results.
EpisodeResult simulate_episode(const Policy& policy, const ModelParams& params, int slots,
                               std::uint64_t seed, bool record_trajectory = false,
                               std::optional<State> start = {});

/// Runs episodes with seeds base_seed+1 .. base_seed+runs and aggregates
/// their time averages. Requires runs >= 2.
MonteCarloStats monte_carlo(const Policy& policy, const ModelParams& params, int slots, int runs,
                            std::uint64_t base_seed, std::optional<State> start = {});

}  // namespace aoi
