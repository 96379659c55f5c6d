#include "aoi/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace aoi {

namespace {

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

}  // namespace

State default_start(const ModelParams& params) { return State{0, params.age_max}; }

EpisodeResult simulate_episode(const Policy& policy, const ModelParams& params, int slots,
                               std::uint64_t seed, bool record_trajectory,
                               std::optional<State> start) {
  params.validate();
  if (slots < 1) throw std::invalid_argument("simulate_episode: slots must be >= 1");
  if (static_cast<int>(policy.decision.size()) != params.state_count())
    throw std::invalid_argument("simulate_episode: policy does not cover the state space");
  const State init = start.value_or(default_start(params));
  if (!is_valid_state(init, params))
    throw std::invalid_argument("simulate_episode: start state " + to_string(init) +
                                " out of bounds");

  std::mt19937_64 rng(seed);
  int battery = init.battery;
  int age = init.age;
  double age_sum = 0.0;

  EpisodeResult result;
  result.seed = seed;
  if (record_trajectory) result.trajectory.reserve(slots);

  for (int t = 1; t <= slots; ++t) {
    const int harvested = uniform01(rng) < params.harvest_prob ? params.harvest_amount : 0;
    const Action a = policy.decision[state_index(State{battery, age}, params)];
    if (a == Action::idle) {
      battery = std::min(battery + harvested, params.battery_capacity);
      age = std::min(age + 1, params.age_max);
    } else {
      const int cost = params.action_cost(a);
      if (battery < cost)
        throw std::logic_error("simulate_episode: policy \"" + policy.label + "\" chose " +
                               std::string(to_string(a)) + " with battery " +
                               std::to_string(battery) + " < cost " + std::to_string(cost));
      const bool fresh = uniform01(rng) < params.reliability(a);
      age = fresh ? std::min(params.age_fresh, age + 1) : std::min(params.age_stale, age + 1);
      battery = std::min(battery - cost + harvested, params.battery_capacity);
    }
    age_sum += age;
    if (record_trajectory)
      result.trajectory.push_back({t, battery, age, a, age_sum / t});
  }
  result.time_avg_aoi = age_sum / slots;
  return result;
}

MonteCarloStats monte_carlo(const Policy& policy, const ModelParams& params, int slots, int runs,
                            std::uint64_t base_seed, std::optional<State> start) {
  if (runs < 2)
    throw std::invalid_argument("monte_carlo: needs at least 2 runs for a standard deviation");

  std::vector<double> averages(runs);
  for (int m = 0; m < runs; ++m)
    averages[m] =
        simulate_episode(policy, params, slots, base_seed + 1 + m, false, start).time_avg_aoi;

  double mean = 0.0;
  for (double a : averages) mean += a;
  mean /= runs;
  double ss = 0.0;
  for (double a : averages) ss += (a - mean) * (a - mean);

  MonteCarloStats stats;
  stats.mean_aoi = mean;
  stats.std_aoi = std::sqrt(ss / (runs - 1));
  stats.runs = runs;
  stats.slots = slots;
  return stats;
}

}  // namespace aoi
