#pragma once

#include <string>
#include <vector>

#include "aoi/model.hpp"

namespace aoi {

/// Stationary deterministic policy: one action per state, in state_space
/// order. Every decision must be feasible in its state.
struct Policy {
  std::vector<Action> decision;
  std::string label;

  Action at(const State& s, const ModelParams& p) const {
    return decision[state_index(s, p)];
  }
};

/// Throws std::invalid_argument if the policy misses states or assigns an
/// unaffordable action.
void validate_policy(const Policy& policy, const ModelParams& params);

/// Query the most expensive affordable source: primary if battery >= c1,
/// else backup if battery >= c2, else idle. Ignores the age coordinate.
Action aggressive_action(const State& s, const ModelParams& params);

Policy materialize_aggressive(const ModelParams& params);

Policy idle_policy(const ModelParams& params);

}  // namespace aoi
