#include "aoi/policies.hpp"

#include <stdexcept>

namespace aoi {

void validate_policy(const Policy& policy, const ModelParams& params) {
  params.validate();
  if (static_cast<int>(policy.decision.size()) != params.state_count())
    throw std::invalid_argument("policy \"" + policy.label + "\" covers " +
                                std::to_string(policy.decision.size()) + " states, expected " +
                                std::to_string(params.state_count()));
  for (int i = 0; i < params.state_count(); ++i) {
    const State s = state_at(i, params);
    if (!action_feasible(s, policy.decision[i], params))
      throw std::invalid_argument("policy \"" + policy.label + "\" assigns " +
                                  std::string(to_string(policy.decision[i])) +
                                  " to state " + to_string(s) + " which cannot afford it");
  }
}

Action aggressive_action(const State& s, const ModelParams& params) {
  if (s.battery >= params.cost_primary) return Action::primary;
  if (s.battery >= params.cost_backup) return Action::backup;
  return Action::idle;
}

Policy materialize_aggressive(const ModelParams& params) {
  params.validate();
  Policy policy{{}, "aggressive"};
  policy.decision.reserve(params.state_count());
  for (const State& s : state_space(params)) policy.decision.push_back(aggressive_action(s, params));
  return policy;
}

Policy idle_policy(const ModelParams& params) {
  params.validate();
  return Policy{std::vector<Action>(params.state_count(), Action::idle), "idle"};
}

}  // namespace aoi
