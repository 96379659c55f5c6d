#include "aoi/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace aoi {

const char* to_string(Action a) {
  switch (a) {
    case Action::idle: return "idle";
    case Action::primary: return "primary";
    case Action::backup: return "backup";
  }
  return "?";
}

std::string to_string(const State& s) {
  return "(" + std::to_string(s.battery) + "," + std::to_string(s.age) + ")";
}

int ModelParams::action_cost(Action a) const {
  switch (a) {
    case Action::idle: return 0;
    case Action::primary: return cost_primary;
    case Action::backup: return cost_backup;
  }
  return 0;
}

double ModelParams::reliability(Action a) const {
  switch (a) {
    case Action::idle: return 0.0;
    case Action::primary: return reliability_primary;
    case Action::backup: return reliability_backup;
  }
  return 0.0;
}

namespace {

void fail(const std::string& what) { throw std::invalid_argument("ModelParams: " + what); }

bool is_prob(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

void ModelParams::validate() const {
  if (battery_capacity < 0) fail("battery_capacity must be >= 0");
  if (cost_primary < 1) fail("cost_primary must be >= 1");
  if (cost_backup < 0) fail("cost_backup must be >= 0");
  if (cost_backup > cost_primary) fail("cost_backup must not exceed cost_primary");
  if (!is_prob(reliability_primary)) fail("reliability_primary must be in [0,1]");
  if (!is_prob(reliability_backup)) fail("reliability_backup must be in [0,1]");
  if (reliability_backup > reliability_primary)
    fail("reliability_backup must not exceed reliability_primary");
  if (!is_prob(harvest_prob)) fail("harvest_prob must be in [0,1]");
  if (harvest_amount < 1) fail("harvest_amount must be >= 1");
  if (age_fresh < 1) fail("age_fresh must be >= 1");
  if (age_stale <= age_fresh) fail("age_stale must exceed age_fresh");
  if (age_max < age_stale) fail("age_max must be >= age_stale");
}

bool is_valid_state(const State& s, const ModelParams& p) {
  return s.battery >= 0 && s.battery <= p.battery_capacity && s.age >= 1 && s.age <= p.age_max;
}

std::vector<State> state_space(const ModelParams& p) {
  std::vector<State> states;
  states.reserve(p.state_count());
  for (int b = 0; b <= p.battery_capacity; ++b)
    for (int age = 1; age <= p.age_max; ++age) states.push_back(State{b, age});
  return states;
}

bool action_feasible(const State& s, Action a, const ModelParams& p) {
  return a == Action::idle || s.battery >= p.action_cost(a);
}

std::vector<Action> feasible_actions(const State& s, const ModelParams& p) {
  std::vector<Action> out{Action::idle};
  if (action_feasible(s, Action::primary, p)) out.push_back(Action::primary);
  if (action_feasible(s, Action::backup, p)) out.push_back(Action::backup);
  return out;
}

double TransitionDist::total_prob() const {
  double sum = 0.0;
  for (const Entry& e : entries) sum += e.prob;
  return sum;
}

namespace {

// Drops zero branches and merges duplicate successors, preserving first
// occurrence order so the result is deterministic.
void push_outcome(TransitionDist& dist, const State& next, double prob) {
  if (prob <= 0.0) return;
  for (TransitionDist::Entry& e : dist.entries) {
    if (e.next == next) {
      e.prob += prob;
      return;
    }
  }
  dist.entries.push_back({next, prob});
}

}  // namespace

TransitionDist transition(const State& s, Action a, const ModelParams& p) {
  if (!is_valid_state(s, p))
    throw std::invalid_argument("transition: state " + to_string(s) + " out of bounds");
  if (!action_feasible(s, a, p))
    throw std::invalid_argument("transition: action " + std::string(to_string(a)) +
                                " infeasible in state " + to_string(s));

  const double lambda = p.harvest_prob;
  TransitionDist dist;
  if (a == Action::idle) {
    const int aged = std::min(s.age + 1, p.age_max);
    const int harvested = std::min(s.battery + p.harvest_amount, p.battery_capacity);
    push_outcome(dist, State{s.battery, aged}, 1.0 - lambda);
    push_outcome(dist, State{harvested, aged}, lambda);
  } else {
    const int cost = p.action_cost(a);
    const double gamma = p.reliability(a);
    const int b_harvest = std::min(s.battery + p.harvest_amount - cost, p.battery_capacity);
    const int b_plain = s.battery - cost;
    const int age_fresh = std::min(p.age_fresh, s.age + 1);
    const int age_stale = std::min(p.age_stale, s.age + 1);
    push_outcome(dist, State{b_harvest, age_fresh}, lambda * gamma);
    push_outcome(dist, State{b_harvest, age_stale}, lambda * (1.0 - gamma));
    push_outcome(dist, State{b_plain, age_fresh}, (1.0 - lambda) * gamma);
    push_outcome(dist, State{b_plain, age_stale}, (1.0 - lambda) * (1.0 - gamma));
  }
  return dist;
}

double expected_next_age(const TransitionDist& dist) {
  double age = 0.0;
  for (const TransitionDist::Entry& e : dist.entries) age += e.prob * e.next.age;
  return age;
}

}  // namespace aoi
