#pragma once

#include <string>
#include <vector>

namespace aoi {

/// Per-slot decision of the monitoring node. Enum values double as the
/// integer encoding used by the CSV exporters (0=idle, 1=primary, 2=backup).
enum class Action : int { idle = 0, primary = 1, backup = 2 };

const char* to_string(Action a);

/// All scalar parameters of the dual-source monitoring model.
///
/// The node holds a battery of capacity `battery_capacity` and harvests
/// `harvest_amount` units with probability `harvest_prob` per slot. Querying
/// source i costs `cost_*` units and returns a fresh packet (age
/// `age_fresh`) with probability `reliability_*`, otherwise a stale one
/// (age `age_stale`). Ages saturate at `age_max`.
struct ModelParams {
  int battery_capacity = 20;         // B
  int cost_primary = 0;              // c1, must be set
  int cost_backup = 0;               // c2
  double reliability_primary = 0.9;  // gamma1
  double reliability_backup = 0.0;   // gamma2
  double harvest_prob = 0.0;         // lambda
  int harvest_amount = 3;            // ebar
  int age_fresh = 1;                 // alpha
  int age_stale = 20;                // beta
  int age_max = 30;                  // delta_max

  int state_count() const { return (battery_capacity + 1) * age_max; }
  int action_cost(Action a) const;
  double reliability(Action a) const;

  /// Throws std::invalid_argument if the parameter set is inconsistent.
  void validate() const;
};

/// MDP state: battery level in [0, B] and age in [1, age_max].
struct State {
  int battery = 0;
  int age = 1;

  friend bool operator==(const State&, const State&) = default;
};

std::string to_string(const State& s);

/// Battery-major dense index; states with battery >= c form a contiguous
/// index suffix, which the backup kernels rely on.
inline int state_index(const State& s, const ModelParams& p) {
  return s.battery * p.age_max + (s.age - 1);
}

inline State state_at(int index, const ModelParams& p) {
  return State{index / p.age_max, index % p.age_max + 1};
}

bool is_valid_state(const State& s, const ModelParams& p);

/// All states in battery-major order; size (B+1) * age_max.
std::vector<State> state_space(const ModelParams& p);

/// Idle is always allowed; querying source i requires battery >= cost_i at
/// the start of the slot (same-slot harvest does not count).
bool action_feasible(const State& s, Action a, const ModelParams& p);
std::vector<Action> feasible_actions(const State& s, const ModelParams& p);

/// Finite distribution over successor states. Zero-probability branches are
/// dropped and equal successors merged, so entries are unique and positive.
struct TransitionDist {
  struct Entry {
    State next;
    double prob = 0.0;
  };
  std::vector<Entry> entries;

  double total_prob() const;
};

/// One-step transition kernel for a feasible (state, action) pair.
///
/// Querying source i branches on harvest (prob lambda, battery
/// min{b+ebar-ci, B}, else b-ci) and freshness (prob gamma_i, age
/// min{alpha, age+1}, else min{beta, age+1}). Idling keeps or harvests
/// battery and ages by one slot up to the age_max cap.
TransitionDist transition(const State& s, Action a, const ModelParams& p);

/// Expected successor age; the per-slot cost of taking `a` in `s`.
double expected_next_age(const TransitionDist& dist);

}  // namespace aoi
