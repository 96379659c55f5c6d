#pragma once

#include <optional>
#include <vector>

#include "aoi/model.hpp"
#include "aoi/policies.hpp"

namespace aoi {

/// Markov chain induced by a stationary policy: dense row-stochastic
/// transition matrix over state_space order plus the per-state age cost.
struct InducedChain {
  std::vector<State> states;
  int age_max = 0;
  std::vector<double> matrix;    // row-major, size n*n
  std::vector<double> age_cost;  // age of each state

  int size() const { return static_cast<int>(states.size()); }
};

InducedChain induce_chain(const Policy& policy, const ModelParams& params);

enum class StationaryMethod {
  automatic,  // direct up to 2000 states, power iteration above
  direct,     // dense LU solve of the stationary equations
  power,      // damped power iteration mu <- mu (I+P)/2
};

/// Long-run average age from `start`: stationary averages of the closed
/// classes reachable from `start`, weighted by their absorption
/// probabilities (a single class, hence no weighting, for unichain
/// policies). Throws std::runtime_error if the matrix is not row-stochastic
/// or a stationary solve misses the 1e-10 residual target.
double exact_average_aoi(const InducedChain& chain, const State& start,
                         StationaryMethod method = StationaryMethod::automatic);

/// Shorthand: induce the chain and evaluate from `start` (default: empty
/// battery, saturated age).
double policy_average_aoi(const Policy& policy, const ModelParams& params,
                          std::optional<State> start = {},
                          StationaryMethod method = StationaryMethod::automatic);

}  // namespace aoi
