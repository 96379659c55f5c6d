#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "aoi/kernels.hpp"
#include "aoi/model.hpp"
#include "aoi/policies.hpp"

namespace aoi {

/// Relative value function in state_space order; the reference state's
/// entry is exactly 0 after every normalization.
struct ValueFunction {
  std::vector<double> values;
};

struct SolveResult {
  Policy policy;        // greedy with respect to `value`
  double gain = 0.0;    // estimated optimal average age per slot
  ValueFunction value;  // converged relative values
  long iterations = 0;
  double final_span = 0.0;
};

struct SolveOptions {
  double epsilon = 1e-6;
  long max_iters = 100000;
  std::optional<kernels::Kind> kernel;  // defaults to preferred_kind()
};

class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(long iterations, double last_span);

  long iterations() const { return iterations_; }
  double last_span() const { return last_span_; }

 private:
  long iterations_;
  double last_span_;
};

/// max(v) - min(v); throws std::invalid_argument on an empty vector.
double span(std::span<const double> v);

/// Reference state for the relative normalization: full battery, fresh age.
State reference_state(const ModelParams& params);

struct BackupResult {
  std::vector<double> values;
  std::vector<Action> argmin;
};

/// One exact Bellman backup of `v` under the model kernel. Per-state cost is
/// the expected successor age; ties resolve toward idle, then backup, then
/// primary.
BackupResult bellman_backup(const ValueFunction& v, const ModelParams& params,
                            std::optional<kernels::Kind> kernel = {});

/// Average-cost relative value iteration. Iterates normalized backups until
/// the span of the one-step increment drops below epsilon, then reports the
/// midpoint of the increment's range as the gain and extracts the greedy
/// policy of the final value function.
SolveResult rvi_solve(const ModelParams& params, const SolveOptions& options = {});

}  // namespace aoi
