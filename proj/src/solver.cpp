#include "aoi/solver.hpp"

#include <algorithm>
#include <string>

namespace aoi {

NonConvergenceError::NonConvergenceError(long iterations, double last_span)
    : std::runtime_error("relative value iteration did not converge after " +
                         std::to_string(iterations) +
                         " iterations (last span " + std::to_string(last_span) + ")"),
      iterations_(iterations),
      last_span_(last_span) {}

double span(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("span: empty vector");
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

State reference_state(const ModelParams& params) {
  return State{params.battery_capacity, params.age_fresh};
}

namespace {

std::vector<Action> to_actions(const std::vector<int32_t>& raw) {
  std::vector<Action> actions(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) actions[i] = static_cast<Action>(raw[i]);
  return actions;
}

}  // namespace

BackupResult bellman_backup(const ValueFunction& v, const ModelParams& params,
                            std::optional<kernels::Kind> kernel) {
  params.validate();
  const int n = params.state_count();
  if (static_cast<int>(v.values.size()) != n)
    throw std::invalid_argument("bellman_backup: value function covers " +
                                std::to_string(v.values.size()) + " states, expected " +
                                std::to_string(n));
  const kernels::Kind kind = kernel.value_or(kernels::preferred_kind());
  const kernels::BackupTables tables = kernels::compile_backup_tables(params);
  BackupResult out;
  out.values.resize(n);
  std::vector<int32_t> arg(n);
  kernels::bellman_backup(kind, tables, v.values.data(), out.values.data(), arg.data());
  out.argmin = to_actions(arg);
  return out;
}

SolveResult rvi_solve(const ModelParams& params, const SolveOptions& options) {
  params.validate();
  if (options.epsilon <= 0.0) throw std::invalid_argument("rvi_solve: epsilon must be > 0");
  if (options.max_iters < 1) throw std::invalid_argument("rvi_solve: max_iters must be >= 1");

  const kernels::Kind kind = options.kernel.value_or(kernels::preferred_kind());
  const kernels::BackupTables tables = kernels::compile_backup_tables(params);
  const int n = params.state_count();
  const int ref = state_index(reference_state(params), params);

  std::vector<double> h(n, 0.0);  // normalized values, h[ref] == 0
  std::vector<double> u(n);       // raw backup of h
  std::vector<double> d(n);       // one-step increment u - h
  std::vector<int32_t> arg(n);

  long iter = 0;
  double sp = 0.0;
  bool converged = false;
  kernels::MinMax mm{};
  while (iter < options.max_iters) {
    ++iter;
    kernels::bellman_backup(kind, tables, h.data(), u.data(), arg.data());
    for (int s = 0; s < n; ++s) d[s] = u[s] - h[s];
    mm = kernels::minmax(kind, d.data(), n);
    sp = mm.max - mm.min;
    const double shift = u[ref];
    for (int s = 0; s < n; ++s) h[s] = u[s] - shift;
    if (sp < options.epsilon) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NonConvergenceError(iter, sp);

  SolveResult result;
  result.gain = 0.5 * (mm.min + mm.max);
  result.value.values = std::move(h);
  result.iterations = iter;
  result.final_span = sp;

  // Extract the policy greedily from the returned values, so one backup on
  // `value` reproduces `policy` exactly.
  kernels::bellman_backup(kind, tables, result.value.values.data(), u.data(), arg.data());
  result.policy.decision = to_actions(arg);
  result.policy.label = "optimal";
  return result;
}

}  // namespace aoi
