#pragma once

#include <string>
#include <vector>

#include "aoi/config.hpp"
#include "aoi/solver.hpp"

namespace aoi::cli {

/// One-dimensional experiment over a model parameter, evaluated per point
/// for the selected policies.
struct SweepSpec {
  enum class Param { cost_ratio, harvest_prob, reliability_backup };
  enum class Eval { oracle, monte_carlo };

  Param parameter = Param::cost_ratio;
  std::vector<double> values;  // strictly increasing
  bool optimal = true;
  bool aggressive = true;
  Eval eval = Eval::oracle;

  void validate() const;
};

SweepSpec::Param parse_sweep_param(const std::string& name);
SweepSpec::Eval parse_eval(const std::string& name);

struct SolveOutput {
  SolveResult result;
  std::string policy_csv;
  std::string value_csv;
  std::string summary;  // gain=... iterations=... final_span=...
};

SolveOutput cmd_solve(const RunConfig& cfg);

struct SimulateOutput {
  std::string summary;
  std::string trajectory_csv;  // empty unless requested
};

/// Evaluates one policy ("optimal", "aggressive" or "idle"): Monte Carlo
/// over the configured runs/slots, or the exact chain value. Optionally
/// records one episode (seed+1) for trajectory export.
SimulateOutput cmd_simulate(const RunConfig& cfg, const std::string& policy_name,
                            SweepSpec::Eval eval, bool with_trajectory);

/// CSV rows param_value,policy,avg_aoi,std_aoi in the order of
/// spec.values (std empty under oracle evaluation). Cost-ratio sweeps hold
/// c1 fixed, set c2 = round(ratio*c1), collapse duplicate c2 values and
/// report the effective ratio c2/c1.
std::string cmd_sweep(const SweepSpec& spec, const RunConfig& cfg);

/// CSV rows slot,policy,running_avg_aoi: one seeded episode each for the
/// optimal and aggressive policies, started from (battery 0, age 1).
std::string cmd_convergence(const RunConfig& cfg);

/// Full command-line entry point (subcommands solve, simulate, sweep,
/// convergence). Returns the process exit code.
int run(int argc, const char* const* argv);

}  // namespace aoi::cli
