#include "aoi/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "aoi/csv.hpp"
#include "aoi/oracle.hpp"
#include "aoi/simulator.hpp"

namespace aoi::cli {

namespace {

Policy make_policy(const std::string& name, const RunConfig& cfg) {
  if (name == "optimal")
    return rvi_solve(cfg.params, {cfg.epsilon, cfg.max_iters, {}}).policy;
  if (name == "aggressive") return materialize_aggressive(cfg.params);
  if (name == "idle") return idle_policy(cfg.params);
  throw std::runtime_error("unknown policy '" + name + "' (expected optimal|aggressive|idle)");
}

void write_file(const std::string& path, const std::string& contents) {
  if (const auto dir = std::filesystem::path(path).parent_path(); !dir.empty())
    std::filesystem::create_directories(dir);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
}

}  // namespace

void SweepSpec::validate() const {
  if (values.empty()) throw std::invalid_argument("sweep: empty values list");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] <= values[i - 1])
      throw std::invalid_argument("sweep: values must be strictly increasing");
  if (parameter == Param::cost_ratio && (values.front() < 0.0 || values.back() > 1.0))
    throw std::invalid_argument("sweep: cost_ratio values must lie in [0,1]");
  if (!optimal && !aggressive) throw std::invalid_argument("sweep: no policies selected");
}

SweepSpec::Param parse_sweep_param(const std::string& name) {
  if (name == "cost_ratio") return SweepSpec::Param::cost_ratio;
  if (name == "harvest_prob") return SweepSpec::Param::harvest_prob;
  if (name == "reliability_backup") return SweepSpec::Param::reliability_backup;
  throw std::runtime_error("unknown sweep parameter '" + name +
                           "' (expected cost_ratio|harvest_prob|reliability_backup)");
}

SweepSpec::Eval parse_eval(const std::string& name) {
  if (name == "oracle") return SweepSpec::Eval::oracle;
  if (name == "mc") return SweepSpec::Eval::monte_carlo;
  throw std::runtime_error("unknown evaluation '" + name + "' (expected oracle|mc)");
}

SolveOutput cmd_solve(const RunConfig& cfg) {
  SolveOutput out;
  out.result = rvi_solve(cfg.params, {cfg.epsilon, cfg.max_iters, {}});
  out.policy_csv = csv::policy_to_string(out.result.policy, cfg.params);
  out.value_csv = csv::value_to_string(out.result.value, cfg.params);
  std::ostringstream summary;
  summary << "gain=" << csv::format_double(out.result.gain)
          << " iterations=" << out.result.iterations
          << " final_span=" << csv::format_double(out.result.final_span);
  out.summary = summary.str();
  return out;
}

SimulateOutput cmd_simulate(const RunConfig& cfg, const std::string& policy_name,
                            SweepSpec::Eval eval, bool with_trajectory) {
  const Policy policy = make_policy(policy_name, cfg);
  SimulateOutput out;
  std::ostringstream summary;
  summary << "policy=" << policy.label;
  if (eval == SweepSpec::Eval::monte_carlo) {
    const MonteCarloStats stats = monte_carlo(policy, cfg.params, cfg.slots, cfg.runs, cfg.seed);
    summary << " eval=mc mean_aoi=" << csv::format_double(stats.mean_aoi)
            << " std_aoi=" << csv::format_double(stats.std_aoi) << " runs=" << stats.runs
            << " slots=" << stats.slots << " seed=" << cfg.seed;
  } else {
    summary << " eval=oracle avg_aoi=" << csv::format_double(policy_average_aoi(policy, cfg.params));
  }
  out.summary = summary.str();
  if (with_trajectory) {
    const EpisodeResult episode =
        simulate_episode(policy, cfg.params, cfg.slots, cfg.seed + 1, true);
    out.trajectory_csv = csv::trajectory_to_string(episode);
  }
  return out;
}

std::string cmd_sweep(const SweepSpec& spec, const RunConfig& cfg) {
  spec.validate();
  std::ostringstream out;
  out << "param_value,policy,avg_aoi,std_aoi\n";
  int last_backup_cost = -1;
  for (double requested : spec.values) {
    RunConfig point = cfg;
    double effective = requested;
    switch (spec.parameter) {
      case SweepSpec::Param::cost_ratio: {
        const int c2 = static_cast<int>(std::lround(requested * cfg.params.cost_primary));
        if (c2 == last_backup_cost) continue;  // same integer cost as the previous grid point
        last_backup_cost = c2;
        point.params.cost_backup = c2;
        effective = static_cast<double>(c2) / cfg.params.cost_primary;
        break;
      }
      case SweepSpec::Param::harvest_prob:
        point.params.harvest_prob = requested;
        break;
      case SweepSpec::Param::reliability_backup:
        point.params.reliability_backup = requested;
        break;
    }
    point.params.validate();

    std::vector<std::string> names;
    if (spec.optimal) names.emplace_back("optimal");
    if (spec.aggressive) names.emplace_back("aggressive");
    for (const std::string& name : names) {
      const Policy policy = make_policy(name, point);
      out << csv::format_double(effective) << ',' << policy.label << ',';
      if (spec.eval == SweepSpec::Eval::oracle) {
        out << csv::format_double(policy_average_aoi(policy, point.params)) << ",\n";
      } else {
        const MonteCarloStats stats =
            monte_carlo(policy, point.params, point.slots, point.runs, point.seed);
        out << csv::format_double(stats.mean_aoi) << ',' << csv::format_double(stats.std_aoi)
            << '\n';
      }
    }
  }
  return out.str();
}

std::string cmd_convergence(const RunConfig& cfg) {
  // Curves start at (0, 1): the running average then approaches its limit
  // from below instead of carrying the age-cap transient.
  const State start{0, 1};
  std::ostringstream out;
  out << "slot,policy,running_avg_aoi\n";
  for (const std::string& name : {std::string("optimal"), std::string("aggressive")}) {
    const Policy policy = make_policy(name, cfg);
    const EpisodeResult episode =
        simulate_episode(policy, cfg.params, cfg.slots, cfg.seed + 1, true, start);
    for (const TrajectoryPoint& p : episode.trajectory)
      out << p.slot << ',' << policy.label << ',' << csv::format_double(p.running_avg) << '\n';
  }
  return out.str();
}

namespace {

std::vector<double> parse_values_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t pos = 0;
      values.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::runtime_error("--values: not a number: '" + item + "'");
    }
  }
  if (values.empty()) throw std::runtime_error("--values: empty list");
  return values;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Dual-source age-of-information scheduler: solve, simulate, sweep, export"};
  app.require_subcommand(1);

  std::string config_path, out_path, policy_name = "optimal", eval_name, param_name, values_text;
  std::uint64_t seed_override = 0;
  bool seed_given = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "model/run configuration file")->required();
    cmd->add_option("--seed", seed_override, "override the config seed")
        ->each([&](const std::string&) { seed_given = true; });
  };

  CLI::App* solve = app.add_subcommand("solve", "solve for the optimal policy, export CSVs");
  add_common(solve);
  solve->add_option("--out", out_path, "output directory for policy.csv and value.csv");

  CLI::App* simulate = app.add_subcommand("simulate", "evaluate one policy");
  add_common(simulate);
  simulate->add_option("--policy", policy_name, "optimal|aggressive|idle");
  simulate->add_option("--eval", eval_name, "oracle|mc (default mc)");
  simulate->add_option("--out", out_path, "trajectory CSV path (one recorded episode)");

  CLI::App* sweep = app.add_subcommand("sweep", "evaluate policies along a parameter grid");
  add_common(sweep);
  sweep->add_option("--param", param_name, "cost_ratio|harvest_prob|reliability_backup")
      ->required();
  sweep->add_option("--values", values_text, "comma-separated grid, strictly increasing")
      ->required();
  std::vector<std::string> sweep_policies;
  sweep->add_option("--policy", sweep_policies, "optimal and/or aggressive (default both)");
  sweep->add_option("--eval", eval_name, "oracle|mc (default oracle)");
  sweep->add_option("--out", out_path, "output CSV path (default sweep.csv)");

  CLI::App* convergence =
      app.add_subcommand("convergence", "running-average curves for optimal and aggressive");
  add_common(convergence);
  convergence->add_option("--out", out_path, "output CSV path (default convergence.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    RunConfig cfg = parse_config(config_path);
    if (seed_given) cfg.seed = seed_override;

    if (solve->parsed()) {
      const std::filesystem::path dir = out_path.empty() ? "." : out_path;
      const SolveOutput out = cmd_solve(cfg);
      write_file((dir / "policy.csv").string(), out.policy_csv);
      write_file((dir / "value.csv").string(), out.value_csv);
      std::cout << out.summary << '\n';
    } else if (simulate->parsed()) {
      const SweepSpec::Eval eval =
          eval_name.empty() ? SweepSpec::Eval::monte_carlo : parse_eval(eval_name);
      const SimulateOutput out = cmd_simulate(cfg, policy_name, eval, !out_path.empty());
      if (!out_path.empty()) write_file(out_path, out.trajectory_csv);
      std::cout << out.summary << '\n';
    } else if (sweep->parsed()) {
      SweepSpec spec;
      spec.parameter = parse_sweep_param(param_name);
      spec.values = parse_values_list(values_text);
      spec.eval = eval_name.empty() ? SweepSpec::Eval::oracle : parse_eval(eval_name);
      if (!sweep_policies.empty()) {
        spec.optimal = spec.aggressive = false;
        for (const std::string& name : sweep_policies) {
          if (name == "optimal")
            spec.optimal = true;
          else if (name == "aggressive")
            spec.aggressive = true;
          else
            throw std::runtime_error("sweep --policy accepts optimal|aggressive, got '" + name +
                                     "'");
        }
      }
      write_file(out_path.empty() ? "sweep.csv" : out_path, cmd_sweep(spec, cfg));
    } else if (convergence->parsed()) {
      write_file(out_path.empty() ? "convergence.csv" : out_path, cmd_convergence(cfg));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace aoi::cli
