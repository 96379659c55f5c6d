#pragma once

#include <iosfwd>
#include <string>

#include "aoi/model.hpp"
#include "aoi/policies.hpp"
#include "aoi/simulator.hpp"
#include "aoi/solver.hpp"

namespace aoi::csv {

/// Shortest-round-trip style formatting ("%.12g"); all writers share it so
/// identical runs produce identical bytes.
std::string format_double(double v);

/// battery,age,action — one row per state in state_space order, actions
/// encoded 0=idle, 1=primary, 2=backup.
void write_policy(std::ostream& out, const Policy& policy, const ModelParams& params);
std::string policy_to_string(const Policy& policy, const ModelParams& params);

/// Inverse of write_policy; validates the header, coverage and feasibility.
Policy read_policy(std::istream& in, const ModelParams& params,
                   const std::string& label = "csv");
Policy read_policy_file(const std::string& path, const ModelParams& params,
                        const std::string& label = "csv");

/// battery,age,value — relative values, reference-state row exactly 0.
std::string value_to_string(const ValueFunction& value, const ModelParams& params);

/// slot,battery,age,action,running_avg_aoi for a recorded episode.
std::string trajectory_to_string(const EpisodeResult& episode);

}  // namespace aoi::csv
