#include "aoi/csv.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace aoi::csv {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_policy(std::ostream& out, const Policy& policy, const ModelParams& params) {
  validate_policy(policy, params);
  out << "battery,age,action\n";
  for (int i = 0; i < params.state_count(); ++i) {
    const State s = state_at(i, params);
    out << s.battery << ',' << s.age << ',' << static_cast<int>(policy.decision[i]) << '\n';
  }
}

std::string policy_to_string(const Policy& policy, const ModelParams& params) {
  std::ostringstream out;
  write_policy(out, policy, params);
  return out.str();
}

Policy read_policy(std::istream& in, const ModelParams& params, const std::string& label) {
  params.validate();
  std::string line;
  if (!std::getline(in, line) || line != "battery,age,action")
    throw std::runtime_error("policy csv: expected header 'battery,age,action'");

  Policy policy{std::vector<Action>(params.state_count(), Action::idle), label};
  std::vector<char> filled(params.state_count(), 0);
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    int battery = 0, age = 0, action = 0, consumed = 0;
    if (std::sscanf(line.c_str(), "%d,%d,%d%n", &battery, &age, &action, &consumed) != 3 ||
        consumed != static_cast<int>(line.size()))
      throw std::runtime_error("policy csv: bad row at line " + std::to_string(line_no) + ": '" +
                               line + "'");
    const State s{battery, age};
    if (!is_valid_state(s, params))
      throw std::runtime_error("policy csv: state " + to_string(s) + " out of bounds at line " +
                               std::to_string(line_no));
    if (action < 0 || action > 2)
      throw std::runtime_error("policy csv: bad action code at line " + std::to_string(line_no));
    const int idx = state_index(s, params);
    if (filled[idx])
      throw std::runtime_error("policy csv: duplicate state " + to_string(s) + " at line " +
                               std::to_string(line_no));
    filled[idx] = 1;
    policy.decision[idx] = static_cast<Action>(action);
  }
  for (int i = 0; i < params.state_count(); ++i)
    if (!filled[i])
      throw std::runtime_error("policy csv: missing state " + to_string(state_at(i, params)));
  try {
    validate_policy(policy, params);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("policy csv: ") + e.what());
  }
  return policy;
}

Policy read_policy_file(const std::string& path, const ModelParams& params,
                        const std::string& label) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open policy csv: " + path);
  return read_policy(in, params, label);
}

std::string value_to_string(const ValueFunction& value, const ModelParams& params) {
  if (static_cast<int>(value.values.size()) != params.state_count())
    throw std::invalid_argument("value csv: size mismatch");
  std::ostringstream out;
  out << "battery,age,value\n";
  for (int i = 0; i < params.state_count(); ++i) {
    const State s = state_at(i, params);
    out << s.battery << ',' << s.age << ',' << format_double(value.values[i]) << '\n';
  }
  return out.str();
}

std::string trajectory_to_string(const EpisodeResult& episode) {
  std::ostringstream out;
  out << "slot,battery,age,action,running_avg_aoi\n";
  for (const TrajectoryPoint& p : episode.trajectory)
    out << p.slot << ',' << p.battery << ',' << p.age << ',' << static_cast<int>(p.action) << ','
        << format_double(p.running_avg) << '\n';
  return out.str();
}

}  // namespace aoi::csv
