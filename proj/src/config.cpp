#include "aoi/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace aoi {

namespace {

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
  throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_double(const std::string& origin, int line, std::string_view v) {
  const std::string text(v);
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || text.empty() || errno == ERANGE)
    fail(origin, line, "not a number: '" + text + "'");
  return x;
}

long long parse_int(const std::string& origin, int line, std::string_view v) {
  const std::string text(v);
  char* end = nullptr;
  errno = 0;
  const long long x = std::strtoll(text.c_str(), &end, 10);
  if (end != text.c_str() + text.size() || text.empty() || errno == ERANGE)
    fail(origin, line, "not an integer: '" + text + "'");
  return x;
}

std::uint64_t parse_uint(const std::string& origin, int line, std::string_view v) {
  const std::string text(v);
  char* end = nullptr;
  errno = 0;
  const unsigned long long x = std::strtoull(text.c_str(), &end, 10);
  if (end != text.c_str() + text.size() || text.empty() || text.front() == '-' || errno == ERANGE)
    fail(origin, line, "not a non-negative integer: '" + text + "'");
  return x;
}

}  // namespace

RunConfig parse_config_text(std::string_view text, const std::string& origin) {
  RunConfig cfg;
  std::map<std::string, int> seen;  // key -> line of first occurrence

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(origin, line_no, "expected key=value: '" + raw + "'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) fail(origin, line_no, "empty key");
    if (const auto [it, inserted] = seen.emplace(key, line_no); !inserted)
      fail(origin, line_no, "duplicate key '" + key + "' (first on line " +
                                std::to_string(it->second) + ")");

    if (key == "battery_capacity")
      cfg.params.battery_capacity = static_cast<int>(parse_int(origin, line_no, value));
    else if (key == "cost_primary")
      cfg.params.cost_primary = static_cast<int>(parse_int(origin, line_no, value));
    else if (key == "cost_backup")
      cfg.params.cost_backup = static_cast<int>(parse_int(origin, line_no, value));
    else if (key == "reliability_primary")
      cfg.params.reliability_primary = parse_double(origin, line_no, value);
    else if (key == "reliability_backup")
      cfg.params.reliability_backup = parse_double(origin, line_no, value);
    else if (key == "harvest_prob")
      cfg.params.harvest_prob = parse_double(origin, line_no, value);
    else if (key == "harvest_amount")
      cfg.params.harvest_amount = static_cast<int>(parse_int(origin, line_no, value));
    else if (key == "age_fresh")
      cfg.params.age_fresh = static_cast<int>(parse_int(origin, line_no, value));
    else if (key == "age_stale")
      cfg.params.age_stale = static_cast<int>(parse_int(origin, line_no, value));
    else if (key == "age_max")
      cfg.params.age_max = static_cast<int>(parse_int(origin, line_no, value));
    else if (key == "epsilon")
      cfg.epsilon = parse_double(origin, line_no, value);
    else if (key == "max_iters")
      cfg.max_iters = parse_int(origin, line_no, value);
    else if (key == "slots")
      cfg.slots = static_cast<int>(parse_int(origin, line_no, value));
    else if (key == "runs")
      cfg.runs = static_cast<int>(parse_int(origin, line_no, value));
    else if (key == "seed")
      cfg.seed = parse_uint(origin, line_no, value);
    else
      fail(origin, line_no, "unknown key '" + key + "'");
  }

  // The four parameters every experiment varies have no sensible defaults.
  std::vector<std::string> missing;
  for (const char* key : {"harvest_prob", "reliability_backup", "cost_primary", "cost_backup"})
    if (!seen.count(key)) missing.emplace_back(key);
  if (!missing.empty()) {
    std::string list;
    for (const std::string& k : missing) list += (list.empty() ? "" : ", ") + k;
    throw std::runtime_error(origin + ": missing required key(s): " + list);
  }

  try {
    cfg.params.validate();
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(origin + ": " + e.what());
  }
  if (cfg.epsilon <= 0.0) throw std::runtime_error(origin + ": epsilon must be > 0");
  if (cfg.max_iters < 1) throw std::runtime_error(origin + ": max_iters must be >= 1");
  if (cfg.slots < 1) throw std::runtime_error(origin + ": slots must be >= 1");
  if (cfg.runs < 2) throw std::runtime_error(origin + ": runs must be >= 2");
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

}  // namespace aoi
