#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "aoi/config.hpp"
#include "aoi/csv.hpp"
#include "aoi/oracle.hpp"
#include "aoi/solver.hpp"

using namespace aoi;
namespace fs = std::filesystem;

namespace {

const char* kConfig =
    "harvest_prob = 0.2\n"
    "reliability_backup = 0.2\n"
    "cost_primary = 5\n"
    "cost_backup = 4\n"
    "slots = 400\n"
    "runs = 40\n"
    "seed = 7\n";

struct CliRun {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("aoi_cli_test_" + std::to_string(::getpid() + std::rand() % 1000));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

CliRun run_cli(const TempDir& dir, const std::string& args) {
  const fs::path out_file = dir.path / "stdout.txt";
  const fs::path err_file = dir.path / "stderr.txt";
  const std::string cmd = std::string(AOI_CLI_PATH) + " " + args + " >" + out_file.string() +
                          " 2>" + err_file.string();
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

fs::path write_config(const TempDir& dir, const std::string& text, const char* name = "run.cfg") {
  const fs::path path = dir.path / name;
  std::ofstream out(path);
  out << text;
  return path;
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("solve writes policy and value CSVs and reports the gain") {
  TempDir dir;
  const fs::path cfg = write_config(dir, kConfig);
  const fs::path out1 = dir.path / "a";
  const CliRun r = run_cli(dir, "solve --config " + cfg.string() + " --out " + out1.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("gain=") != std::string::npos);
  CHECK(r.out.find("iterations=") != std::string::npos);
  CHECK(r.out.find("final_span=") != std::string::npos);

  const std::string policy_text = slurp(out1 / "policy.csv");
  const std::string value_text = slurp(out1 / "value.csv");
  CHECK(policy_text.substr(0, 19) == "battery,age,action\n");
  CHECK(value_text.substr(0, 18) == "battery,age,value\n");
  CHECK(count_lines(policy_text) == 631);  // header + 630 states
  CHECK(count_lines(value_text) == 631);

  SUBCASE("round-trip: exported policy reproduces the solve's gain") {
    const RunConfig run_cfg = parse_config(cfg.string());
    const Policy parsed = csv::read_policy_file((out1 / "policy.csv").string(), run_cfg.params);
    const SolveResult direct = rvi_solve(run_cfg.params, {run_cfg.epsilon, run_cfg.max_iters, {}});
    const double reparsed_value = policy_average_aoi(parsed, run_cfg.params);
    CHECK(std::abs(reparsed_value - direct.gain) <= 2.0 * run_cfg.epsilon);
  }

  SUBCASE("byte-identical on a second run") {
    const fs::path out2 = dir.path / "b";
    const CliRun again =
        run_cli(dir, "solve --config " + cfg.string() + " --out " + out2.string());
    CHECK(again.exit_code == 0);
    CHECK(slurp(out2 / "policy.csv") == policy_text);
    CHECK(slurp(out2 / "value.csv") == value_text);
    CHECK(again.out == r.out);
  }
}

TEST_CASE("simulate evaluates a policy and exports a trajectory") {
  TempDir dir;
  const fs::path cfg = write_config(dir, kConfig);
  const fs::path traj = dir.path / "trajectory.csv";

  const CliRun mc = run_cli(dir, "simulate --config " + cfg.string() +
                                     " --policy aggressive --out " + traj.string());
  CHECK(mc.exit_code == 0);
  CHECK(mc.out.find("policy=aggressive") != std::string::npos);
  CHECK(mc.out.find("eval=mc") != std::string::npos);
  CHECK(mc.out.find("mean_aoi=") != std::string::npos);
  CHECK(mc.out.find("std_aoi=") != std::string::npos);

  const std::string traj_text = slurp(traj);
  CHECK(traj_text.substr(0, 40) == "slot,battery,age,action,running_avg_aoi\n");
  CHECK(count_lines(traj_text) == 401);  // header + slots

  const CliRun oracle =
      run_cli(dir, "simulate --config " + cfg.string() + " --policy idle --eval oracle");
  CHECK(oracle.exit_code == 0);
  CHECK(oracle.out.find("eval=oracle") != std::string::npos);
  CHECK(oracle.out.find("avg_aoi=30") != std::string::npos);

  SUBCASE("seed override changes the draw, determinism holds per seed") {
    const CliRun a = run_cli(dir, "simulate --config " + cfg.string() + " --seed 99");
    const CliRun b = run_cli(dir, "simulate --config " + cfg.string() + " --seed 99");
    const CliRun c = run_cli(dir, "simulate --config " + cfg.string() + " --seed 100");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);
  }

  SUBCASE("trajectory export is byte-identical across runs") {
    const fs::path again = dir.path / "trajectory2.csv";
    const CliRun rerun = run_cli(dir, "simulate --config " + cfg.string() +
                                          " --policy aggressive --out " + again.string());
    CHECK(rerun.exit_code == 0);
    CHECK(slurp(again) == traj_text);
  }
}

TEST_CASE("sweep emits ordered rows and collapses duplicate backup costs") {
  TempDir dir;
  const fs::path cfg = write_config(dir, kConfig);
  const fs::path out = dir.path / "sweep.csv";

  const CliRun r = run_cli(dir, "sweep --config " + cfg.string() +
                                    " --param cost_ratio --values 0,0.2,0.4,0.6,0.8 --out " +
                                    out.string());
  CHECK(r.exit_code == 0);
  const std::string text = slurp(out);
  CHECK(text.substr(0, 35) == "param_value,policy,avg_aoi,std_aoi\n");
  CHECK(count_lines(text) == 11);  // header + 5 ratios x 2 policies
  CHECK(text.find("0,optimal,") != std::string::npos);
  CHECK(text.find("0.8,aggressive,") != std::string::npos);

  SUBCASE("oracle rows leave std empty") {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) CHECK(line.back() == ',');
  }

  SUBCASE("duplicate integer backup costs collapse") {
    const fs::path out2 = dir.path / "dup.csv";
    const CliRun dup = run_cli(dir, "sweep --config " + cfg.string() +
                                        " --param cost_ratio --values 0.1,0.12,0.2 --out " +
                                        out2.string());
    CHECK(dup.exit_code == 0);
    CHECK(count_lines(slurp(out2)) == 3);  // header + one surviving ratio x 2 policies
  }

  SUBCASE("policy filter and monte carlo evaluation") {
    const fs::path out3 = dir.path / "mc.csv";
    const CliRun mc = run_cli(dir, "sweep --config " + cfg.string() +
                                       " --param harvest_prob --values 0.2,0.8 --policy "
                                       "aggressive --eval mc --out " +
                                       out3.string());
    CHECK(mc.exit_code == 0);
    const std::string mc_text = slurp(out3);
    CHECK(count_lines(mc_text) == 3);
    std::istringstream in(mc_text);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      CHECK(line.find("aggressive") != std::string::npos);
      CHECK(line.back() != ',');  // std_aoi filled in
    }
  }

  SUBCASE("optimal curve rises with the ratio and goes flat at the tail") {
    const fs::path out4 = dir.path / "shape.csv";
    const CliRun shape = run_cli(dir, "sweep --config " + cfg.string() +
                                          " --param cost_ratio --values 0,0.2,0.4,0.6,0.8 "
                                          "--policy optimal --out " +
                                          out4.string());
    CHECK(shape.exit_code == 0);
    std::istringstream in(slurp(out4));
    std::string line;
    std::getline(in, line);  // header
    std::vector<double> gains;
    while (std::getline(in, line)) {
      std::istringstream row(line);
      std::string ratio, policy, avg;
      REQUIRE(std::getline(row, ratio, ','));
      REQUIRE(std::getline(row, policy, ','));
      REQUIRE(std::getline(row, avg, ','));
      gains.push_back(std::stod(avg));
    }
    REQUIRE(gains.size() == 5);
    for (std::size_t i = 1; i < gains.size(); ++i) CHECK(gains[i] >= gains[i - 1] - 2e-6);
    CHECK(std::abs(gains[4] - gains[3]) <= 2e-6);  // saturated by ratio 0.6
  }

  SUBCASE("unordered grids are rejected") {
    const CliRun bad = run_cli(dir, "sweep --config " + cfg.string() +
                                        " --param cost_ratio --values 0.4,0.2");
    CHECK(bad.exit_code == 1);
    CHECK(bad.err.find("error:") != std::string::npos);
  }

  SUBCASE("unknown sweep parameter is rejected") {
    const CliRun bad =
        run_cli(dir, "sweep --config " + cfg.string() + " --param battery --values 1,2");
    CHECK(bad.exit_code == 1);
  }
}

TEST_CASE("convergence exports one curve per policy") {
  TempDir dir;
  const fs::path cfg = write_config(dir, kConfig);
  const fs::path out = dir.path / "conv.csv";
  const CliRun r = run_cli(dir, "convergence --config " + cfg.string() + " --out " + out.string());
  CHECK(r.exit_code == 0);
  const std::string text = slurp(out);
  CHECK(text.substr(0, 28) == "slot,policy,running_avg_aoi\n");
  CHECK(count_lines(text) == 1 + 2 * 400);
  CHECK(text.find("1,optimal,") != std::string::npos);
  CHECK(text.find("400,aggressive,") != std::string::npos);

  const fs::path out2 = dir.path / "conv2.csv";
  const CliRun again =
      run_cli(dir, "convergence --config " + cfg.string() + " --out " + out2.string());
  CHECK(again.exit_code == 0);
  CHECK(slurp(out2) == text);
}

TEST_CASE("cli failure modes") {
  TempDir dir;
  SUBCASE("missing config file") {
    const CliRun r = run_cli(dir, "solve --config " + (dir.path / "nope.cfg").string());
    CHECK(r.exit_code != 0);
    CHECK(r.err.find("error:") != std::string::npos);
  }
  SUBCASE("invalid parameters in the config") {
    const fs::path bad = write_config(
        dir, "harvest_prob=0.2\nreliability_backup=0.2\ncost_primary=4\ncost_backup=5\n",
        "bad.cfg");
    const CliRun r = run_cli(dir, "solve --config " + bad.string());
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("cost_backup") != std::string::npos);
  }
  SUBCASE("a subcommand is required") {
    const CliRun r = run_cli(dir, "");
    CHECK(r.exit_code != 0);
  }
  SUBCASE("unknown policy name") {
    const fs::path cfg = write_config(dir, kConfig);
    const CliRun r = run_cli(dir, "simulate --config " + cfg.string() + " --policy greedy");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("greedy") != std::string::npos);
  }
}
