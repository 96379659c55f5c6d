#include <doctest.h>

#include <cmath>

#include "aoi/oracle.hpp"
#include "aoi/simulator.hpp"
#include "aoi/solver.hpp"
#include "test_util.hpp"

using namespace aoi;
using test::table1;

TEST_CASE("induced chain rows are the policy's kernel rows") {
  const ModelParams p = table1(0.2, 0.2, 5, 4);
  const InducedChain chain = induce_chain(idle_policy(p), p);
  const int n = chain.size();
  REQUIRE(n == p.state_count());

  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) sum += chain.matrix[static_cast<std::size_t>(i) * n + j];
    CHECK(std::abs(sum - 1.0) <= 1e-12);
    CHECK(chain.age_cost[i] == chain.states[i].age);
  }

  // full-battery idle rows are unit mass on (B, min{age+1, age_max})
  for (int age : {1, 7, 29, 30}) {
    const int row = state_index({20, age}, p);
    const int next = state_index({20, std::min(age + 1, p.age_max)}, p);
    CHECK(chain.matrix[static_cast<std::size_t>(row) * n + next] == 1.0);
  }
}

TEST_CASE("hand-written four-state chain") {
  ModelParams p;
  p.battery_capacity = 1;
  p.age_max = 2;
  p.age_fresh = 1;
  p.age_stale = 2;
  p.harvest_amount = 1;
  p.harvest_prob = 1.0;
  p.cost_primary = 1;
  p.cost_backup = 0;
  p.reliability_primary = 1.0;
  p.reliability_backup = 0.0;

  Policy policy{{Action::idle, Action::idle, Action::primary, Action::primary}, "hand"};
  const InducedChain chain = induce_chain(policy, p);
  // states: (0,1) (0,2) (1,1) (1,2); idle harvests to battery 1, primary
  // holds battery and pins age at 1.
  const double expected[4][4] = {
      {0, 0, 0, 1},
      {0, 0, 0, 1},
      {0, 0, 1, 0},
      {0, 0, 1, 0},
  };
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(chain.matrix[static_cast<std::size_t>(i) * 4 + j] == expected[i][j]);

  CHECK(exact_average_aoi(chain, {0, 1}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("idle policy settles at the age cap from any start") {
  const ModelParams p = table1(0.2, 0.2, 5, 4);
  const InducedChain chain = induce_chain(idle_policy(p), p);
  CHECK(exact_average_aoi(chain, {0, 1}) == doctest::Approx(30.0).epsilon(1e-10));
  CHECK(exact_average_aoi(chain, {0, 30}) == doctest::Approx(30.0).epsilon(1e-10));
  CHECK(exact_average_aoi(chain, {20, 15}) == doctest::Approx(30.0).epsilon(1e-10));
}

TEST_CASE("self-sustaining primary cycle has unit average age") {
  ModelParams p = table1(1.0, 0.0, 3, 1);
  p.reliability_primary = 1.0;  // harvest every slot, always fresh
  Policy policy{{}, "primary-when-affordable"};
  for (const State& s : state_space(p))
    policy.decision.push_back(s.battery >= p.cost_primary ? Action::primary : Action::idle);
  CHECK(policy_average_aoi(policy, p, State{0, p.age_max}) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("exact value matches a long simulation") {
  const ModelParams p = test::small_params();
  const Policy policy = materialize_aggressive(p);
  const double exact = policy_average_aoi(policy, p);
  // 50 batches of 200k slots = 10^7 steps; compare at 3 standard errors.
  const MonteCarloStats stats = monte_carlo(policy, p, 200000, 50, 99);
  const double se = stats.std_aoi / std::sqrt(50.0);
  CHECK(std::abs(stats.mean_aoi - exact) <= 3.0 * se + 1e-6);
  CHECK(exact >= p.age_fresh);
  CHECK(exact <= p.age_max);
}

TEST_CASE("direct and power stationary solves agree") {
  const ModelParams p = test::small_params();
  for (const Policy& policy : {materialize_aggressive(p), idle_policy(p)}) {
    const InducedChain chain = induce_chain(policy, p);
    const double direct = exact_average_aoi(chain, {0, 1}, StationaryMethod::direct);
    const double power = exact_average_aoi(chain, {0, 1}, StationaryMethod::power);
    CHECK(direct == doctest::Approx(power).epsilon(1e-9));
  }
}

TEST_CASE("multichain start is absorption-weighted") {
  ModelParams p;
  p.battery_capacity = 4;
  p.age_max = 4;
  p.age_fresh = 1;
  p.age_stale = 3;
  p.harvest_amount = 1;
  p.harvest_prob = 0.5;
  p.cost_primary = 2;
  p.cost_backup = 1;
  p.reliability_primary = 1.0;
  p.reliability_backup = 0.5;

  // Full battery idles forever (absorbs at the age cap); battery 3 idles at
  // age 1 — harvesting there tips into the absorbing set — and otherwise
  // requests primary, which cycles through batteries 1..3.
  Policy policy{{}, "two-class"};
  for (const State& s : state_space(p)) {
    Action a = Action::idle;
    if (s.battery == 3 && s.age >= 2) a = Action::primary;
    policy.decision.push_back(a);
  }
  const InducedChain chain = induce_chain(policy, p);

  const double cap = exact_average_aoi(chain, {4, 2});
  CHECK(cap == doctest::Approx(4.0).epsilon(1e-10));
  const double cycle = exact_average_aoi(chain, {1, 1});
  CHECK(cycle < 4.0);
  // from (3,1): harvest (p=1/2) leads to the cap class, otherwise the cycle
  const double mixed = exact_average_aoi(chain, {3, 1});
  CHECK(mixed == doctest::Approx(0.5 * 4.0 + 0.5 * cycle).epsilon(1e-9));

  // simulation sanity: episode averages from (3,1) straddle the two classes
  const MonteCarloStats stats = monte_carlo(policy, p, 3000, 400, 7, State{3, 1});
  CHECK(std::abs(stats.mean_aoi - mixed) <= 4.0 * stats.std_aoi / std::sqrt(400.0) + 0.01);
}

TEST_CASE("non-stochastic chains are rejected") {
  const ModelParams p = test::small_params();
  InducedChain chain = induce_chain(idle_policy(p), p);
  chain.matrix[5] += 0.5;
  CHECK_THROWS_AS(exact_average_aoi(chain, {0, 1}), std::runtime_error);

  InducedChain negative = induce_chain(idle_policy(p), p);
  negative.matrix[0] -= 2.0;
  CHECK_THROWS_AS(exact_average_aoi(negative, {0, 1}), std::runtime_error);

  const InducedChain ok = induce_chain(idle_policy(p), p);
  CHECK_THROWS_AS(exact_average_aoi(ok, {p.battery_capacity + 1, 1}), std::runtime_error);
}

TEST_CASE("solver gain agrees with the oracle on its policy") {
  for (const ModelParams& p : {table1(0.2, 0.2, 5, 4), test::small_params()}) {
    const SolveResult r = rvi_solve(p);
    const double exact = policy_average_aoi(r.policy, p);
    CHECK(std::abs(r.gain - exact) <= 2e-6);
  }
}
