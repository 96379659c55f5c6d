#pragma once

#include "aoi/model.hpp"

namespace aoi::test {

// Default monitoring-node configuration (B=20, age cap 30, fresh/stale ages
// 1/20, harvest 3 units, primary reliability 0.9) with the four
// experiment-dependent parameters filled in.
inline ModelParams table1(double harvest_prob, double reliability_backup, int cost_primary,
                          int cost_backup) {
  ModelParams p;
  p.battery_capacity = 20;
  p.age_max = 30;
  p.age_fresh = 1;
  p.age_stale = 20;
  p.harvest_amount = 3;
  p.reliability_primary = 0.9;
  p.harvest_prob = harvest_prob;
  p.reliability_backup = reliability_backup;
  p.cost_primary = cost_primary;
  p.cost_backup = cost_backup;
  return p;
}

// Small space (40 states) for exhaustive and simulation-heavy tests.
inline ModelParams small_params() {
  ModelParams p;
  p.battery_capacity = 3;
  p.age_max = 4;
  p.age_fresh = 1;
  p.age_stale = 3;
  p.harvest_amount = 2;
  p.cost_primary = 2;
  p.cost_backup = 1;
  p.reliability_primary = 0.8;
  p.reliability_backup = 0.3;
  p.harvest_prob = 0.4;
  return p;
}

}  // namespace aoi::test
