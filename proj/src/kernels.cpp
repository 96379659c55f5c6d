#include "aoi/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_detail.hpp"

namespace aoi::kernels {

BackupTables compile_backup_tables(const ModelParams& params) {
  params.validate();
  BackupTables tables;
  tables.n = params.state_count();

  // Tie-break order; blocks after the first only overwrite on strict
  // improvement, so earlier blocks win ties.
  const Action order[] = {Action::idle, Action::backup, Action::primary};
  for (Action a : order) {
    const int cost = params.action_cost(a);
    if (cost > params.battery_capacity) continue;  // never affordable
    BackupTables::ActionBlock block;
    block.action = static_cast<int32_t>(a);
    block.first = cost * params.age_max;
    const int m = tables.n - block.first;
    block.cost.resize(m);
    for (auto& v : block.idx) v.assign(m, 0);
    for (auto& v : block.prob) v.assign(m, 0.0);
    for (int j = 0; j < m; ++j) {
      const State s = state_at(block.first + j, params);
      const TransitionDist dist = transition(s, a, params);
      block.cost[j] = expected_next_age(dist);
      for (std::size_t k = 0; k < dist.entries.size(); ++k) {
        block.idx[k][j] = state_index(dist.entries[k].next, params);
        block.prob[k][j] = dist.entries[k].prob;
      }
    }
    tables.blocks.push_back(std::move(block));
  }
  return tables;
}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::scalar: return "scalar";
    case Kind::avx2: return "avx2";
  }
  return "?";
}

bool kind_available(Kind k) {
  switch (k) {
    case Kind::scalar:
      return true;
    case Kind::avx2:
#if defined(AOI_KERNELS_X86)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

std::vector<Kind> available_kinds() {
  std::vector<Kind> kinds{Kind::scalar};
  if (kind_available(Kind::avx2)) kinds.push_back(Kind::avx2);
  return kinds;
}

Kind preferred_kind() {
  if (const char* env = std::getenv("AOI_KERNEL")) {
    const std::string name(env);
    if (name == "scalar") return Kind::scalar;
    if (name == "avx2" && kind_available(Kind::avx2)) return Kind::avx2;
    // Unknown or unavailable request falls through to auto-detection.
  }
  return kind_available(Kind::avx2) ? Kind::avx2 : Kind::scalar;
}

namespace {

void require_available(Kind k) {
  if (!kind_available(k))
    throw std::invalid_argument(std::string("kernel kind not available: ") + kind_name(k));
}

}  // namespace

void bellman_backup(Kind k, const BackupTables& t, const double* value_in, double* value_out,
                    int32_t* argmin_out) {
  require_available(k);
  if (t.n <= 0 || t.blocks.empty() || t.blocks.front().first != 0)
    throw std::invalid_argument("bellman_backup: tables missing an always-feasible block");
  switch (k) {
    case Kind::scalar:
      detail::bellman_backup_scalar(t, value_in, value_out, argmin_out);
      return;
    case Kind::avx2:
#if defined(AOI_KERNELS_X86)
      detail::bellman_backup_avx2(t, value_in, value_out, argmin_out);
      return;
#else
      break;
#endif
  }
  throw std::logic_error("bellman_backup: unreachable kernel kind");
}

void matvec_transposed(Kind k, const double* mat_t, const double* x, double* y, int n) {
  require_available(k);
  switch (k) {
    case Kind::scalar:
      detail::matvec_transposed_scalar(mat_t, x, y, n);
      return;
    case Kind::avx2:
#if defined(AOI_KERNELS_X86)
      detail::matvec_transposed_avx2(mat_t, x, y, n);
      return;
#else
      break;
#endif
  }
  throw std::logic_error("matvec_transposed: unreachable kernel kind");
}

MinMax minmax(Kind k, const double* v, int n) {
  require_available(k);
  if (n < 1) throw std::invalid_argument("minmax: empty vector");
  switch (k) {
    case Kind::scalar:
      return detail::minmax_scalar(v, n);
    case Kind::avx2:
#if defined(AOI_KERNELS_X86)
      return detail::minmax_avx2(v, n);
#else
      break;
#endif
  }
  throw std::logic_error("minmax: unreachable kernel kind");
}

}  // namespace aoi::kernels
