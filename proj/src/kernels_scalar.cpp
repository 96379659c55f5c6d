#include "kernels_detail.hpp"

namespace aoi::kernels::detail {

void bellman_backup_scalar(const BackupTables& t, const double* h, double* u, int32_t* arg) {
  bool init = true;
  for (const BackupTables::ActionBlock& b : t.blocks) {
    run_block_scalar(b, 0, t.n - b.first, h, u, arg, init);
    init = false;
  }
}

void matvec_transposed_scalar(const double* mat_t, const double* x, double* y, int n) {
  for (int i = 0; i < n; ++i) {
    const double* row = mat_t + static_cast<std::size_t>(i) * n;
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

MinMax minmax_scalar(const double* v, int n) {
  MinMax mm{v[0], v[0]};
  for (int i = 1; i < n; ++i) {
    if (v[i] < mm.min) mm.min = v[i];
    if (v[i] > mm.max) mm.max = v[i];
  }
  return mm;
}

}  // namespace aoi::kernels::detail
