#pragma once

#include <cstdint>

#include "aoi/kernels.hpp"

// Scalar building blocks shared between the reference kernel and the SIMD
// tails. The 4-wide expression tree here is the contract every kernel must
// reproduce exactly: cost + ((p0*h0 + p1*h1) + (p2*h2 + p3*h3)).

namespace aoi::kernels::detail {

inline double eval_state(const BackupTables::ActionBlock& b, int j, const double* h) {
  const double t01 = b.prob[0][j] * h[b.idx[0][j]] + b.prob[1][j] * h[b.idx[1][j]];
  const double t23 = b.prob[2][j] * h[b.idx[2][j]] + b.prob[3][j] * h[b.idx[3][j]];
  return b.cost[j] + (t01 + t23);
}

// Processes block states [j_lo, j_end). `init` writes unconditionally
// (first block); otherwise keeps the running minimum with strict <, which
// implements the tie-break toward earlier blocks.
inline void run_block_scalar(const BackupTables::ActionBlock& b, int j_lo, int j_end,
                             const double* h, double* u, int32_t* arg, bool init) {
  for (int j = j_lo; j < j_end; ++j) {
    const int s = b.first + j;
    const double e = eval_state(b, j, h);
    if (init || e < u[s]) {
      u[s] = e;
      arg[s] = b.action;
    }
  }
}

void bellman_backup_scalar(const BackupTables& t, const double* h, double* u, int32_t* arg);
void matvec_transposed_scalar(const double* mat_t, const double* x, double* y, int n);
MinMax minmax_scalar(const double* v, int n);

#if defined(AOI_KERNELS_X86)
void bellman_backup_avx2(const BackupTables& t, const double* h, double* u, int32_t* arg);
void matvec_transposed_avx2(const double* mat_t, const double* x, double* y, int n);
MinMax minmax_avx2(const double* v, int n);
#endif

}  // namespace aoi::kernels::detail
