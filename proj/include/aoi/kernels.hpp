#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "aoi/model.hpp"

namespace aoi::kernels {

/// Flattened transition tables for the Bellman backup, one block per
/// feasible action in tie-break order (idle, backup, primary). Battery-major
/// state indexing makes each block a contiguous suffix [first, n); successor
/// lists are padded to width 4 with zero-probability entries pointing at
/// index 0, so every state evaluates the same fixed expression tree.
struct BackupTables {
  struct ActionBlock {
    int32_t action = 0;  // Action enum value written into argmin
    int first = 0;       // lowest feasible state index
    std::vector<double> cost;                 // expected successor age
    std::array<std::vector<int32_t>, 4> idx;  // successor state indices
    std::array<std::vector<double>, 4> prob;  // matching probabilities
  };

  int n = 0;
  std::vector<ActionBlock> blocks;  // blocks[0] covers all states
};

BackupTables compile_backup_tables(const ModelParams& params);

enum class Kind { scalar, avx2 };

const char* kind_name(Kind k);
bool kind_available(Kind k);
std::vector<Kind> available_kinds();

/// Widest available kernel; the AOI_KERNEL environment variable
/// ("scalar"/"avx2") overrides when it names an available kind.
Kind preferred_kind();

/// One Bellman backup: for every state s,
///   value_out[s]  = min over feasible a of cost(s,a) + sum_k p_k * value_in[succ_k]
///   argmin_out[s] = the minimizing action, ties resolved toward the
///                   earlier block (idle, then backup, then primary).
/// Results are identical across kernel kinds, bit for bit.
void bellman_backup(Kind k, const BackupTables& t, const double* value_in,
                    double* value_out, int32_t* argmin_out);

/// y[i] = dot(mat_t[i*n .. i*n+n), x). With mat_t the transpose of a chain
/// matrix P this computes one step of x := xP. Kinds agree to rounding only
/// (summation order differs).
void matvec_transposed(Kind k, const double* mat_t, const double* x, double* y, int n);

struct MinMax {
  double min = 0.0;
  double max = 0.0;
};

/// Min and max of v[0..n); n must be positive.
MinMax minmax(Kind k, const double* v, int n);

}  // namespace aoi::kernels
