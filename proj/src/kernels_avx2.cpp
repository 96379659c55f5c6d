// AVX2 variants. Compiled with -mavx2 (no -mfma: the backup must reproduce
// the scalar kernel's results exactly, so mul/add stay separate) and only on
// x86-64; callers gate on kind_available(Kind::avx2).

#include <immintrin.h>

#include "kernels_detail.hpp"

namespace aoi::kernels::detail {

namespace {

inline __m256d gather_term(const std::vector<double>& prob, const std::vector<int32_t>& idx,
                           int j, const double* h) {
  const __m128i vi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx.data() + j));
  return _mm256_mul_pd(_mm256_loadu_pd(prob.data() + j), _mm256_i32gather_pd(h, vi, 8));
}

// Four states at a time; same tree as eval_state.
inline __m256d eval_states(const BackupTables::ActionBlock& b, int j, const double* h) {
  const __m256d t01 = _mm256_add_pd(gather_term(b.prob[0], b.idx[0], j, h),
                                    gather_term(b.prob[1], b.idx[1], j, h));
  const __m256d t23 = _mm256_add_pd(gather_term(b.prob[2], b.idx[2], j, h),
                                    gather_term(b.prob[3], b.idx[3], j, h));
  return _mm256_add_pd(_mm256_loadu_pd(b.cost.data() + j), _mm256_add_pd(t01, t23));
}

// Low 32 bits of each 64-bit comparison lane, for blending int32 argmins.
inline __m128i mask_to_epi32(__m256d mask) {
  const __m256i perm = _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0);
  return _mm256_castsi256_si128(_mm256_permutevar8x32_epi32(_mm256_castpd_si256(mask), perm));
}

}  // namespace

void bellman_backup_avx2(const BackupTables& t, const double* h, double* u, int32_t* arg) {
  bool init = true;
  for (const BackupTables::ActionBlock& b : t.blocks) {
    const int m = t.n - b.first;
    const __m128i vaction = _mm_set1_epi32(b.action);
    int j = 0;
    if (init) {
      for (; j + 4 <= m; j += 4) {
        const int s = b.first + j;
        _mm256_storeu_pd(u + s, eval_states(b, j, h));
        _mm_storeu_si128(reinterpret_cast<__m128i*>(arg + s), vaction);
      }
    } else {
      for (; j + 4 <= m; j += 4) {
        const int s = b.first + j;
        const __m256d e = eval_states(b, j, h);
        const __m256d cur = _mm256_loadu_pd(u + s);
        const __m256d lt = _mm256_cmp_pd(e, cur, _CMP_LT_OQ);
        _mm256_storeu_pd(u + s, _mm256_blendv_pd(cur, e, lt));
        const __m128i cur_arg = _mm_loadu_si128(reinterpret_cast<const __m128i*>(arg + s));
        _mm_storeu_si128(reinterpret_cast<__m128i*>(arg + s),
                         _mm_blendv_epi8(cur_arg, vaction, mask_to_epi32(lt)));
      }
    }
    run_block_scalar(b, j, m, h, u, arg, init);
    init = false;
  }
}

void matvec_transposed_avx2(const double* mat_t, const double* x, double* y, int n) {
  for (int i = 0; i < n; ++i) {
    const double* row = mat_t + static_cast<std::size_t>(i) * n;
    __m256d acc = _mm256_setzero_pd();
    int j = 0;
    for (; j + 4 <= n; j += 4)
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(row + j), _mm256_loadu_pd(x + j)));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; j < n; ++j) sum += row[j] * x[j];
    y[i] = sum;
  }
}

MinMax minmax_avx2(const double* v, int n) {
  if (n < 8) return minmax_scalar(v, n);
  __m256d vmin = _mm256_loadu_pd(v);
  __m256d vmax = vmin;
  int i = 4;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(v + i);
    vmin = _mm256_min_pd(vmin, x);
    vmax = _mm256_max_pd(vmax, x);
  }
  alignas(32) double lo[4], hi[4];
  _mm256_store_pd(lo, vmin);
  _mm256_store_pd(hi, vmax);
  MinMax mm{lo[0], hi[0]};
  for (int k = 1; k < 4; ++k) {
    if (lo[k] < mm.min) mm.min = lo[k];
    if (hi[k] > mm.max) mm.max = hi[k];
  }
  for (; i < n; ++i) {
    if (v[i] < mm.min) mm.min = v[i];
    if (v[i] > mm.max) mm.max = v[i];
  }
  return mm;
}

}  // namespace aoi::kernels::detail
