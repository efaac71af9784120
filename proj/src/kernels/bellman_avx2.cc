// Copyright 2026 The aoi-backup Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Built with -mavx2 only; never -mfma, which would change rounding relative to
// the scalar reference.

#include <immintrin.h>

#include <algorithm>
#include <limits>

#include "aoi/kernels.h"

namespace aoi::kernels::avx2 {

void BellmanRowKernel(const BellmanRow& row, double* q_idle, double* q_tx,
                      double* v_out) {
  // Lanes d in [0, n-1) read successor d+1 without clamping; the last element
  // saturates and is left to the scalar tail.
  const std::size_t body = row.n == 0 ? 0 : row.n - 1;
  const std::size_t vec_end = body - body % 4;

  const __m256d w_idle_hi = _mm256_set1_pd(row.w_idle_hi);
  const __m256d w_idle_lo = _mm256_set1_pd(row.w_idle_lo);
  const __m256d w_tx_hi = _mm256_set1_pd(row.w_tx_hi);
  const __m256d w_tx_lo = _mm256_set1_pd(row.w_tx_lo);
  const __m256d tx_offset = _mm256_set1_pd(row.tx_offset);
  const __m256d step = _mm256_set1_pd(4.0);
  __m256d aoi = _mm256_setr_pd(1.0, 2.0, 3.0, 4.0);

  for (std::size_t d = 0; d < vec_end; d += 4) {
    const __m256d ih = _mm256_loadu_pd(row.idle_hi + d + 1);
    const __m256d il = _mm256_loadu_pd(row.idle_lo + d + 1);
    const __m256d th = _mm256_loadu_pd(row.tx_hi + d + 1);
    const __m256d tl = _mm256_loadu_pd(row.tx_lo + d + 1);

    const __m256d idle = _mm256_add_pd(
        _mm256_add_pd(aoi, _mm256_mul_pd(w_idle_hi, ih)),
        _mm256_mul_pd(w_idle_lo, il));
    const __m256d tx = _mm256_add_pd(
        _mm256_add_pd(_mm256_add_pd(aoi, tx_offset), _mm256_mul_pd(w_tx_hi, th)),
        _mm256_mul_pd(w_tx_lo, tl));

    _mm256_storeu_pd(q_idle + d, idle);
    _mm256_storeu_pd(q_tx + d, tx);
    // minpd(a, b) yields a iff a < b, matching the scalar select.
    _mm256_storeu_pd(v_out + d, _mm256_min_pd(tx, idle));
    aoi = _mm256_add_pd(aoi, step);
  }
  scalar::BellmanRowRange(row, vec_end, row.n, q_idle, q_tx, v_out);
}

void DiffRangeKernel(const double* next, const double* prev, std::size_t n,
                     double* lo, double* hi) {
  const std::size_t vec_end = n - n % 4;
  __m256d mn = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  __m256d mx = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < vec_end; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(next + i), _mm256_loadu_pd(prev + i));
    mn = _mm256_min_pd(mn, d);
    mx = _mm256_max_pd(mx, d);
  }
  alignas(32) double lanes_lo[4];
  alignas(32) double lanes_hi[4];
  _mm256_store_pd(lanes_lo, mn);
  _mm256_store_pd(lanes_hi, mx);
  double out_lo = std::min(std::min(lanes_lo[0], lanes_lo[1]),
                           std::min(lanes_lo[2], lanes_lo[3]));
  double out_hi = std::max(std::max(lanes_hi[0], lanes_hi[1]),
                           std::max(lanes_hi[2], lanes_hi[3]));
  for (std::size_t i = vec_end; i < n; ++i) {
    const double d = next[i] - prev[i];
    out_lo = std::min(out_lo, d);
    out_hi = std::max(out_hi, d);
  }
  *lo = out_lo;
  *hi = out_hi;
}

void SubtractKernel(double* v, std::size_t n, double c) {
  const std::size_t vec_end = n - n % 4;
  const __m256d cv = _mm256_set1_pd(c);
  for (std::size_t i = 0; i < vec_end; i += 4) {
    _mm256_storeu_pd(v + i, _mm256_sub_pd(_mm256_loadu_pd(v + i), cv));
  }
  for (std::size_t i = vec_end; i < n; ++i) v[i] -= c;
}

}  // namespace aoi::kernels::avx2
