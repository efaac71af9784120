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

#include <algorithm>
#include <limits>

#include "aoi/kernels.h"

namespace aoi::kernels::scalar {

void BellmanRowRange(const BellmanRow& row, std::size_t begin, std::size_t end,
                     double* q_idle, double* q_tx, double* v_out) {
  const std::size_t last = row.n - 1;
  for (std::size_t d = begin; d < end; ++d) {
    const std::size_t s = std::min(d + 1, last);
    const double aoi = static_cast<double>(d + 1);
    const double idle =
        (aoi + row.w_idle_hi * row.idle_hi[s]) + row.w_idle_lo * row.idle_lo[s];
    const double tx = ((aoi + row.tx_offset) + row.w_tx_hi * row.tx_hi[s]) +
                      row.w_tx_lo * row.tx_lo[s];
    q_idle[d] = idle;
    q_tx[d] = tx;
    v_out[d] = tx < idle ? tx : idle;
  }
}

void BellmanRowKernel(const BellmanRow& row, double* q_idle, double* q_tx,
                      double* v_out) {
  BellmanRowRange(row, 0, row.n, q_idle, q_tx, v_out);
}

void DiffRangeKernel(const double* next, const double* prev, std::size_t n,
                     double* lo, double* hi) {
  double mn = std::numeric_limits<double>::infinity();
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double d = next[i] - prev[i];
    mn = mn < d ? mn : d;
    mx = mx > d ? mx : d;
  }
  *lo = mn;
  *hi = mx;
}

void SubtractKernel(double* v, std::size_t n, double c) {
  for (std::size_t i = 0; i < n; ++i) v[i] -= c;
}

}  // namespace aoi::kernels::scalar
