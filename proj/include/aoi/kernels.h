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

// Inner loops of value iteration. Every kernel has a scalar reference and
// optional SIMD variants chosen at runtime. Variants evaluate the same
// expressions in the same order without FMA contraction, so their outputs are
// bitwise identical to the scalar reference.

#ifndef AOI_KERNELS_H_
#define AOI_KERNELS_H_

#include <cstddef>
#include <string_view>

namespace aoi::kernels {

// One battery row of a Bellman backup. All row pointers address successor
// value rows indexed by aoi - 1; the AoI successor of index d is
// min(d + 1, n - 1). For d in [0, n):
//
//   q_idle[d] = (aoi + w_idle_hi * idle_hi[s]) + w_idle_lo * idle_lo[s]
//   q_tx[d]   = ((aoi + tx_offset) + w_tx_hi * tx_hi[s]) + w_tx_lo * tx_lo[s]
//   v_out[d]  = q_tx[d] < q_idle[d] ? q_tx[d] : q_idle[d]
//
// with aoi = d + 1 and s = min(d + 1, n - 1). tx_offset carries the backup
// energy charge and the expected value of the delivered (AoI = 1) outcomes.
struct BellmanRow {
  const double* idle_hi = nullptr;
  const double* idle_lo = nullptr;
  double w_idle_hi = 0.0;
  double w_idle_lo = 0.0;
  const double* tx_hi = nullptr;
  const double* tx_lo = nullptr;
  double w_tx_hi = 0.0;
  double w_tx_lo = 0.0;
  double tx_offset = 0.0;
  std::size_t n = 0;
};

using BellmanRowFn = void (*)(const BellmanRow& row, double* q_idle,
                              double* q_tx, double* v_out);

// Writes min and max over i of (next[i] - prev[i]).
using DiffRangeFn = void (*)(const double* next, const double* prev,
                             std::size_t n, double* lo, double* hi);

// v[i] -= c.
using SubtractFn = void (*)(double* v, std::size_t n, double c);

enum class Isa { kAuto, kScalar, kAvx2 };

std::string_view IsaName(Isa isa);

struct KernelTable {
  Isa isa = Isa::kScalar;
  BellmanRowFn bellman_row = nullptr;
  DiffRangeFn diff_range = nullptr;
  SubtractFn subtract = nullptr;
};

// True if the variant was compiled in and the CPU supports it.
bool IsaAvailable(Isa isa);

// kAuto picks the widest available variant unless the AOI_ISA environment
// variable names another ("scalar" or "avx2").
Isa ResolveIsa(Isa requested);

// Throws DomainError if `isa` is unavailable.
const KernelTable& GetKernels(Isa isa = Isa::kAuto);

namespace scalar {
void BellmanRowKernel(const BellmanRow& row, double* q_idle, double* q_tx,
                      double* v_out);
void DiffRangeKernel(const double* next, const double* prev, std::size_t n,
                     double* lo, double* hi);
void SubtractKernel(double* v, std::size_t n, double c);

// Element d evaluated exactly as the reference loop does; shared by the SIMD
// variants for tails.
void BellmanRowRange(const BellmanRow& row, std::size_t begin, std::size_t end,
                     double* q_idle, double* q_tx, double* v_out);
}  // namespace scalar

namespace avx2 {
void BellmanRowKernel(const BellmanRow& row, double* q_idle, double* q_tx,
                      double* v_out);
void DiffRangeKernel(const double* next, const double* prev, std::size_t n,
                     double* lo, double* hi);
void SubtractKernel(double* v, std::size_t n, double c);
}  // namespace avx2

}  // namespace aoi::kernels

#endif  // AOI_KERNELS_H_
