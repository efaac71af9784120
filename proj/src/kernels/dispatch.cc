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

#include <cstdlib>
#include <string>

#include "aoi/errors.h"
#include "aoi/kernels.h"

namespace aoi::kernels {
namespace {

constexpr KernelTable kScalarTable = {Isa::kScalar,
                                      &scalar::BellmanRowKernel,
                                      &scalar::DiffRangeKernel,
                                      &scalar::SubtractKernel};

#if defined(AOI_HAVE_AVX2_KERNELS)
constexpr KernelTable kAvx2Table = {Isa::kAvx2, &avx2::BellmanRowKernel,
                                    &avx2::DiffRangeKernel,
                                    &avx2::SubtractKernel};
#endif

bool CpuHasAvx2() {
#if defined(AOI_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

}  // namespace

std::string_view IsaName(Isa isa) {
  switch (isa) {
    case Isa::kAuto:
      return "auto";
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool IsaAvailable(Isa isa) {
  switch (isa) {
    case Isa::kAuto:
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
      static const bool has_avx2 = CpuHasAvx2();
      return has_avx2;
  }
  return false;
}

Isa ResolveIsa(Isa requested) {
  if (requested != Isa::kAuto) return requested;
  if (const char* env = std::getenv("AOI_ISA")) {
    const std::string name(env);
    if (name == "scalar") return Isa::kScalar;
    if (name == "avx2" && IsaAvailable(Isa::kAvx2)) return Isa::kAvx2;
  }
  return IsaAvailable(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar;
}

const KernelTable& GetKernels(Isa isa) {
  const Isa resolved = ResolveIsa(isa);
  if (!IsaAvailable(resolved)) {
    throw DomainError("kernel variant '" + std::string(IsaName(resolved)) +
                      "' is not available on this machine");
  }
#if defined(AOI_HAVE_AVX2_KERNELS)
  if (resolved == Isa::kAvx2) return kAvx2Table;
#endif
  return kScalarTable;
}

}  // namespace aoi::kernels
