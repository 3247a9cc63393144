// Copyright 2026 The glove-weighting Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cstdlib>
#include <string>

#include "glove/error.hpp"
#include "tables.hpp"

namespace glove::kernels {
namespace {

bool cpu_has(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(GLOVE_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(GLOVE_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable* pick_default() {
  if (const char* env = std::getenv("GLOVE_KERNELS")) {
    const std::string want(env);
    for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
      if (want == isa_name(isa) && cpu_has(isa)) return &table(isa);
    }
  }
  if (cpu_has(Isa::kAvx2)) return &table(Isa::kAvx2);
  if (cpu_has(Isa::kNeon)) return &table(Isa::kNeon);
  return &table(Isa::kScalar);
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> current{pick_default()};
  return current;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

bool supported(Isa isa) { return cpu_has(isa); }

std::vector<Isa> available() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon})
    if (cpu_has(isa)) out.push_back(isa);
  return out;
}

const KernelTable& table(Isa isa) {
  if (!cpu_has(isa))
    throw ConfigError("kernel set '" + std::string(isa_name(isa)) + "' is not available");
  switch (isa) {
#if defined(GLOVE_HAVE_AVX2)
    case Isa::kAvx2:
      return detail::avx2_table();
#endif
#if defined(GLOVE_HAVE_NEON)
    case Isa::kNeon:
      return detail::neon_table();
#endif
    default:
      return detail::scalar_table();
  }
}

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

void set_active(Isa isa) { slot().store(&table(isa), std::memory_order_release); }

}  // namespace glove::kernels
