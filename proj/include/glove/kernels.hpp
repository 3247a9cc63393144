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

#pragma once

// Data-parallel inner loops shared by the trainer and the embedding queries.
//
// Every kernel has a scalar reference implementation; SIMD variants (AVX2+FMA
// on x86-64, NEON on AArch64) are selected once at startup from CPU features
// and can be overridden with GLOVE_KERNELS=scalar|avx2|neon or set_active().
//
// Element-wise kernels are bit-identical across variants.  Reductions (dot,
// dot_rows) differ only in summation order.

#include <cstddef>
#include <string_view>
#include <vector>

namespace glove::kernels {

enum class Isa { kScalar, kAvx2, kNeon };

struct KernelTable {
  Isa isa;
  const char* name;

  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);

  // out[r] = dot(rows + r * dim, q) for r in [0, nrows)
  void (*dot_rows)(const double* rows, std::size_t nrows, std::size_t dim, const double* q,
                   double* out);

  // out[i] = s * x[i]
  void (*scale)(double s, const double* x, double* out, std::size_t n);

  // out[i] = x[i] + y[i]
  void (*add)(const double* x, const double* y, double* out, std::size_t n);

  // out[i] = b[i] - a[i] + c[i]
  void (*offset)(const double* a, const double* b, const double* c, double* out, std::size_t n);

  // step[i] = lr * grad[i] / sqrt(accum[i]).  Returns max |step[i]|, or +inf
  // when any step is non-finite.
  double (*adagrad_steps)(const double* grad, const double* accum, double lr, double* step,
                          std::size_t n);

  // theta[i] -= step[i]; accum[i] += grad[i] * grad[i]
  void (*adagrad_apply)(double* theta, double* accum, const double* step, const double* grad,
                        std::size_t n);
};

std::string_view isa_name(Isa isa);

// Compiled in and supported by the running CPU.
bool supported(Isa isa);
std::vector<Isa> available();

const KernelTable& table(Isa isa);
const KernelTable& active();
void set_active(Isa isa);

}  // namespace glove::kernels
