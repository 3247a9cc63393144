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

#include <arm_neon.h>

#include <cmath>
#include <limits>

#include "tables.hpp"

namespace glove::kernels::detail {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void dot_rows(const double* rows, std::size_t nrows, std::size_t dim, const double* q,
              double* out) {
  for (std::size_t r = 0; r < nrows; ++r) out[r] = dot(rows + r * dim, q, dim);
}

void scale(double s, const double* x, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vmulq_n_f64(vld1q_f64(x + i), s));
  for (; i < n; ++i) out[i] = s * x[i];
}

void add(const double* x, const double* y, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vaddq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
  for (; i < n; ++i) out[i] = x[i] + y[i];
}

void offset(const double* a, const double* b, const double* c, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(b + i), vld1q_f64(a + i));
    vst1q_f64(out + i, vaddq_f64(d, vld1q_f64(c + i)));
  }
  for (; i < n; ++i) out[i] = (b[i] - a[i]) + c[i];
}

double adagrad_steps(const double* grad, const double* accum, double lr, double* step,
                     std::size_t n) {
  const float64x2_t vlr = vdupq_n_f64(lr);
  const float64x2_t big = vdupq_n_f64(std::numeric_limits<double>::max());
  float64x2_t worst = vdupq_n_f64(0.0);
  uint64x2_t ok = vdupq_n_u64(~0ULL);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t s =
        vdivq_f64(vmulq_f64(vlr, vld1q_f64(grad + i)), vsqrtq_f64(vld1q_f64(accum + i)));
    vst1q_f64(step + i, s);
    const float64x2_t mag = vabsq_f64(s);
    ok = vandq_u64(ok, vcleq_f64(mag, big));
    worst = vmaxnmq_f64(worst, mag);
  }
  double w = vmaxvq_f64(worst);
  bool finite = vgetq_lane_u64(ok, 0) != 0 && vgetq_lane_u64(ok, 1) != 0;
  for (; i < n; ++i) {
    const double s = (lr * grad[i]) / std::sqrt(accum[i]);
    step[i] = s;
    const double mag = std::fabs(s);
    finite = finite && mag <= std::numeric_limits<double>::max();
    w = mag > w ? mag : w;
  }
  return finite ? w : std::numeric_limits<double>::infinity();
}

void adagrad_apply(double* theta, double* accum, const double* step, const double* grad,
                   std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t g = vld1q_f64(grad + i);
    vst1q_f64(theta + i, vsubq_f64(vld1q_f64(theta + i), vld1q_f64(step + i)));
    vst1q_f64(accum + i, vaddq_f64(vld1q_f64(accum + i), vmulq_f64(g, g)));
  }
  for (; i < n; ++i) {
    theta[i] -= step[i];
    accum[i] += grad[i] * grad[i];
  }
}

}  // namespace

const KernelTable& neon_table() {
  static const KernelTable t{Isa::kNeon, "neon", dot,    dot_rows,      scale,
                             add,        offset, adagrad_steps, adagrad_apply};
  return t;
}

}  // namespace glove::kernels::detail
