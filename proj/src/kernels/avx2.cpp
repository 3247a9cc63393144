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

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "tables.hpp"

namespace glove::kernels::detail {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  if (i + 4 <= n) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    i += 4;
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void dot_rows(const double* rows, std::size_t nrows, std::size_t dim, const double* q,
              double* out) {
  for (std::size_t r = 0; r < nrows; ++r) out[r] = dot(rows + r * dim, q, dim);
}

void scale(double s, const double* x, double* out, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, _mm256_mul_pd(vs, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) out[i] = s * x[i];
}

void add(const double* x, const double* y, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) out[i] = x[i] + y[i];
}

void offset(const double* a, const double* b, const double* c, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(b + i), _mm256_loadu_pd(a + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(d, _mm256_loadu_pd(c + i)));
  }
  for (; i < n; ++i) out[i] = (b[i] - a[i]) + c[i];
}

double adagrad_steps(const double* grad, const double* accum, double lr, double* step,
                     std::size_t n) {
  const __m256d vlr = _mm256_set1_pd(lr);
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256d big = _mm256_set1_pd(std::numeric_limits<double>::max());
  __m256d worst = _mm256_setzero_pd();
  __m256d ok = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d num = _mm256_mul_pd(vlr, _mm256_loadu_pd(grad + i));
    const __m256d s = _mm256_div_pd(num, _mm256_sqrt_pd(_mm256_loadu_pd(accum + i)));
    _mm256_storeu_pd(step + i, s);
    const __m256d mag = _mm256_andnot_pd(sign, s);
    ok = _mm256_and_pd(ok, _mm256_cmp_pd(mag, big, _CMP_LE_OQ));
    worst = _mm256_max_pd(worst, mag);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, worst);
  double w = lanes[0];
  for (int k = 1; k < 4; ++k) w = lanes[k] > w ? lanes[k] : w;
  bool finite = _mm256_movemask_pd(ok) == 0xF;
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
  for (; i + 4 <= n; i += 4) {
    const __m256d g = _mm256_loadu_pd(grad + i);
    _mm256_storeu_pd(theta + i, _mm256_sub_pd(_mm256_loadu_pd(theta + i), _mm256_loadu_pd(step + i)));
    _mm256_storeu_pd(accum + i, _mm256_add_pd(_mm256_loadu_pd(accum + i), _mm256_mul_pd(g, g)));
  }
  for (; i < n; ++i) {
    theta[i] -= step[i];
    accum[i] += grad[i] * grad[i];
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable t{Isa::kAvx2, "avx2", dot,    dot_rows,      scale,
                             add,        offset, adagrad_steps, adagrad_apply};
  return t;
}

}  // namespace glove::kernels::detail
