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

#include <cmath>
#include <limits>

#include "tables.hpp"

namespace glove::kernels::detail {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void dot_rows(const double* rows, std::size_t nrows, std::size_t dim, const double* q,
              double* out) {
  for (std::size_t r = 0; r < nrows; ++r) out[r] = dot(rows + r * dim, q, dim);
}

void scale(double s, const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = s * x[i];
}

void add(const double* x, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + y[i];
}

void offset(const double* a, const double* b, const double* c, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = (b[i] - a[i]) + c[i];
}

double adagrad_steps(const double* grad, const double* accum, double lr, double* step,
                     std::size_t n) {
  double worst = 0.0;
  bool finite = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = (lr * grad[i]) / std::sqrt(accum[i]);
    step[i] = s;
    const double mag = std::fabs(s);
    finite = finite && mag <= std::numeric_limits<double>::max();
    worst = mag > worst ? mag : worst;
  }
  return finite ? worst : std::numeric_limits<double>::infinity();
}

void adagrad_apply(double* theta, double* accum, const double* step, const double* grad,
                   std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    theta[i] -= step[i];
    accum[i] += grad[i] * grad[i];
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{Isa::kScalar, "scalar", dot,    dot_rows,      scale,
                             add,          offset,   adagrad_steps, adagrad_apply};
  return t;
}

}  // namespace glove::kernels::detail
