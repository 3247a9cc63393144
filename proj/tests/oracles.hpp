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

// Test-only reference implementations.  These are deliberately naive
// (dense matrices, full scans, plain scalar loops) and share no code with
// the library paths they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "glove/cooccur.hpp"
#include "glove/embeddings.hpp"

namespace glove::testing {

inline const char* kTable1Corpus =
    "NTU is not a small university\n"
    "NTU is a big university\n";

// Rows/columns in the order the published table lists them.
inline const std::vector<std::string> kTable1Words = {"NTU",   "is",         "not", "a",
                                                      "small", "university", "big"};
inline const int kTable1[7][7] = {
    {0, 2, 0, 0, 0, 0, 0},  // NTU
    {2, 0, 1, 1, 0, 0, 0},  // is
    {0, 1, 0, 1, 0, 0, 0},  // not
    {0, 1, 1, 0, 1, 0, 1},  // a
    {0, 0, 0, 1, 0, 1, 0},  // small
    {0, 0, 0, 0, 1, 0, 1},  // university
    {0, 0, 0, 1, 0, 1, 0},  // big
};

// Dense double loop over positions and offsets, accumulating in the same
// (p ascending, d ascending) order the counter documents.
inline std::vector<double> naive_cooccur(const std::vector<WordId>& ids,
                                         const std::vector<std::size_t>& breaks,
                                         std::size_t vocab_size, std::size_t window,
                                         bool symmetric, bool distance_weighting) {
  std::vector<double> m(vocab_size * vocab_size, 0.0);
  for (std::size_t p = 0; p < ids.size(); ++p) {
    std::size_t start = 0;
    for (std::size_t b : breaks)
      if (b <= p) start = b;
    for (std::size_t d = 1; d <= window; ++d) {
      if (d > p || p - d < start) break;
      const double w = distance_weighting ? 1.0 / static_cast<double>(d) : 1.0;
      m[ids[p] * vocab_size + ids[p - d]] += w;
      if (symmetric) m[ids[p - d] * vocab_size + ids[p]] += w;
    }
  }
  return m;
}

inline double naive_dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double naive_cosine(std::span<const double> a, std::span<const double> b) {
  return naive_dot(a, b) / (std::sqrt(naive_dot(a, a)) * std::sqrt(naive_dot(b, b)));
}

// Full scan + full sort by (score desc, id asc).
inline std::vector<std::pair<WordId, double>> brute_force_nearest(
    const EmbeddingSet& e, std::span<const double> query, std::size_t k,
    const std::vector<WordId>& exclude) {
  std::vector<std::pair<WordId, double>> all;
  for (WordId id = 0; id < e.size(); ++id) {
    if (std::find(exclude.begin(), exclude.end(), id) != exclude.end()) continue;
    const auto v = e.vector(id);
    const double n = std::sqrt(naive_dot(v, v));
    const double score = n > 0.0 ? naive_cosine(v, query) : 0.0;
    all.emplace_back(id, score);
  }
  std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) {
    return x.second != y.second ? x.second > y.second : x.first < y.first;
  });
  if (all.size() > k) all.resize(k);
  return all;
}

// argmax over all candidates of cos(v_w, b^ - a^ + c^), excluding a, b, c.
inline WordId brute_force_analogy(const EmbeddingSet& e, WordId a, WordId b, WordId c) {
  const std::size_t d = e.dim();
  auto unit = [&](WordId id) {
    const auto v = e.vector(id);
    const double n = std::sqrt(naive_dot(v, v));
    std::vector<double> u(d);
    for (std::size_t k = 0; k < d; ++k) u[k] = v[k] / n;
    return u;
  };
  const auto ua = unit(a), ub = unit(b), uc = unit(c);
  std::vector<double> q(d);
  for (std::size_t k = 0; k < d; ++k) q[k] = ub[k] - ua[k] + uc[k];
  WordId best = 0;
  double best_score = -2.0;
  bool found = false;
  for (WordId id = 0; id < e.size(); ++id) {
    if (id == a || id == b || id == c) continue;
    const double s = naive_cosine(e.vector(id), q);
    if (!found || s > best_score) {
      best = id;
      best_score = s;
      found = true;
    }
  }
  return best;
}

inline EmbeddingSet random_embeddings(std::size_t n, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<std::string> words;
  std::vector<double> data;
  for (std::size_t i = 0; i < n; ++i) {
    words.push_back("w" + std::to_string(i));
    for (std::size_t k = 0; k < dim; ++k) data.push_back(g(rng));
  }
  return EmbeddingSet(WordIndex(std::move(words)), dim, std::move(data));
}

}  // namespace glove::testing
