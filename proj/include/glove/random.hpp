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

// Portable seeded randomness.  Draws are defined here rather than through
// <random> distributions so that sequences match across standard libraries.

#include <cstdint>
#include <random>

namespace glove {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Derives an independent stream seed for a named pipeline stage.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stage) {
  return splitmix64(splitmix64(seed) ^ (stage * 0xD1B54A32D192ED03ULL));
}

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed) { return Engine(splitmix64(seed)); }

// Uniform integer in [0, n), n > 0, by rejection.
inline std::uint64_t uniform_below(Engine& rng, std::uint64_t n) {
  const std::uint64_t limit = -n % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= limit) return r % n;
  }
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Engine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace glove
