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

// Sparse word-word co-occurrence counts and the conditional probabilities
// derived from them.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "glove/corpus.hpp"

namespace glove {

struct CooccurRecord {
  WordId target = 0;
  WordId context = 0;
  double value = 0.0;

  friend bool operator==(const CooccurRecord&, const CooccurRecord&) = default;
};

struct CountOptions {
  std::size_t window = 15;
  bool symmetric = true;
  bool distance_weighting = true;
};

// Records unique per (target, context), held sorted by target then context.
class CooccurSet {
 public:
  CooccurSet() = default;
  // Accepts records in any order.  Throws DataError on duplicate pairs,
  // non-positive or non-finite values, or ids >= vocab_size.
  CooccurSet(std::size_t vocab_size, std::vector<CooccurRecord> records);

  std::size_t vocab_size() const noexcept { return vocab_size_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }
  std::span<const CooccurRecord> records() const noexcept { return records_; }
  std::span<const CooccurRecord> row(WordId target) const;
  // M_i, summed in ascending context order.
  double row_total(WordId target) const { return row_totals_.at(target); }
  std::span<const double> row_totals() const noexcept { return row_totals_; }
  // 0 when the pair was never observed.
  double value(WordId target, WordId context) const;
  double total() const noexcept;

  friend bool operator==(const CooccurSet& a, const CooccurSet& b) {
    return a.vocab_size_ == b.vocab_size_ && a.records_ == b.records_;
  }

 private:
  std::size_t vocab_size_ = 0;
  std::vector<CooccurRecord> records_;
  std::vector<std::size_t> row_begin_;
  std::vector<double> row_totals_;
};

// Slides a window over the stream.  For each position p and offset d in
// 1..window with p-d in the same sentence, adds 1 (or 1/d) to
// (id[p], id[p-d]) and, if symmetric, to (id[p-d], id[p]).
CooccurSet count_cooccurrences(const TokenIdStream& stream, const CountOptions& options);

// Counts segments on up to `threads` workers and merges them.  Segments are
// cut at sentence breaks when the stream has them; otherwise each cut acts as
// a sentence break and drops at most window*(window+1)/2 pairs per direction.
CooccurSet count_cooccurrences_parallel(const TokenIdStream& stream, const CountOptions& options,
                                        std::size_t threads);

// Sums values per pair.  Equal pairs are added in shard order.
CooccurSet merge(std::span<const CooccurSet> shards);

// P(j | i) = M_ij / M_i.  Throws UndefinedRowError when M_i == 0; `vocab`
// only names the row in the message.
double probability(const CooccurSet& set, WordId i, WordId j, const Vocabulary* vocab = nullptr);

struct ProbabilityRatio {
  enum class Kind { kFinite, kInfinite, kIndeterminate };
  Kind kind = Kind::kFinite;
  double value = 0.0;  // meaningful for kFinite only
};

// P(z | i) / P(z | j).
ProbabilityRatio probability_ratio(const CooccurSet& set, WordId i, WordId j, WordId z,
                                   const Vocabulary* vocab = nullptr);

// Deterministic permutation for a given seed.
std::vector<CooccurRecord> shuffle(std::span<const CooccurRecord> records, std::uint64_t seed);
inline std::vector<CooccurRecord> shuffle(const CooccurSet& set, std::uint64_t seed) {
  return shuffle(set.records(), seed);
}

// Binary: little-endian (u32 target, u32 context, f64 value), 16 bytes per
// record, no header.
void write_records_binary(std::span<const CooccurRecord> records, std::ostream& out);
std::vector<CooccurRecord> read_records_binary(std::istream& in, const std::string& source);
// Text: `target context value` with shortest round-trip decimals.
void write_records_text(std::span<const CooccurRecord> records, std::ostream& out);
std::vector<CooccurRecord> read_records_text(std::istream& in, const std::string& source);

enum class RecordFormat { kBinary, kText };
void save_records(std::span<const CooccurRecord> records, const std::filesystem::path& path,
                  RecordFormat format = RecordFormat::kBinary);
std::vector<CooccurRecord> load_records(const std::filesystem::path& path,
                                        RecordFormat format = RecordFormat::kBinary);

}  // namespace glove
