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

// Trained vectors and the queries run against them: cosine similarity,
// k-nearest neighbours and 3CosAdd analogies.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "glove/corpus.hpp"
#include "glove/trainer.hpp"

namespace glove {

enum class CombineMode { kTargetOnly, kSum, kConcat };

std::string_view combine_mode_name(CombineMode mode);
// Accepts "target", "sum", "concat"; throws ConfigError.
CombineMode parse_combine_mode(std::string_view name);

// Stored vectors are kept exactly as given; unit-length copies are derived
// once for the similarity queries.
class EmbeddingSet {
 public:
  EmbeddingSet() = default;
  // `data` is row-major words.size() x dim.  Throws DataError on shape
  // mismatch or non-finite entries.
  EmbeddingSet(WordIndex words, std::size_t dim, std::vector<double> data);

  std::size_t size() const noexcept { return words_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  const WordIndex& words() const noexcept { return words_; }
  std::span<const double> data() const noexcept { return data_; }
  std::span<const double> vector(WordId id) const;
  // Throws UnknownWordError.
  std::span<const double> vector(std::string_view word) const;
  std::span<const double> unit(WordId id) const;
  double norm(WordId id) const { return norms_.at(id); }
  std::size_t zero_rows() const;

  friend bool operator==(const EmbeddingSet& a, const EmbeddingSet& b) {
    return a.dim_ == b.dim_ && a.words_.words() == b.words_.words() && a.data_ == b.data_;
  }

 private:
  WordIndex words_;
  std::size_t dim_ = 0;
  std::vector<double> data_;
  std::vector<double> unit_;
  std::vector<double> norms_;
};

EmbeddingSet export_embeddings(const ModelParams& params, const Vocabulary& vocab,
                               CombineMode mode = CombineMode::kSum);

// Throws DegenerateVectorError when either vector is all zero.
double cosine(std::span<const double> a, std::span<const double> b);
// Throws UnknownWordError / DegenerateVectorError.
double cosine(const EmbeddingSet& e, std::string_view a, std::string_view b);

struct Neighbor {
  WordId id = 0;
  double score = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// Top-k rows by descending cosine with `query`, ties by ascending id.
// Returns fewer than k when not enough rows remain after exclusion.
std::vector<Neighbor> nearest(const EmbeddingSet& e, std::span<const double> query, std::size_t k,
                              std::span<const WordId> exclude = {});

// Unit-normalized b - a + c.
std::vector<double> analogy_query(const EmbeddingSet& e, WordId a, WordId b, WordId c);

// Best k answers for "a is to b as c is to ?", excluding a, b and c.
std::vector<Neighbor> analogy_candidates(const EmbeddingSet& e, WordId a, WordId b, WordId c,
                                         std::size_t k);

// Throws UnknownWordError for any out-of-vocabulary input.
std::string solve_analogy(const EmbeddingSet& e, std::string_view a, std::string_view b,
                          std::string_view c);

// `word v1 ... vd`, shortest round-trip decimals.
void write_vectors(const EmbeddingSet& e, std::ostream& out);
void save_vectors(const EmbeddingSet& e, const std::filesystem::path& path);
// Infers d from the first row; rejects ragged rows with ParseError.
EmbeddingSet read_vectors(std::istream& in, const std::string& source = "<vectors>");
EmbeddingSet load_vectors(const std::filesystem::path& path);

}  // namespace glove
