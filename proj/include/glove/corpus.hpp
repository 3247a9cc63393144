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

// Tokenization, frequency-ranked vocabularies and id streams.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace glove {

using WordId = std::uint32_t;

// Bijection between words and dense ids 0..size()-1.
class WordIndex {
 public:
  WordIndex() = default;
  // Throws DataError on duplicate or empty words.
  explicit WordIndex(std::vector<std::string> words);

  std::size_t size() const noexcept { return words_.size(); }
  bool empty() const noexcept { return words_.empty(); }
  std::optional<WordId> find(std::string_view word) const;
  // Throws UnknownWordError.
  WordId id(std::string_view word) const;
  const std::string& word(WordId id) const { return words_.at(id); }
  const std::vector<std::string>& words() const noexcept { return words_; }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::vector<std::string> words_;
  std::unordered_map<std::string, WordId, Hash, std::equal_to<>> ids_;
};

struct VocabEntry {
  std::string word;
  std::uint64_t count = 0;

  friend bool operator==(const VocabEntry&, const VocabEntry&) = default;
};

// Words ordered by non-increasing count, ties broken by the lexicographically
// smaller word.  Immutable after construction.
class Vocabulary {
 public:
  Vocabulary() = default;
  // Validates the ordering invariant; throws DataError when violated.
  explicit Vocabulary(std::vector<VocabEntry> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::vector<VocabEntry>& entries() const noexcept { return entries_; }
  const WordIndex& index() const noexcept { return index_; }
  std::optional<WordId> find(std::string_view word) const { return index_.find(word); }
  WordId id(std::string_view word) const { return index_.id(word); }
  const std::string& word(WordId id) const { return entries_.at(id).word; }
  std::uint64_t count(WordId id) const { return entries_.at(id).count; }
  std::uint64_t total_count() const noexcept;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<VocabEntry> entries_;
  WordIndex index_;
};

struct TokenizedText {
  std::vector<std::string> tokens;
  // Token positions that start a new sentence; windows never span one.
  std::vector<std::size_t> sentence_breaks;
};

struct TokenIdStream {
  std::vector<WordId> ids;
  std::vector<std::size_t> sentence_breaks;
  std::size_t vocab_size = 0;
};

// Splits on ASCII whitespace.  Throws DecodeError on malformed UTF-8.
std::vector<std::string> tokenize(std::string_view text, bool lowercase);

// Like tokenize(), but every line boundary that separates two non-empty
// lines becomes a sentence break.
TokenizedText tokenize_lines(std::string_view text, bool lowercase);

// Throws ConfigError if min_count == 0, EmptyVocabularyError if nothing
// survives the cutoff.
Vocabulary build_vocab(std::span<const std::string> tokens, std::uint64_t min_count);

// Out-of-vocabulary tokens are dropped; breaks are remapped onto the
// surviving tokens.
TokenIdStream encode(std::span<const std::string> tokens, const Vocabulary& vocab,
                     std::span<const std::size_t> sentence_breaks = {});

std::vector<std::string> decode(const TokenIdStream& stream, const Vocabulary& vocab);

// `word count` per line, id = line number.
void write_vocab(const Vocabulary& vocab, std::ostream& out);
void save_vocab(const Vocabulary& vocab, const std::filesystem::path& path);
Vocabulary read_vocab(std::istream& in, const std::string& source = "<vocab>");
Vocabulary load_vocab(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

}  // namespace glove
