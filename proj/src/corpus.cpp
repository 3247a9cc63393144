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

#include "glove/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "glove/error.hpp"

namespace glove {
namespace {

bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' || c == '\r';
}

// Returns the offset of the first malformed sequence, or npos.
std::size_t find_invalid_utf8(std::string_view s) {
  const auto* p = reinterpret_cast<const unsigned char*>(s.data());
  const std::size_t n = s.size();
  std::size_t i = 0;
  while (i < n) {
    const unsigned char c = p[i];
    if (c < 0x80) {
      ++i;
      continue;
    }
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return i;
    }
    if (i + len > n) return i;
    for (std::size_t k = 1; k < len; ++k) {
      if ((p[i + k] & 0xC0) != 0x80) return i;
      cp = (cp << 6) | (p[i + k] & 0x3F);
    }
    static constexpr std::uint32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return i;
    i += len;
  }
  return std::string_view::npos;
}

void validate_utf8(std::string_view text) {
  if (const auto bad = find_invalid_utf8(text); bad != std::string_view::npos)
    throw DecodeError(bad);
}

template <typename Fn>
void for_each_token(std::string_view text, Fn&& fn) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && is_space(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < n && !is_space(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) fn(text.substr(start, i - start), start);
  }
}

std::string make_token(std::string_view raw, bool lowercase) {
  std::string tok(raw);
  if (lowercase) {
    for (char& c : tok)
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return tok;
}

bool ranks_before(const VocabEntry& a, const VocabEntry& b) {
  if (a.count != b.count) return a.count > b.count;
  return a.word < b.word;
}

}  // namespace

WordIndex::WordIndex(std::vector<std::string> words) : words_(std::move(words)) {
  ids_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i].empty()) throw DataError("empty word at id " + std::to_string(i));
    if (!ids_.emplace(words_[i], static_cast<WordId>(i)).second)
      throw DataError("duplicate word '" + words_[i] + "'");
  }
}

std::optional<WordId> WordIndex::find(std::string_view word) const {
  const auto it = ids_.find(word);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

WordId WordIndex::id(std::string_view word) const {
  if (auto found = find(word)) return *found;
  throw UnknownWordError(std::string(word));
}

Vocabulary::Vocabulary(std::vector<VocabEntry> entries) : entries_(std::move(entries)) {
  std::vector<std::string> words;
  words.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].count == 0)
      throw DataError("vocabulary word '" + entries_[i].word + "' has zero count");
    if (i > 0 && !ranks_before(entries_[i - 1], entries_[i]))
      throw DataError("vocabulary not ordered by count then word at id " + std::to_string(i));
    words.push_back(entries_[i].word);
  }
  index_ = WordIndex(std::move(words));
}

std::uint64_t Vocabulary::total_count() const noexcept {
  std::uint64_t total = 0;
  for (const auto& e : entries_) total += e.count;
  return total;
}

std::vector<std::string> tokenize(std::string_view text, bool lowercase) {
  validate_utf8(text);
  std::vector<std::string> out;
  for_each_token(text, [&](std::string_view tok, std::size_t) {
    out.push_back(make_token(tok, lowercase));
  });
  return out;
}

TokenizedText tokenize_lines(std::string_view text, bool lowercase) {
  validate_utf8(text);
  TokenizedText out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::size_t before = out.tokens.size();
    for_each_token(text.substr(pos, end - pos), [&](std::string_view tok, std::size_t) {
      out.tokens.push_back(make_token(tok, lowercase));
    });
    if (before > 0 && out.tokens.size() > before) out.sentence_breaks.push_back(before);
    pos = end + 1;
  }
  return out;
}

Vocabulary build_vocab(std::span<const std::string> tokens, std::uint64_t min_count) {
  if (min_count == 0) throw ConfigError("min_count must be at least 1");
  std::unordered_map<std::string_view, std::uint64_t> counts;
  for (const auto& t : tokens) ++counts[t];
  std::vector<VocabEntry> entries;
  for (const auto& [word, count] : counts)
    if (count >= min_count) entries.push_back({std::string(word), count});
  if (entries.empty()) throw EmptyVocabularyError(min_count);
  std::sort(entries.begin(), entries.end(), ranks_before);
  return Vocabulary(std::move(entries));
}

TokenIdStream encode(std::span<const std::string> tokens, const Vocabulary& vocab,
                     std::span<const std::size_t> sentence_breaks) {
  TokenIdStream out;
  out.vocab_size = vocab.size();
  out.ids.reserve(tokens.size());
  std::size_t next_break = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    while (next_break < sentence_breaks.size() && sentence_breaks[next_break] <= i) {
      const std::size_t mapped = out.ids.size();
      if (mapped > 0 && (out.sentence_breaks.empty() || out.sentence_breaks.back() < mapped))
        out.sentence_breaks.push_back(mapped);
      ++next_break;
    }
    if (auto id = vocab.find(tokens[i])) out.ids.push_back(*id);
  }
  // A break recorded at the very end has no tokens after it.
  while (!out.sentence_breaks.empty() && out.sentence_breaks.back() >= out.ids.size())
    out.sentence_breaks.pop_back();
  return out;
}

std::vector<std::string> decode(const TokenIdStream& stream, const Vocabulary& vocab) {
  std::vector<std::string> out;
  out.reserve(stream.ids.size());
  for (WordId id : stream.ids) out.push_back(vocab.word(id));
  return out;
}

void write_vocab(const Vocabulary& vocab, std::ostream& out) {
  for (const auto& e : vocab.entries()) out << e.word << ' ' << e.count << '\n';
}

void save_vocab(const Vocabulary& vocab, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  write_vocab(vocab, out);
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

Vocabulary read_vocab(std::istream& in, const std::string& source) {
  std::vector<VocabEntry> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto sp = line.find(' ');
    if (sp == std::string::npos || sp == 0 || line.find(' ', sp + 1) != std::string::npos)
      throw ParseError(source, lineno, "expected 'word count'");
    std::uint64_t count = 0;
    const char* first = line.data() + sp + 1;
    const char* last = line.data() + line.size();
    const auto [ptr, ec] = std::from_chars(first, last, count);
    if (ec != std::errc() || ptr != last || first == last)
      throw ParseError(source, lineno, "bad count");
    entries.push_back({line.substr(0, sp), count});
  }
  try {
    return Vocabulary(std::move(entries));
  } catch (const ParseError&) {
    throw;
  } catch (const DataError& e) {
    throw DataError(source + ": " + e.what());
  }
}

Vocabulary load_vocab(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return read_vocab(in, path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

}  // namespace glove
