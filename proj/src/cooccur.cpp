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

#include "glove/cooccur.hpp"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <thread>

#include "glove/error.hpp"
#include "glove/random.hpp"

namespace glove {
namespace {

constexpr std::uint64_t pack(WordId target, WordId context) {
  return (static_cast<std::uint64_t>(target) << 32) | context;
}

std::string row_label(WordId i, const Vocabulary* vocab) {
  if (vocab != nullptr && i < vocab->size()) return vocab->word(i);
  return "#" + std::to_string(i);
}

double checked_row_total(const CooccurSet& set, WordId i, const Vocabulary* vocab) {
  if (i >= set.vocab_size()) throw ConfigError("word id out of range: " + std::to_string(i));
  const double total = set.row_total(i);
  if (!(total > 0.0)) throw UndefinedRowError(i, row_label(i, vocab));
  return total;
}

template <typename T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    std::reverse(b, b + sizeof(T));
    std::memcpy(&v, b, sizeof(T));
  }
  return v;
}

}  // namespace

CooccurSet::CooccurSet(std::size_t vocab_size, std::vector<CooccurRecord> records)
    : vocab_size_(vocab_size), records_(std::move(records)) {
  for (const auto& r : records_) {
    if (r.target >= vocab_size_ || r.context >= vocab_size_)
      throw DataError("co-occurrence record (" + std::to_string(r.target) + ", " +
                      std::to_string(r.context) + ") outside vocabulary of size " +
                      std::to_string(vocab_size_));
    if (!(r.value > 0.0) || !std::isfinite(r.value))
      throw DataError("co-occurrence record (" + std::to_string(r.target) + ", " +
                      std::to_string(r.context) + ") has non-positive value");
  }
  std::sort(records_.begin(), records_.end(), [](const auto& a, const auto& b) {
    return pack(a.target, a.context) < pack(b.target, b.context);
  });
  row_begin_.assign(vocab_size_ + 1, 0);
  row_totals_.assign(vocab_size_, 0.0);
  for (std::size_t k = 0; k < records_.size(); ++k) {
    const auto& r = records_[k];
    if (k > 0 && records_[k - 1].target == r.target && records_[k - 1].context == r.context)
      throw DataError("duplicate co-occurrence record (" + std::to_string(r.target) + ", " +
                      std::to_string(r.context) + ")");
    ++row_begin_[r.target + 1];
    row_totals_[r.target] += r.value;
  }
  for (std::size_t i = 0; i < vocab_size_; ++i) row_begin_[i + 1] += row_begin_[i];
}

std::span<const CooccurRecord> CooccurSet::row(WordId target) const {
  if (target >= vocab_size_) return {};
  return std::span<const CooccurRecord>(records_).subspan(
      row_begin_[target], row_begin_[target + 1] - row_begin_[target]);
}

double CooccurSet::value(WordId target, WordId context) const {
  const auto r = row(target);
  const auto it = std::lower_bound(r.begin(), r.end(), context,
                                   [](const CooccurRecord& rec, WordId c) { return rec.context < c; });
  return it != r.end() && it->context == context ? it->value : 0.0;
}

double CooccurSet::total() const noexcept {
  double sum = 0.0;
  for (double t : row_totals_) sum += t;
  return sum;
}

CooccurSet count_cooccurrences(const TokenIdStream& stream, const CountOptions& options) {
  if (options.window == 0) throw ConfigError("window must be at least 1");
  const auto& ids = stream.ids;
  absl::flat_hash_map<std::uint64_t, double> acc;
  std::size_t next_break = 0;
  std::size_t segment_start = 0;
  for (std::size_t p = 0; p < ids.size(); ++p) {
    while (next_break < stream.sentence_breaks.size() && stream.sentence_breaks[next_break] <= p)
      segment_start = stream.sentence_breaks[next_break++];
    const std::size_t reach = std::min(options.window, p - segment_start);
    for (std::size_t d = 1; d <= reach; ++d) {
      const double w = options.distance_weighting ? 1.0 / static_cast<double>(d) : 1.0;
      acc[pack(ids[p], ids[p - d])] += w;
      if (options.symmetric) acc[pack(ids[p - d], ids[p])] += w;
    }
  }
  std::vector<CooccurRecord> records;
  records.reserve(acc.size());
  for (const auto& [key, value] : acc)
    records.push_back({static_cast<WordId>(key >> 32), static_cast<WordId>(key), value});
  std::size_t vocab_size = stream.vocab_size;
  for (WordId id : ids) vocab_size = std::max<std::size_t>(vocab_size, std::size_t{id} + 1);
  return CooccurSet(vocab_size, std::move(records));
}

CooccurSet count_cooccurrences_parallel(const TokenIdStream& stream, const CountOptions& options,
                                        std::size_t threads) {
  const std::size_t n = stream.ids.size();
  if (threads <= 1 || n < 2 * threads * (options.window + 1))
    return count_cooccurrences(stream, options);

  std::vector<std::size_t> cuts{0};
  for (std::size_t t = 1; t < threads; ++t) {
    std::size_t cut = n * t / threads;
    if (!stream.sentence_breaks.empty()) {
      const auto& br = stream.sentence_breaks;
      auto it = std::lower_bound(br.begin(), br.end(), cut);
      cut = it == br.end() ? br.back() : *it;
    }
    if (cut > cuts.back() && cut < n) cuts.push_back(cut);
  }
  cuts.push_back(n);

  std::vector<TokenIdStream> segments;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    TokenIdStream seg;
    seg.vocab_size = stream.vocab_size;
    seg.ids.assign(stream.ids.begin() + static_cast<std::ptrdiff_t>(cuts[s]),
                   stream.ids.begin() + static_cast<std::ptrdiff_t>(cuts[s + 1]));
    for (std::size_t b : stream.sentence_breaks)
      if (b > cuts[s] && b < cuts[s + 1]) seg.sentence_breaks.push_back(b - cuts[s]);
    segments.push_back(std::move(seg));
  }

  std::vector<CooccurSet> shards(segments.size());
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> failures(segments.size());
  for (std::size_t s = 0; s < segments.size(); ++s) {
    workers.emplace_back([&, s] {
      try {
        shards[s] = count_cooccurrences(segments[s], options);
      } catch (...) {
        failures[s] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);
  return merge(shards);
}

CooccurSet merge(std::span<const CooccurSet> shards) {
  if (shards.empty()) return {};
  const std::size_t vocab_size = shards.front().vocab_size();
  for (const auto& s : shards) {
    if (s.vocab_size() != vocab_size && !s.empty())
      throw ConfigError("cannot merge co-occurrence sets over different vocabularies");
  }

  struct Cursor {
    std::uint64_t key;
    std::size_t shard;
    bool operator>(const Cursor& o) const {
      return key != o.key ? key > o.key : shard > o.shard;
    }
  };
  std::priority_queue<Cursor, std::vector<Cursor>, std::greater<>> heap;
  std::vector<std::size_t> pos(shards.size(), 0);
  auto push_next = [&](std::size_t s) {
    const auto recs = shards[s].records();
    if (pos[s] < recs.size()) heap.push({pack(recs[pos[s]].target, recs[pos[s]].context), s});
  };
  for (std::size_t s = 0; s < shards.size(); ++s) push_next(s);

  std::vector<CooccurRecord> out;
  while (!heap.empty()) {
    const Cursor top = heap.top();
    heap.pop();
    const auto& rec = shards[top.shard].records()[pos[top.shard]++];
    if (!out.empty() && pack(out.back().target, out.back().context) == top.key)
      out.back().value += rec.value;
    else
      out.push_back(rec);
    push_next(top.shard);
  }
  return CooccurSet(vocab_size, std::move(out));
}

double probability(const CooccurSet& set, WordId i, WordId j, const Vocabulary* vocab) {
  const double total = checked_row_total(set, i, vocab);
  return set.value(i, j) / total;
}

ProbabilityRatio probability_ratio(const CooccurSet& set, WordId i, WordId j, WordId z,
                                   const Vocabulary* vocab) {
  const double p_iz = probability(set, i, z, vocab);
  const double p_jz = probability(set, j, z, vocab);
  if (p_jz == 0.0)
    return {p_iz > 0.0 ? ProbabilityRatio::Kind::kInfinite : ProbabilityRatio::Kind::kIndeterminate,
            0.0};
  return {ProbabilityRatio::Kind::kFinite, p_iz / p_jz};
}

std::vector<CooccurRecord> shuffle(std::span<const CooccurRecord> records, std::uint64_t seed) {
  std::vector<CooccurRecord> out(records.begin(), records.end());
  Engine rng = make_engine(seed);
  for (std::size_t i = out.size(); i > 1; --i) {
    const std::size_t j = uniform_below(rng, i);
    std::swap(out[i - 1], out[j]);
  }
  return out;
}

void write_records_binary(std::span<const CooccurRecord> records, std::ostream& out) {
  std::vector<char> buf;
  constexpr std::size_t kChunk = 1 << 16;
  buf.reserve(kChunk * 16);
  for (std::size_t k = 0; k < records.size(); ++k) {
    const std::uint32_t t = to_little(records[k].target);
    const std::uint32_t c = to_little(records[k].context);
    const double v = to_little(records[k].value);
    char rec[16];
    std::memcpy(rec, &t, 4);
    std::memcpy(rec + 4, &c, 4);
    std::memcpy(rec + 8, &v, 8);
    buf.insert(buf.end(), rec, rec + 16);
    if (buf.size() >= kChunk * 16 || k + 1 == records.size()) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
}

std::vector<CooccurRecord> read_records_binary(std::istream& in, const std::string& source) {
  std::vector<CooccurRecord> out;
  char rec[16];
  for (;;) {
    in.read(rec, 16);
    const auto got = in.gcount();
    if (got == 0) break;
    if (got != 16)
      throw ParseError(source, out.size() + 1,
                       "truncated record (file size is not a multiple of 16 bytes)");
    CooccurRecord r;
    std::memcpy(&r.target, rec, 4);
    std::memcpy(&r.context, rec + 4, 4);
    std::memcpy(&r.value, rec + 8, 8);
    r.target = to_little(r.target);
    r.context = to_little(r.context);
    r.value = to_little(r.value);
    out.push_back(r);
  }
  return out;
}

void write_records_text(std::span<const CooccurRecord> records, std::ostream& out) {
  char buf[32];
  for (const auto& r : records) {
    const auto res = std::to_chars(buf, buf + sizeof buf, r.value);
    out << r.target << ' ' << r.context << ' ' << std::string_view(buf, res.ptr - buf) << '\n';
  }
}

std::vector<CooccurRecord> read_records_text(std::istream& in, const std::string& source) {
  std::vector<CooccurRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    CooccurRecord r;
    const char* p = line.data();
    const char* end = p + line.size();
    auto field = [&](auto& value) {
      const auto [ptr, ec] = std::from_chars(p, end, value);
      if (ec != std::errc()) throw ParseError(source, lineno, "expected 'target context value'");
      p = ptr;
    };
    field(r.target);
    if (p == end || *p++ != ' ') throw ParseError(source, lineno, "expected 'target context value'");
    field(r.context);
    if (p == end || *p++ != ' ') throw ParseError(source, lineno, "expected 'target context value'");
    field(r.value);
    if (p != end) throw ParseError(source, lineno, "trailing characters");
    out.push_back(r);
  }
  return out;
}

void save_records(std::span<const CooccurRecord> records, const std::filesystem::path& path,
                  RecordFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  if (format == RecordFormat::kBinary)
    write_records_binary(records, out);
  else
    write_records_text(records, out);
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

std::vector<CooccurRecord> load_records(const std::filesystem::path& path, RecordFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return format == RecordFormat::kBinary ? read_records_binary(in, path.string())
                                         : read_records_text(in, path.string());
}

}  // namespace glove
