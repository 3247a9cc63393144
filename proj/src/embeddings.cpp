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

#include "glove/embeddings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "glove/error.hpp"
#include "glove/kernels.hpp"

namespace glove {
namespace {

bool better(const Neighbor& a, const Neighbor& b) {
  return a.score != b.score ? a.score > b.score : a.id < b.id;
}

std::vector<double> normalized(std::span<const double> v) {
  const double n = std::sqrt(kernels::active().dot(v.data(), v.data(), v.size()));
  if (!(n > 0.0)) throw DegenerateVectorError("query vector has zero length");
  std::vector<double> out(v.size());
  kernels::active().scale(1.0 / n, v.data(), out.data(), v.size());
  return out;
}

}  // namespace

std::string_view combine_mode_name(CombineMode mode) {
  switch (mode) {
    case CombineMode::kTargetOnly:
      return "target";
    case CombineMode::kSum:
      return "sum";
    case CombineMode::kConcat:
      return "concat";
  }
  return "sum";
}

CombineMode parse_combine_mode(std::string_view name) {
  if (name == "target") return CombineMode::kTargetOnly;
  if (name == "sum") return CombineMode::kSum;
  if (name == "concat") return CombineMode::kConcat;
  throw ConfigError("unknown combine mode '" + std::string(name) + "'");
}

EmbeddingSet::EmbeddingSet(WordIndex words, std::size_t dim, std::vector<double> data)
    : words_(std::move(words)), dim_(dim), data_(std::move(data)) {
  if (data_.size() != words_.size() * dim_)
    throw DataError("embedding matrix has " + std::to_string(data_.size()) + " entries, expected " +
                    std::to_string(words_.size() * dim_));
  for (double x : data_)
    if (!std::isfinite(x)) throw DataError("embedding contains a non-finite value");
  const auto& k = kernels::active();
  unit_.assign(data_.size(), 0.0);
  norms_.assign(words_.size(), 0.0);
  for (std::size_t r = 0; r < words_.size(); ++r) {
    const double* row = data_.data() + r * dim_;
    const double n = std::sqrt(k.dot(row, row, dim_));
    norms_[r] = n;
    if (n > 0.0) k.scale(1.0 / n, row, unit_.data() + r * dim_, dim_);
  }
}

std::span<const double> EmbeddingSet::vector(WordId id) const {
  if (id >= size()) throw ConfigError("word id out of range: " + std::to_string(id));
  return std::span<const double>(data_).subspan(std::size_t{id} * dim_, dim_);
}

std::span<const double> EmbeddingSet::vector(std::string_view word) const {
  return vector(words_.id(word));
}

std::span<const double> EmbeddingSet::unit(WordId id) const {
  if (id >= size()) throw ConfigError("word id out of range: " + std::to_string(id));
  return std::span<const double>(unit_).subspan(std::size_t{id} * dim_, dim_);
}

std::size_t EmbeddingSet::zero_rows() const {
  return static_cast<std::size_t>(std::count(norms_.begin(), norms_.end(), 0.0));
}

EmbeddingSet export_embeddings(const ModelParams& params, const Vocabulary& vocab,
                               CombineMode mode) {
  if (params.vocab_size() != vocab.size())
    throw ConfigError("parameter rows (" + std::to_string(params.vocab_size()) +
                      ") do not match vocabulary size (" + std::to_string(vocab.size()) + ")");
  const std::size_t n = vocab.size();
  const std::size_t d = params.dim();
  std::vector<double> data;
  std::size_t out_dim = d;
  switch (mode) {
    case CombineMode::kTargetOnly:
      data.assign(params.word_matrix().begin(), params.word_matrix().end());
      break;
    case CombineMode::kSum:
      data.resize(n * d);
      kernels::active().add(params.word_matrix().data(), params.context_matrix().data(),
                            data.data(), n * d);
      break;
    case CombineMode::kConcat:
      out_dim = 2 * d;
      data.reserve(n * out_dim);
      for (WordId i = 0; i < n; ++i) {
        const auto w = params.word(i);
        const auto c = params.context(i);
        data.insert(data.end(), w.begin(), w.end());
        data.insert(data.end(), c.begin(), c.end());
      }
      break;
  }
  return EmbeddingSet(vocab.index(), out_dim, std::move(data));
}

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ConfigError("cosine of vectors with different dimensions");
  const auto& k = kernels::active();
  const double na = std::sqrt(k.dot(a.data(), a.data(), a.size()));
  const double nb = std::sqrt(k.dot(b.data(), b.data(), b.size()));
  if (!(na > 0.0) || !(nb > 0.0)) throw DegenerateVectorError("cosine of a zero vector");
  const double c = k.dot(a.data(), b.data(), a.size()) / (na * nb);
  return std::clamp(c, -1.0, 1.0);
}

double cosine(const EmbeddingSet& e, std::string_view a, std::string_view b) {
  const auto va = e.vector(a);
  const auto vb = e.vector(b);
  try {
    return cosine(va, vb);
  } catch (const DegenerateVectorError&) {
    throw DegenerateVectorError("zero vector for '" +
                                std::string(e.norm(e.words().id(a)) > 0.0 ? b : a) + "'");
  }
}

std::vector<Neighbor> nearest(const EmbeddingSet& e, std::span<const double> query, std::size_t k,
                              std::span<const WordId> exclude) {
  if (k < 1) throw ConfigError("k must be at least 1");
  if (query.size() != e.dim()) throw ConfigError("query dimension does not match embeddings");
  const std::vector<double> q = normalized(query);
  std::vector<double> scores(e.size());
  kernels::active().dot_rows(e.size() == 0 ? nullptr : e.unit(0).data(), e.size(), e.dim(),
                             q.data(), scores.data());
  std::vector<char> skip(e.size(), 0);
  for (WordId id : exclude)
    if (id < e.size()) skip[id] = 1;
  std::vector<Neighbor> all;
  all.reserve(e.size());
  for (WordId id = 0; id < e.size(); ++id)
    if (!skip[id]) all.push_back({id, scores[id]});
  const std::size_t keep = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(),
                    better);
  all.resize(keep);
  return all;
}

std::vector<double> analogy_query(const EmbeddingSet& e, WordId a, WordId b, WordId c) {
  std::vector<double> q(e.dim());
  kernels::active().offset(e.unit(a).data(), e.unit(b).data(), e.unit(c).data(), q.data(),
                           e.dim());
  return q;
}

std::vector<Neighbor> analogy_candidates(const EmbeddingSet& e, WordId a, WordId b, WordId c,
                                         std::size_t k) {
  const std::vector<double> q = analogy_query(e, a, b, c);
  const WordId excluded[] = {a, b, c};
  return nearest(e, q, k, excluded);
}

std::string solve_analogy(const EmbeddingSet& e, std::string_view a, std::string_view b,
                          std::string_view c) {
  const WordId ia = e.words().id(a);
  const WordId ib = e.words().id(b);
  const WordId ic = e.words().id(c);
  const auto best = analogy_candidates(e, ia, ib, ic, 1);
  if (best.empty()) throw DataError("no candidate words outside the analogy query");
  return e.words().word(best.front().id);
}

void write_vectors(const EmbeddingSet& e, std::ostream& out) {
  std::string line;
  char buf[32];
  for (WordId r = 0; r < e.size(); ++r) {
    line = e.words().word(r);
    for (double x : e.vector(r)) {
      const auto res = std::to_chars(buf, buf + sizeof buf, x);
      line += ' ';
      line.append(buf, res.ptr);
    }
    line += '\n';
    out << line;
  }
}

void save_vectors(const EmbeddingSet& e, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  write_vectors(e, out);
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

EmbeddingSet read_vectors(std::istream& in, const std::string& source) {
  std::vector<std::string> words;
  std::vector<double> data;
  std::size_t dim = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto sp = line.find(' ');
    if (sp == std::string::npos || sp == 0) throw ParseError(source, lineno, "expected 'word v1 ... vd'");
    std::size_t fields = 0;
    const char* p = line.data() + sp;
    const char* end = line.data() + line.size();
    while (p < end) {
      if (*p != ' ' || p + 1 == end) throw ParseError(source, lineno, "malformed value separator");
      ++p;
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(p, end, v);
      if (ec != std::errc() || (ptr != end && *ptr != ' '))
        throw ParseError(source, lineno, "bad number");
      data.push_back(v);
      ++fields;
      p = ptr;
    }
    if (lineno == 1) {
      dim = fields;
    } else if (fields != dim) {
      throw ParseError(source, lineno,
                       "row has " + std::to_string(fields) + " values, expected " +
                           std::to_string(dim));
    }
    words.push_back(line.substr(0, sp));
  }
  try {
    return EmbeddingSet(WordIndex(std::move(words)), dim, std::move(data));
  } catch (const ParseError&) {
    throw;
  } catch (const DataError& err) {
    throw DataError(source + ": " + err.what());
  }
}

EmbeddingSet load_vectors(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return read_vectors(in, path.string());
}

}  // namespace glove
