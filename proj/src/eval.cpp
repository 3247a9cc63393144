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

#include "glove/eval.hpp"

#include <fmt/format.h>

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "glove/error.hpp"

namespace glove {
namespace {

std::string lower(std::string s) {
  for (char& ch : s)
    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
  return s;
}

enum class Outcome : char { kSkipped, kWrong, kRight };

Outcome answer(const EmbeddingSet& e, const AnalogyQuestion& q) {
  const auto& idx = e.words();
  const auto a = idx.find(q.a), b = idx.find(q.b), c = idx.find(q.c), d = idx.find(q.expected);
  if (!a || !b || !c || !d) return Outcome::kSkipped;
  std::vector<Neighbor> best;
  try {
    best = analogy_candidates(e, *a, *b, *c, 1);
  } catch (const DegenerateVectorError&) {
    return Outcome::kWrong;
  }
  return !best.empty() && best.front().id == *d ? Outcome::kRight : Outcome::kWrong;
}

std::string fmt_acc(const std::optional<double>& v) {
  return v ? fmt::format("{:.2f}%", 100.0 * *v) : std::string("n/a");
}

}  // namespace

std::string_view kind_name(QuestionKind kind) {
  return kind == QuestionKind::kSyntactic ? "syntactic" : "semantic";
}

std::vector<AnalogyQuestion> read_questions(std::istream& in, const std::string& source) {
  std::vector<AnalogyQuestion> out;
  std::string line, category;
  QuestionKind kind = QuestionKind::kSemantic;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line.front() == ':') {
      std::istringstream ss(line.substr(1));
      if (!(ss >> category)) throw ParseError(source, lineno, "section header without a name");
      kind = category.rfind("gram", 0) == 0 ? QuestionKind::kSyntactic : QuestionKind::kSemantic;
      continue;
    }
    std::istringstream ss(line);
    std::vector<std::string> words;
    for (std::string w; ss >> w;) words.push_back(lower(std::move(w)));
    if (words.size() != 4)
      throw ParseError(source, lineno,
                       "expected 4 words, found " + std::to_string(words.size()));
    if (category.empty()) throw ParseError(source, lineno, "question before any ': section'");
    out.push_back({words[0], words[1], words[2], words[3], category, kind});
  }
  return out;
}

std::vector<AnalogyQuestion> load_questions(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return read_questions(in, path.string());
}

std::optional<double> Tally::accuracy() const {
  if (attempted == 0) return std::nullopt;
  return static_cast<double>(correct) / static_cast<double>(attempted);
}

std::optional<double> Tally::coverage_adjusted() const {
  if (total == 0) return std::nullopt;
  return static_cast<double>(correct) / static_cast<double>(total);
}

Tally& Tally::operator+=(const Tally& o) {
  total += o.total;
  attempted += o.attempted;
  correct += o.correct;
  skipped_oov += o.skipped_oov;
  return *this;
}

EvalReport evaluate(const EmbeddingSet& e, const std::vector<AnalogyQuestion>& questions,
                    std::size_t threads) {
  std::vector<Outcome> outcomes(questions.size(), Outcome::kSkipped);
  threads = std::max<std::size_t>(1, std::min(threads, questions.size()));
  if (threads == 1) {
    for (std::size_t q = 0; q < questions.size(); ++q) outcomes[q] = answer(e, questions[q]);
  } else {
    std::vector<std::jthread> workers;
    for (std::size_t t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        for (std::size_t q = t; q < questions.size(); q += threads)
          outcomes[q] = answer(e, questions[q]);
      });
    }
  }

  EvalReport report;
  std::unordered_map<std::string, std::size_t> slot;
  for (std::size_t q = 0; q < questions.size(); ++q) {
    const auto& question = questions[q];
    auto [it, fresh] = slot.emplace(question.category, report.categories.size());
    if (fresh) report.categories.push_back({question.category, question.kind, {}});
    Tally& t = report.categories[it->second].tally;
    ++t.total;
    switch (outcomes[q]) {
      case Outcome::kSkipped:
        ++t.skipped_oov;
        break;
      case Outcome::kRight:
        ++t.correct;
        [[fallthrough]];
      case Outcome::kWrong:
        ++t.attempted;
        break;
    }
  }
  for (const auto& c : report.categories) {
    (c.kind == QuestionKind::kSyntactic ? report.syntactic : report.semantic) += c.tally;
    report.overall += c.tally;
  }
  return report;
}

void write_report_text(const EvalReport& report, std::ostream& out) {
  out << fmt::format("{:<30} {:>9} {:>9} {:>8} {:>9} {:>10}\n", "category", "attempted",
                     "correct", "skipped", "accuracy", "coverage");
  auto row = [&](const std::string& name, const Tally& t) {
    out << fmt::format("{:<30} {:>9} {:>9} {:>8} {:>9} {:>10}\n", name, t.attempted, t.correct,
                       t.skipped_oov, fmt_acc(t.accuracy()), fmt_acc(t.coverage_adjusted()));
  };
  for (const auto& c : report.categories) row(c.name, c.tally);
  out << std::string(80, '-') << '\n';
  row("semantic", report.semantic);
  row("syntactic", report.syntactic);
  row("overall", report.overall);
}

void write_report_csv(const EvalReport& report, std::ostream& out) {
  out << "category,kind,attempted,correct,skipped,accuracy\n";
  auto row = [&](const std::string& name, std::string_view kind, const Tally& t) {
    const auto acc = t.accuracy();
    out << name << ',' << kind << ',' << t.attempted << ',' << t.correct << ',' << t.skipped_oov
        << ',' << (acc ? fmt::format("{:.6f}", *acc) : std::string("NA")) << '\n';
  };
  for (const auto& c : report.categories) row(c.name, kind_name(c.kind), c.tally);
  row("semantic", "rollup", report.semantic);
  row("syntactic", "rollup", report.syntactic);
  row("overall", "rollup", report.overall);
}

std::vector<SimilarityRow> similarity_report(
    const EmbeddingSet& e, const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<SimilarityRow> rows;
  rows.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    SimilarityRow row{a, b, std::nullopt};
    try {
      row.cosine = cosine(e, a, b);
    } catch (const DataError&) {
      // OOV or zero vector: reported without a value.
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_similarity_table(const std::vector<SimilarityRow>& rows, std::ostream& out) {
  for (const auto& r : rows)
    out << r.a << ' ' << r.b << ' ' << (r.cosine ? fmt::format("{:.6f}", *r.cosine) : "OOV")
        << '\n';
}

std::vector<std::pair<std::string, std::string>> read_word_pairs(std::istream& in,
                                                                 const std::string& source) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::vector<std::string> words;
    for (std::string w; ss >> w;) words.push_back(std::move(w));
    if (words.empty()) continue;
    if (words.size() != 2)
      throw ParseError(source, lineno, "expected 2 words, found " + std::to_string(words.size()));
    out.emplace_back(std::move(words[0]), std::move(words[1]));
  }
  return out;
}

}  // namespace glove
