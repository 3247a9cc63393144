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

// Analogy accuracy by question category, and similarity tables.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "glove/embeddings.hpp"

namespace glove {

enum class QuestionKind { kSemantic, kSyntactic };

std::string_view kind_name(QuestionKind kind);

struct AnalogyQuestion {
  std::string a, b, c, expected;
  std::string category;
  QuestionKind kind = QuestionKind::kSemantic;

  friend bool operator==(const AnalogyQuestion&, const AnalogyQuestion&) = default;
};

// Sections start with `: name`; names beginning with "gram" are syntactic.
// Each other non-blank line holds exactly four words, lowercased on load.
// Throws ParseError naming the line.
std::vector<AnalogyQuestion> read_questions(std::istream& in,
                                            const std::string& source = "<questions>");
std::vector<AnalogyQuestion> load_questions(const std::filesystem::path& path);

struct Tally {
  std::size_t total = 0;
  std::size_t attempted = 0;
  std::size_t correct = 0;
  std::size_t skipped_oov = 0;

  // correct / attempted; empty when nothing was attempted.
  std::optional<double> accuracy() const;
  // correct / total; empty when there were no questions.
  std::optional<double> coverage_adjusted() const;

  Tally& operator+=(const Tally& o);
  friend bool operator==(const Tally&, const Tally&) = default;
};

struct CategoryResult {
  std::string name;
  QuestionKind kind = QuestionKind::kSemantic;
  Tally tally;

  friend bool operator==(const CategoryResult&, const CategoryResult&) = default;
};

struct EvalReport {
  std::vector<CategoryResult> categories;  // in order of first appearance
  Tally semantic;
  Tally syntactic;
  Tally overall;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

// Questions touching an out-of-vocabulary word are skipped, not failed.
// Results do not depend on `threads`.
EvalReport evaluate(const EmbeddingSet& e, const std::vector<AnalogyQuestion>& questions,
                    std::size_t threads = 1);

// Human-readable table: one line per category, then semantic, syntactic and
// overall rollups with both accuracy conventions.
void write_report_text(const EvalReport& report, std::ostream& out);
// `category,kind,attempted,correct,skipped,accuracy`; rollup rows use kind
// "rollup"; undefined accuracy is written as NA.
void write_report_csv(const EvalReport& report, std::ostream& out);

struct SimilarityRow {
  std::string a, b;
  std::optional<double> cosine;  // empty when a word is out of vocabulary or degenerate
};

std::vector<SimilarityRow> similarity_report(const EmbeddingSet& e,
                                             const std::vector<std::pair<std::string, std::string>>& pairs);
// `a b 0.123456` per row, `a b OOV` for missing words.
void write_similarity_table(const std::vector<SimilarityRow>& rows, std::ostream& out);

// Two whitespace-separated words per non-blank line.
std::vector<std::pair<std::string, std::string>> read_word_pairs(std::istream& in,
                                                                 const std::string& source);

}  // namespace glove
