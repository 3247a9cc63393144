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

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "glove/error.hpp"
#include "glove/eval.hpp"
#include "oracles.hpp"

namespace glove {
namespace {

std::vector<AnalogyQuestion> parse(const std::string& text) {
  std::istringstream in(text);
  return read_questions(in, "q.txt");
}

TEST(Questions, ParsesSectionsAndKinds) {
  const auto qs = parse(
      ": capital-common-countries\nathens greece baghdad iraq\n\n"
      ": gram3-comparative\nBad Worse Big Bigger\n");
  ASSERT_EQ(qs.size(), 2u);
  EXPECT_EQ(qs[0], (AnalogyQuestion{"athens", "greece", "baghdad", "iraq",
                                    "capital-common-countries", QuestionKind::kSemantic}));
  EXPECT_EQ(qs[1].a, "bad");
  EXPECT_EQ(qs[1].expected, "bigger");
  EXPECT_EQ(qs[1].kind, QuestionKind::kSyntactic);
  EXPECT_EQ(qs[1].category, "gram3-comparative");
}

TEST(Questions, EmptyInput) { EXPECT_TRUE(parse("").empty()); }

TEST(Questions, WrongArityNamesLine) {
  try {
    parse(": family\nboy girl brother sister\nboy girl brother\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("q.txt:3"), std::string::npos);
  }
  EXPECT_THROW(parse(": family\na b c d e\n"), ParseError);
}

TEST(Questions, BundledSetLoads) {
  const auto qs = load_questions(GLOVE_DATA_DIR "/questions-words.txt");
  EXPECT_EQ(qs.size(), 19544u);
  std::size_t semantic = 0;
  for (const auto& q : qs) semantic += q.kind == QuestionKind::kSemantic;
  EXPECT_EQ(semantic, 8869u);
}

TEST(Tally, Accuracies) {
  Tally t;
  EXPECT_FALSE(t.accuracy().has_value());
  EXPECT_FALSE(t.coverage_adjusted().has_value());
  t = {10, 8, 2, 2};
  EXPECT_DOUBLE_EQ(*t.accuracy(), 0.25);
  EXPECT_DOUBLE_EQ(*t.coverage_adjusted(), 0.2);
}

// a:b :: c:d with d the forced answer in every question.
EmbeddingSet forced_fixture() {
  return EmbeddingSet(WordIndex({"a", "b", "c", "d", "e"}), 3,
                      {1, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0.01, 0, 0, 1});
}

TEST(Evaluate, ConstructedFixtureScoresPerfectly) {
  const auto e = forced_fixture();
  const auto qs = parse(": s1\na b c d\nc b a d\n: gram-x\nA B C D\n");
  const auto r = evaluate(e, qs);
  EXPECT_EQ(r.overall.attempted, 3u);
  EXPECT_EQ(r.overall.correct, 3u);
  EXPECT_EQ(*r.overall.accuracy(), 1.0);
  EXPECT_EQ(r.semantic.correct, 2u);
  EXPECT_EQ(r.syntactic.correct, 1u);
  ASSERT_EQ(r.categories.size(), 2u);
  EXPECT_EQ(r.categories[0].name, "s1");
  EXPECT_EQ(r.categories[1].kind, QuestionKind::kSyntactic);
}

TEST(Evaluate, AllOovSkipped) {
  const auto e = forced_fixture();
  const auto qs = parse(": s\na b c zz\nyy b c d\nq r s t\n");
  const auto r = evaluate(e, qs);
  EXPECT_EQ(r.overall.attempted, 0u);
  EXPECT_EQ(r.overall.skipped_oov, 3u);
  EXPECT_FALSE(r.overall.accuracy().has_value());
  std::ostringstream csv;
  write_report_csv(r, csv);
  EXPECT_NE(csv.str().find("s,semantic,0,0,3,NA\n"), std::string::npos);
  EXPECT_NE(csv.str().find("overall,rollup,0,0,3,NA\n"), std::string::npos);
}

std::vector<AnalogyQuestion> random_questions(const EmbeddingSet& e, std::size_t n,
                                              std::mt19937_64& rng) {
  std::vector<AnalogyQuestion> qs;
  const char* cats[] = {"capital", "family", "gram1-x", "gram2-y", "city"};
  for (std::size_t i = 0; i < n; ++i) {
    AnalogyQuestion q;
    auto pick = [&] {
      // A few out-of-vocabulary words keep the skip path busy.
      return rng() % 40 == 0 ? std::string("oov") : std::string(e.words().word(rng() % e.size()));
    };
    q.a = pick();
    q.b = pick();
    q.c = pick();
    q.expected = pick();
    q.category = cats[(i / 50) % 5];
    q.kind = q.category.rfind("gram", 0) == 0 ? QuestionKind::kSyntactic : QuestionKind::kSemantic;
    qs.push_back(q);
  }
  return qs;
}

TEST(Evaluate, MatchesBruteForceOracle) {
  std::mt19937_64 rng(12);
  const auto e = testing::random_embeddings(60, 6, 13);
  auto qs = random_questions(e, 1000, rng);
  // Make a third of the questions answerable so accuracy is not trivially 0.
  for (std::size_t i = 0; i < qs.size(); i += 3) {
    const auto& idx = e.words();
    if (!idx.find(qs[i].a) || !idx.find(qs[i].b) || !idx.find(qs[i].c)) continue;
    qs[i].expected = idx.word(
        testing::brute_force_analogy(e, idx.id(qs[i].a), idx.id(qs[i].b), idx.id(qs[i].c)));
  }
  const auto r = evaluate(e, qs);

  Tally want;
  for (const auto& q : qs) {
    ++want.total;
    const auto& idx = e.words();
    if (!idx.find(q.a) || !idx.find(q.b) || !idx.find(q.c) || !idx.find(q.expected)) {
      ++want.skipped_oov;
      continue;
    }
    ++want.attempted;
    const WordId got = testing::brute_force_analogy(e, idx.id(q.a), idx.id(q.b), idx.id(q.c));
    want.correct += idx.word(got) == q.expected;
  }
  EXPECT_EQ(r.overall, want);
  EXPECT_GT(want.correct, 100u);

  Tally sem, syn, sum;
  for (const auto& c : r.categories) {
    (c.kind == QuestionKind::kSemantic ? sem : syn) += c.tally;
    sum += c.tally;
    EXPECT_EQ(c.tally.attempted + c.tally.skipped_oov, c.tally.total);
    if (c.tally.accuracy()) {
      EXPECT_GE(*c.tally.accuracy(), 0.0);
      EXPECT_LE(*c.tally.accuracy(), 1.0);
    }
  }
  EXPECT_EQ(sem, r.semantic);
  EXPECT_EQ(syn, r.syntactic);
  EXPECT_EQ(sum, r.overall);
}

TEST(Evaluate, DeterministicAcrossThreadCounts) {
  std::mt19937_64 rng(14);
  const auto e = testing::random_embeddings(80, 10, 15);
  const auto qs = random_questions(e, 500, rng);
  const auto base = evaluate(e, qs, 1);
  EXPECT_EQ(evaluate(e, qs, 1), base);
  EXPECT_EQ(evaluate(e, qs, 3), base);
  EXPECT_EQ(evaluate(e, qs, 8), base);
  std::ostringstream t1, t2;
  write_report_text(base, t1);
  write_report_text(evaluate(e, qs, 4), t2);
  EXPECT_EQ(t1.str(), t2.str());
}

TEST(Similarity, ReportAndTable) {
  const auto e = EmbeddingSet(WordIndex({"x", "y", "z"}), 2, {1, 0, 1, 1, 0, 0});
  const auto rows = similarity_report(e, {{"x", "x"}, {"x", "y"}, {"x", "nope"}, {"x", "z"}});
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(*rows[0].cosine, 1.0);
  EXPECT_FALSE(rows[2].cosine.has_value());
  EXPECT_FALSE(rows[3].cosine.has_value());
  std::ostringstream out;
  write_similarity_table(rows, out);
  EXPECT_EQ(out.str(), "x x 1.000000\nx y 0.707107\nx nope OOV\nx z OOV\n");
}

TEST(Similarity, PairParsing) {
  std::istringstream in("vietnam laos\n\nwork works\n");
  const auto pairs = read_word_pairs(in, "p.txt");
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_EQ(pairs[1].second, "works");
  std::istringstream bad("one\n");
  EXPECT_THROW(read_word_pairs(bad, "p.txt"), ParseError);
}

TEST(Similarity, BundledPairListRuns) {
  std::ifstream in(GLOVE_DATA_DIR "/similarity_pairs.txt");
  const auto pairs = read_word_pairs(in, "similarity_pairs.txt");
  ASSERT_EQ(pairs.size(), 11u);
  const auto e = testing::random_embeddings(20, 5, 16);
  const auto rows = similarity_report(e, pairs);
  ASSERT_EQ(rows.size(), 11u);
  for (const auto& r : rows) EXPECT_FALSE(r.cosine.has_value());
}

}  // namespace
}  // namespace glove
