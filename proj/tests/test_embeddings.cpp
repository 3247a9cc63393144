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

#include <cmath>
#include <random>
#include <sstream>

#include "glove/error.hpp"
#include "glove/embeddings.hpp"
#include "oracles.hpp"

namespace glove {
namespace {

constexpr double kCos123_456 = 0.9746318461970763;  // 32 / (sqrt(14) sqrt(77))

EmbeddingSet make_set(std::vector<std::string> words, std::size_t dim, std::vector<double> data) {
  return EmbeddingSet(WordIndex(std::move(words)), dim, std::move(data));
}

struct Model {
  Vocabulary vocab;
  ModelParams params;
};

Model random_model(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::vector<VocabEntry> entries;
  for (std::size_t i = 0; i < n; ++i) entries.push_back({"w" + std::to_string(1000 + i), n - i});
  TrainConfig c;
  c.dim = d;
  c.seed = seed;
  return {Vocabulary(std::move(entries)), init_params(n, c)};
}

TEST(Export, CombineModes) {
  const auto [vocab, params] = random_model(6, 4, 1);
  const auto target = export_embeddings(params, vocab, CombineMode::kTargetOnly);
  const auto sum = export_embeddings(params, vocab, CombineMode::kSum);
  const auto concat = export_embeddings(params, vocab, CombineMode::kConcat);
  EXPECT_EQ(target.dim(), 4u);
  EXPECT_EQ(sum.dim(), 4u);
  EXPECT_EQ(concat.dim(), 8u);
  for (WordId i = 0; i < 6; ++i) {
    EXPECT_EQ(target.words().word(i), vocab.word(i));
    for (std::size_t k = 0; k < 4; ++k) {
      EXPECT_EQ(target.vector(i)[k], params.word(i)[k]);
      EXPECT_EQ(sum.vector(i)[k], params.word(i)[k] + params.context(i)[k]);
      EXPECT_EQ(concat.vector(i)[k], params.word(i)[k]);
      EXPECT_EQ(concat.vector(i)[4 + k], params.context(i)[k]);
    }
  }
}

TEST(Export, SumWithZeroContextEqualsTarget) {
  auto [vocab, params] = random_model(5, 3, 2);
  for (double& x : params.context_matrix()) x = 0.0;
  EXPECT_EQ(export_embeddings(params, vocab, CombineMode::kSum),
            export_embeddings(params, vocab, CombineMode::kTargetOnly));
}

TEST(Export, ModeNames) {
  for (auto m : {CombineMode::kTargetOnly, CombineMode::kSum, CombineMode::kConcat})
    EXPECT_EQ(parse_combine_mode(combine_mode_name(m)), m);
  EXPECT_THROW(parse_combine_mode("mean"), ConfigError);
}

TEST(EmbeddingSet, RejectsBadShapes) {
  EXPECT_THROW(make_set({"a", "b"}, 2, {1, 2, 3}), DataError);
  EXPECT_THROW(make_set({"a"}, 2, {1, std::nan("")}), DataError);
}

TEST(Cosine, ReferenceValues) {
  const auto e = make_set({"a", "b", "x", "y", "z"}, 3, {1, 2, 3, 4, 5, 6, 1, 0, 0, 0, 1, 0, 0, 0, 0});
  EXPECT_NEAR(cosine(e, "a", "b"), kCos123_456, 1e-15);
  EXPECT_EQ(cosine(e, "x", "y"), 0.0);
  EXPECT_EQ(cosine(e, "x", "x"), 1.0);
  EXPECT_THROW(cosine(e, "a", "nope"), UnknownWordError);
  EXPECT_THROW(cosine(e, "a", "z"), DegenerateVectorError);
  const std::vector<double> zero{0, 0, 0};
  EXPECT_THROW(cosine(zero, e.vector("a")), DegenerateVectorError);
}

TEST(Cosine, SelfSimilarityAndClamp) {
  const auto e = testing::random_embeddings(200, 17, 3);
  for (WordId i = 0; i < e.size(); ++i) {
    const double s = cosine(e.vector(i), e.vector(i));
    EXPECT_NEAR(s, 1.0, 1e-15);
    EXPECT_LE(s, 1.0);
  }
}

TEST(Cosine, SymmetricAndScaleInvariant) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  const auto e = testing::random_embeddings(100, 9, 5);
  for (WordId i = 0; i + 1 < e.size(); ++i) {
    const auto a = e.vector(i), b = e.vector(i + 1);
    const double ab = cosine(a, b);
    EXPECT_LE(std::abs(ab - cosine(b, a)), std::nextafter(std::abs(ab), 2.0) - std::abs(ab));
    std::vector<double> scaled(a.begin(), a.end());
    const double s = scale(rng);
    for (double& x : scaled) x *= s;
    EXPECT_NEAR(cosine(scaled, b), ab, 1e-12);
    EXPECT_NEAR(ab, testing::naive_cosine(a, b), 1e-14);
  }
}

TEST(Nearest, MatchesBruteForce) {
  std::mt19937_64 rng(6);
  for (std::size_t n : {10u, 100u, 1000u}) {
    const auto e = testing::random_embeddings(n, 24, n);
    for (int q = 0; q < 10; ++q) {
      const WordId self = static_cast<WordId>(rng() % n);
      std::vector<WordId> exclude{self};
      if (q % 2) exclude.push_back(static_cast<WordId>(rng() % n));
      const std::size_t k = 1 + rng() % 20;
      const auto got = nearest(e, e.vector(self), k, exclude);
      const auto want = testing::brute_force_nearest(e, e.vector(self), k, exclude);
      ASSERT_EQ(got.size(), want.size());
      for (std::size_t r = 0; r < got.size(); ++r) {
        EXPECT_EQ(got[r].id, want[r].first) << n << " rank " << r;
        EXPECT_NEAR(got[r].score, want[r].second, 1e-12);
      }
      ASSERT_FALSE(got.empty());
      EXPECT_NE(got[0].id, self);
    }
  }
}

TEST(Nearest, FullRankIsPermutation) {
  const auto e = testing::random_embeddings(50, 8, 7);
  const auto all = nearest(e, e.vector(3), 50);
  ASSERT_EQ(all.size(), 50u);
  std::vector<bool> seen(50, false);
  for (const auto& nb : all) seen[nb.id] = true;
  EXPECT_EQ(std::count(seen.begin(), seen.end(), true), 50);
  EXPECT_EQ(all[0].id, 3u);
  for (std::size_t r = 1; r < all.size(); ++r) EXPECT_GE(all[r - 1].score, all[r].score);
}

TEST(Nearest, TruncatesAndBreaksTiesById) {
  const auto e = make_set({"a", "b", "c", "d"}, 2, {1, 0, 2, 0, 3, 0, 0, 1});
  const std::vector<double> q{1, 0};
  const std::vector<WordId> ex{1};
  const auto r = nearest(e, q, 10, ex);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].id, 0u);
  EXPECT_EQ(r[1].id, 2u);
  EXPECT_EQ(r[2].id, 3u);
  EXPECT_THROW(nearest(e, q, 0), ConfigError);
}

TEST(Analogy, ForcedByExclusion) {
  const auto e = make_set({"a", "b", "c", "d"}, 2, {1, 0, 0, 1, 1, 0, 0, 1});
  EXPECT_EQ(solve_analogy(e, "a", "b", "c"), "d");
}

TEST(Analogy, RepeatedInputReturnsClosestToB) {
  const auto e =
      make_set({"a", "b", "p", "q", "r"}, 2, {1, 0, 0, 1, 0.1, 1, 1, 1, -1, 0.2});
  EXPECT_EQ(solve_analogy(e, "a", "b", "a"), "p");
}

TEST(Analogy, OovInputRejected) {
  const auto e = make_set({"a", "b", "c", "d"}, 2, {1, 0, 0, 1, 1, 0, 0, 1});
  EXPECT_THROW(solve_analogy(e, "a", "b", "zz"), UnknownWordError);
}

TEST(Analogy, MatchesBruteForceAndNeverReturnsInputs) {
  std::mt19937_64 rng(8);
  for (std::size_t n : {5u, 50u, 1000u}) {
    const auto e = testing::random_embeddings(n, 16, 100 + n);
    for (int q = 0; q < 30; ++q) {
      const WordId a = rng() % n, b = rng() % n, c = rng() % n;
      const auto got = analogy_candidates(e, a, b, c, 1);
      ASSERT_EQ(got.size(), 1u);
      EXPECT_EQ(got[0].id, testing::brute_force_analogy(e, a, b, c));
      EXPECT_NE(got[0].id, a);
      EXPECT_NE(got[0].id, b);
      EXPECT_NE(got[0].id, c);
    }
  }
}

TEST(VectorFile, RoundTripExact) {
  const auto e = testing::random_embeddings(30, 7, 9);
  std::stringstream s1;
  write_vectors(e, s1);
  const auto back = read_vectors(s1);
  EXPECT_EQ(back, e);
  std::stringstream s2;
  write_vectors(back, s2);
  EXPECT_EQ(s1.str(), s2.str());
}

TEST(VectorFile, Format) {
  const auto e = make_set({"x", "y"}, 2, {0.1, -2, 1e-300, 3});
  std::ostringstream out;
  write_vectors(e, out);
  EXPECT_EQ(out.str(), "x 0.1 -2\ny 1e-300 3\n");
}

TEST(VectorFile, RaggedRowsRejected) {
  std::stringstream in("a 1 2 3\nb 1 2\n");
  try {
    read_vectors(in, "v.txt");
    FAIL();
  } catch (const ParseError& err) {
    EXPECT_EQ(err.line(), 2u);
  }
  std::stringstream bad("a 1 x\n");
  EXPECT_THROW(read_vectors(bad), ParseError);
}

}  // namespace
}  // namespace glove
