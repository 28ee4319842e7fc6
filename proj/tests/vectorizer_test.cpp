#include "wsi/vectorizer.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "test_util.hpp"
#include "wsi/error.hpp"

namespace wsi {
namespace {

using testing::record;

// Two words with two contexts each; "river" occurs only with "bank".
Dataset toy() {
  Dataset ds;
  ds.records.push_back(record("1", "bank", "river bank water"));
  ds.records.push_back(record("2", "bank", "river bank loan"));
  ds.records.push_back(record("3", "key", "door key lock"));
  ds.records.push_back(record("4", "key", "door key water"));
  return ds;
}

EmbeddingStore toy_store() {
  EmbeddingStore s(2);
  s.add("river", std::vector<double>{1, 0});
  s.add("water", std::vector<double>{0, 1});
  s.add("loan", std::vector<double>{-1, 0});
  s.add("bank", std::vector<double>{5, 5});
  return s;
}

TEST(WordStats, CountsAndIdf) {
  const Dataset ds = toy();
  const CorpusStats corpus(ds);
  const WordStats s = corpus.word_stats("bank");
  EXPECT_EQ(s.word_contexts(), 2u);
  EXPECT_EQ(s.other_contexts(), 2u);
  EXPECT_EQ(s.df("river"), 2u);
  EXPECT_EQ(s.counts("water").in_other, 1u);
  EXPECT_DOUBLE_EQ(s.idf("river"), 1.0);
  EXPECT_DOUBLE_EQ(s.idf("loan"), std::log(3.0 / 2.0) + 1.0);
  EXPECT_DOUBLE_EQ(s.idf("unseen"), std::log(3.0) + 1.0);
}

TEST(WordStats, ChiSquare) {
  const WordStats s = CorpusStats(toy()).word_stats("bank");
  // a=2 b=0 c=0 d=2 gives N = 4.
  EXPECT_DOUBLE_EQ(s.chi_square("river"), 4.0);
  // a=1 b=1 c=1 d=1 gives 0.
  EXPECT_DOUBLE_EQ(s.chi_square("water"), 0.0);
  EXPECT_FALSE(s.chi_square_degenerate("river"));
  EXPECT_TRUE(s.chi_square_degenerate("unseen"));
  EXPECT_EQ(s.chi_square("unseen"), 0.0);
}

TEST(WordStats, MatchesDirectComputation) {
  const Dataset ds = toy();
  const std::vector<ContextRecord> bank(ds.records.begin(), ds.records.begin() + 2);
  const WordStats direct = compute_word_stats(bank, ds);
  const WordStats via = CorpusStats(ds).word_stats("bank");
  for (const char* t : {"river", "water", "loan", "door"}) {
    EXPECT_EQ(direct.counts(t).in_word, via.counts(t).in_word) << t;
    EXPECT_EQ(direct.counts(t).in_other, via.counts(t).in_other) << t;
  }
}

TEST(TokenWeight, Schemes) {
  const WordStats s = CorpusStats(toy()).word_stats("bank");
  EXPECT_EQ(token_weight("river", 3, &s, WeightingScheme::uniform()), 1.0);
  EXPECT_DOUBLE_EQ(token_weight("loan", 2, &s, WeightingScheme::tfidf()),
                   2 * (std::log(1.5) + 1.0));
  // (1 * 1)^1.5 * 4^0.5
  EXPECT_DOUBLE_EQ(token_weight("river", 1, &s, WeightingScheme::tfidf_chisq()), 2.0);
  EXPECT_EQ(token_weight("water", 1, &s, WeightingScheme::tfidf_chisq()), 0.0);
  EXPECT_THROW(token_weight("river", 1, nullptr, WeightingScheme::tfidf()), Error);
}

TEST(TokenWeight, DegenerateChiSquareFallsBackToTfidf) {
  Dataset ds;
  ds.records.push_back(record("1", "only", "a b"));
  ds.records.push_back(record("2", "only", "a c"));
  const WordStats s = CorpusStats(ds).word_stats("only");
  const double tfidf = token_weight("b", 1, &s, WeightingScheme::tfidf());
  EXPECT_DOUBLE_EQ(token_weight("b", 1, &s, WeightingScheme::tfidf_chisq()),
                   std::pow(tfidf, 1.5));
}

TEST(ContextVector, UniformMeanExcludesTarget) {
  const Dataset ds = toy();
  const ContextVector v =
      context_vector(ds.records[0], toy_store(), nullptr, WeightingScheme::uniform());
  EXPECT_FALSE(v.oov);
  EXPECT_DOUBLE_EQ(v.values[0], 0.5);
  EXPECT_DOUBLE_EQ(v.values[1], 0.5);
  const ContextVector with =
      context_vector(ds.records[0], toy_store(), nullptr, WeightingScheme::uniform(), false);
  EXPECT_DOUBLE_EQ(with.values[0], 2.0);
}

TEST(ContextVector, ExcludesInflectedTargetFromPositions) {
  EmbeddingStore s(1);
  s.add("banks", std::vector<double>{10});
  s.add("river", std::vector<double>{1});
  ContextRecord r = record("1", "bank", "banks river");
  r.positions = {{0, 5}};
  EXPECT_DOUBLE_EQ(context_vector(r, s, nullptr, WeightingScheme::uniform()).values[0], 1.0);
}

TEST(ContextVector, OovGivesZeroVector) {
  const ContextVector v =
      context_vector(record("9", "bank", "zzz bank"), toy_store(), nullptr, WeightingScheme::uniform());
  EXPECT_TRUE(v.oov);
  EXPECT_EQ(v.values, (Vector{0, 0}));
}

TEST(ContextVector, WeightedAverage) {
  const Dataset ds = toy();
  const WordStats s = CorpusStats(ds).word_stats("bank");
  // river: weight 2, water: weight 0 (skipped), so the vector is river's.
  const ContextVector v =
      context_vector(ds.records[0], toy_store(), &s, WeightingScheme::tfidf_chisq());
  EXPECT_DOUBLE_EQ(v.values[0], 1.0);
  EXPECT_DOUBLE_EQ(v.values[1], 0.0);
}

}  // namespace
}  // namespace wsi
