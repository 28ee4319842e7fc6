#include "wsi/metrics.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>
#include <tuple>

#include "test_util.hpp"
#include "wsi/error.hpp"
#include "wsi/rng.hpp"

namespace wsi {
namespace {

using Labels = std::vector<std::string>;

Labels random_labels(SplitMix64& rng, std::size_t n, std::size_t k) {
  Labels out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(rng.below(k)));
  return out;
}

TEST(Contingency, RowsArePredictedClusters) {
  const Labels gold = {"A", "A", "A", "B", "B", "B"};
  const Labels pred = {"1", "1", "2", "2", "2", "2"};
  const ContingencyTable t = contingency(gold, pred);
  ASSERT_EQ(t.rows(), 2u);
  ASSERT_EQ(t.cols(), 2u);
  EXPECT_EQ(t.at(0, 0), 2u);
  EXPECT_EQ(t.at(0, 1), 0u);
  EXPECT_EQ(t.at(1, 0), 1u);
  EXPECT_EQ(t.at(1, 1), 3u);
  EXPECT_EQ(t.total(), 6u);
}

TEST(Ari, HandComputedFixture) {
  // index 4, sum_a 7, sum_b 6, pairs 15: (4 - 2.8) / (6.5 - 2.8) = 12/37.
  EXPECT_NEAR(ari(Labels{"A", "A", "A", "B", "B", "B"}, Labels{"1", "1", "2", "2", "2", "2"}),
              12.0 / 37.0, 1e-15);
}

TEST(Ari, IdentityAndRelabeling) {
  const Labels gold = {"x", "x", "y", "z", "z"};
  EXPECT_DOUBLE_EQ(ari(gold, gold), 1.0);
  EXPECT_DOUBLE_EQ(ari(gold, Labels{"3", "3", "1", "2", "2"}), 1.0);
}

TEST(Ari, TrivialPredictionsScoreZero) {
  const Labels gold = {"a", "a", "b", "b", "c"};
  EXPECT_NEAR(ari(gold, Labels(5, "1")), 0.0, 1e-15);
  EXPECT_NEAR(ari(gold, Labels{"1", "2", "3", "4", "5"}), 0.0, 1e-15);
}

TEST(Ari, DegenerateBothTrivialIsOne) {
  EXPECT_DOUBLE_EQ(ari(Labels(4, "a"), Labels(4, "1")), 1.0);
}

TEST(Ari, Errors) {
  EXPECT_THROW(ari(Labels{"a"}, Labels{"1"}), Error);
  EXPECT_THROW(ari(Labels{"a", "b"}, Labels{"1"}), Error);
}

TEST(Ari, SymmetricAndMatchesPairOracle) {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng.below(30);
    const Labels g = random_labels(rng, n, 1 + rng.below(5));
    const Labels p = random_labels(rng, n, 1 + rng.below(5));
    const double a = ari(g, p);
    EXPECT_NEAR(a, ari_pair_oracle(g, p), 1e-12);
    EXPECT_NEAR(a, ari(p, g), 1e-12);
    EXPECT_LE(a, 1.0 + 1e-12);
    EXPECT_GE(a, -1.0 - 1e-12);
  }
}

TEST(Aggregate, WeightedAndMacro) {
  const std::vector<WordScore> words = {{"a", 1.0, 4}, {"b", 0.0, 6}};
  EXPECT_DOUBLE_EQ(aggregate_ari(words, Aggregation::kWeighted), 0.4);
  EXPECT_DOUBLE_EQ(aggregate_ari(words, Aggregation::kMacro), 0.5);
  EXPECT_THROW(aggregate_ari({}, Aggregation::kMacro), Error);
}

AnnotationMatrix matrix(std::vector<std::vector<std::string>> rows) {
  AnnotationMatrix m;
  for (auto& row : rows) {
    std::vector<std::optional<std::string>> r;
    for (auto& cell : row) r.push_back(cell.empty() ? std::nullopt : std::optional(cell));
    m.push_back(std::move(r));
  }
  return m;
}

TEST(Alpha, PerfectAgreement) {
  EXPECT_DOUBLE_EQ(krippendorff_alpha(matrix({{"a", "a"}, {"b", "b"}, {"a", "a"}})), 1.0);
}

TEST(Alpha, SystematicDisagreement) {
  EXPECT_DOUBLE_EQ(
      krippendorff_alpha(matrix({{"a", "b"}, {"a", "b"}, {"b", "a"}, {"b", "a"}})), -0.75);
}

TEST(Alpha, MissingValuesAndSingleValuedUnits) {
  // The third unit has one value and is not pairable.
  const double with = krippendorff_alpha(matrix({{"a", "a", ""}, {"b", "b", "b"}, {"", "c", ""}}));
  const double without = krippendorff_alpha(matrix({{"a", "a"}, {"b", "b"}}));
  EXPECT_DOUBLE_EQ(with, without);
  EXPECT_THROW(krippendorff_alpha(matrix({{"a", ""}})), Error);
}

TEST(Alpha, ParseMatrix) {
  std::istringstream in("a\tb\n\tb\r\n");
  const AnnotationMatrix m = parse_annotation_matrix(in);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_FALSE(m[1][0].has_value());
  EXPECT_EQ(m[1][1], "b");
  std::istringstream bad("a\tb\na\n");
  EXPECT_THROW(parse_annotation_matrix(bad), Error);
}

Dataset labeled(const std::vector<std::tuple<std::string, std::string, std::string>>& rows,
                bool gold) {
  Dataset ds;
  for (const auto& [id, word, label] : rows) {
    ContextRecord r = testing::record(id, word, "ctx");
    (gold ? r.gold_sense_id : r.predict_sense_id) = label;
    ds.records.push_back(std::move(r));
  }
  return ds;
}

TEST(Evaluate, MatchesByIdAndAggregates) {
  const Dataset gold = labeled({{"1", "a", "x"}, {"2", "a", "x"}, {"3", "a", "y"},
                                {"4", "a", "y"}, {"5", "b", "x"}},
                               true);
  const Dataset pred = labeled({{"5", "b", "9"}, {"4", "a", "2"}, {"3", "a", "2"},
                                {"2", "a", "1"}, {"1", "a", "1"}},
                               false);
  const EvaluationReport r = evaluate(gold, pred);
  ASSERT_EQ(r.words.size(), 2u);
  EXPECT_DOUBLE_EQ(r.words[0].ari, 1.0);
  EXPECT_EQ(r.words[1].contexts, 1u);
  EXPECT_DOUBLE_EQ(r.weighted_ari, 1.0);

  std::ostringstream out;
  write_report(r, out);
  EXPECT_EQ(out.str(),
            "word\tn_contexts\tari\na\t4\t1.000000\nb\t1\t1.000000\n"
            "weighted_ari\t1.000000\nmacro_ari\t1.000000\n");
}

TEST(Evaluate, RejectsMismatchedIds) {
  const Dataset gold = labeled({{"1", "a", "x"}, {"2", "a", "x"}}, true);
  EXPECT_THROW(evaluate(gold, labeled({{"1", "a", "1"}}, false)), Error);
  EXPECT_THROW(evaluate(gold, labeled({{"1", "a", "1"}, {"3", "a", "1"}}, false)), Error);
  Dataset unlabeled = labeled({{"1", "a", "1"}, {"2", "a", "1"}}, false);
  unlabeled.records[1].predict_sense_id.reset();
  EXPECT_THROW(evaluate(gold, unlabeled), Error);
}

}  // namespace
}  // namespace wsi
