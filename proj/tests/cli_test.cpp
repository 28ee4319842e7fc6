#include "cli.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "test_util.hpp"
#include "wsi/dataset.hpp"
#include "wsi/metrics.hpp"

namespace wsi::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const Result r = call({"synth", "--dataset", path("data.tsv"), "--embeddings",
                           path("vec.txt"), "--truth", path("truth.tsv")});
    ASSERT_EQ(r.code, kOk) << r.err;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  wsi::testing::TempDir dir_;
};

TEST_F(CliTest, InduceAndEvaluate) {
  for (const std::string method : {"kmeans", "ap", "nn-sub"}) {
    const Result r = call({"induce", "--method", method, "--input", path("data.tsv"),
                           "--output", path("pred.tsv"), "--embeddings", path("vec.txt")});
    ASSERT_EQ(r.code, kOk) << method << ": " << r.err;
    EXPECT_EQ(r.out.rfind("word\tn_contexts\tn_clusters\tmethod\n", 0), 0u);
    const Result e = call({"evaluate", "--gold", path("pred.tsv"), "--report", path("rep.tsv")});
    ASSERT_EQ(e.code, kOk) << e.err;
    EXPECT_NE(e.out.find("weighted_ari\t1.000000"), std::string::npos) << method << e.out;
    EXPECT_EQ(wsi::testing::read_file(dir_ / "rep.tsv"), e.out);
  }
}

TEST_F(CliTest, AgglomerativeNeedsExactlyOneStopRule) {
  const std::vector<std::string> base = {"induce", "--method", "agglomerative", "--input",
                                         path("data.tsv"), "--output", path("p.tsv"),
                                         "--embeddings", path("vec.txt")};
  EXPECT_EQ(call(base).code, kUsageError);
  auto both = base;
  both.insert(both.end(), {"--k", "2", "--threshold", "1"});
  EXPECT_EQ(call(both).code, kUsageError);
  auto ward = base;
  ward.insert(ward.end(), {"--linkage", "ward", "--k", "2", "--weighting", "tfidf-chisq"});
  EXPECT_EQ(call(ward).code, kOk);
}

TEST_F(CliTest, UsageErrors) {
  const std::string in = path("data.tsv"), out = path("p.tsv"), vec = path("vec.txt");
  EXPECT_EQ(call({}).code, kUsageError);
  EXPECT_EQ(call({"induce", "--method", "nn-sub", "--input", in, "--output", out}).code,
            kUsageError);
  EXPECT_EQ(call({"induce", "--method", "one", "--input", in, "--output", out, "--weighting",
                  "tfidf"}).code,
            kUsageError);
  EXPECT_EQ(call({"induce", "--method", "kmeans", "--input", in, "--output", out,
                  "--embeddings", vec, "--damping", "0.7"}).code,
            kUsageError);
  EXPECT_EQ(call({"induce", "--method", "kmeans", "--input", in, "--output", out,
                  "--embeddings", vec, "--k", "0"}).code,
            kUsageError);
  EXPECT_EQ(call({"induce", "--method", "bogus", "--input", in, "--output", out}).code,
            kUsageError);
}

TEST_F(CliTest, DataErrors) {
  wsi::testing::write_file(dir_ / "bad.tsv", "nope\n");
  EXPECT_EQ(call({"stats", "--input", path("bad.tsv")}).code, kDataError);
  EXPECT_EQ(call({"stats", "--input", path("missing.tsv")}).code, kDataError);
  // Gold file without predictions.
  const Result r = call({"evaluate", "--gold", path("data.tsv")});
  EXPECT_EQ(r.code, kDataError);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST_F(CliTest, Stats) {
  const Result r = call({"stats", "--input", path("data.tsv")});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out, "words\tsenses\tavg_senses\tcontexts\n3\t6\t2.000000\t120\n");
}

TEST_F(CliTest, SplitPartitionsWords) {
  const Result r = call({"split", "--input", path("data.tsv"), "--public", path("pub.tsv"),
                         "--private", path("priv.tsv"), "--seed", "3"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const Dataset pub = load_tsv(dir_ / "pub.tsv"), priv = load_tsv(dir_ / "priv.tsv");
  EXPECT_EQ(pub.size() + priv.size(), 120u);
}

TEST_F(CliTest, Agreement) {
  wsi::testing::write_file(dir_ / "ann.tsv", "a\tb\na\tb\nb\ta\nb\ta\n");
  const Result r = call({"agreement", "--input", path("ann.tsv")});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out, "-0.750000\n");
}

TEST_F(CliTest, Extract) {
  wsi::testing::write_file(dir_ / "corpus.txt", "one two three bank five six seven\n");
  const Result r = call({"extract", "--corpus", path("corpus.txt"), "--target", "bank",
                         "--window", "2", "--output", path("ctx.tsv")});
  ASSERT_EQ(r.code, kOk) << r.err;
  const Dataset ds = load_tsv(dir_ / "ctx.tsv");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds.records[0].context, "two three bank five six");
}

TEST_F(CliTest, Help) { EXPECT_EQ(call({"--help"}).code, kOk); }

}  // namespace
}  // namespace wsi::cli
