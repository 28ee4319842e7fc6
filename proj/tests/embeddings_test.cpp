#include "wsi/embeddings.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "test_util.hpp"
#include "wsi/error.hpp"
#include "wsi/tokenizer.hpp"

namespace wsi {
namespace {

EmbeddingStore small_store() {
  EmbeddingStore s(2);
  s.add("bank", std::vector<double>{1, 0});
  s.add("river", std::vector<double>{1, 1});
  s.add("money", std::vector<double>{1, -0.9});
  s.add("tree", std::vector<double>{0, 1});
  return s;
}

TEST(Embeddings, AddAndFind) {
  const EmbeddingStore s = small_store();
  EXPECT_EQ(s.size(), 4u);
  EXPECT_TRUE(s.contains("river"));
  EXPECT_FALSE(s.contains("cat"));
  EXPECT_TRUE(s.find("cat").empty());
  EXPECT_EQ(s.find("tree")[1], 1.0);
  EXPECT_EQ(s.token(2), "money");
}

TEST(Embeddings, RejectsBadRows) {
  EmbeddingStore s(2);
  EXPECT_THROW(s.add("a", std::vector<double>{1}), Error);
  EXPECT_THROW(s.add("a", std::vector<double>{1, std::nan("")}), Error);
  s.add("a", std::vector<double>{1, 2});
  EXPECT_THROW(s.add("a", std::vector<double>{1, 2}), Error);
}

TEST(Embeddings, ParseTextFormat) {
  std::istringstream in("2 3\nзамок 0.5 -1 2 \r\nkey 1e-3 0 0\n");
  const EmbeddingStore s = parse_embeddings(in);
  EXPECT_EQ(s.dim(), 3u);
  EXPECT_EQ(s.find("замок")[2], 2.0);
  EXPECT_EQ(s.find("key")[0], 1e-3);
}

TEST(Embeddings, ParseErrorsNameTheLine) {
  std::istringstream in("2 2\na 1 2\nb 1\n");
  try {
    parse_embeddings(in, "vec.txt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("vec.txt:3"), std::string::npos) << e.what();
  }
  std::istringstream no_header("a 1 2\n");
  EXPECT_THROW(parse_embeddings(no_header), Error);
  std::istringstream short_file("3 2\na 1 2\n");
  EXPECT_THROW(parse_embeddings(short_file), Error);
}

TEST(Embeddings, SaveLoadRoundTripIsExact) {
  EmbeddingStore s(3);
  s.add("x", std::vector<double>{0.1, 1.0 / 3.0, -2.5e-17});
  s.add("y", std::vector<double>{std::numeric_limits<double>::max(), 0, -0.0});
  testing::TempDir dir;
  save_embeddings(s, dir / "e.txt");
  const EmbeddingStore back = load_embeddings(dir / "e.txt");
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(back.token(i), s.token(i));
    for (std::size_t d = 0; d < 3; ++d) EXPECT_EQ(back.vector(i)[d], s.vector(i)[d]);
  }
}

TEST(Cosine, Values) {
  EXPECT_NEAR(cosine(std::vector<double>{1, 2, 2}, std::vector<double>{2, 0, 0}), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(cosine(std::vector<double>{0, 0}, std::vector<double>{1, 0}), 0.0);
  EXPECT_EQ(cosine(std::vector<double>{3, 4}, std::vector<double>{6, 8}), 1.0);
  EXPECT_THROW(cosine(std::vector<double>{1}, std::vector<double>{1, 2}), Error);
}

TEST(Neighbors, SortedAndExcluding) {
  const EmbeddingStore s = small_store();
  const auto nn = nearest_neighbors(s, s.find("bank"), 2, {"bank"});
  ASSERT_EQ(nn.size(), 2u);
  EXPECT_EQ(nn[0].token, "money");
  EXPECT_EQ(nn[1].token, "river");
  EXPECT_GE(nn[0].similarity, nn[1].similarity);
  EXPECT_EQ(nearest_neighbors(s, s.find("bank"), 10).size(), 4u);
}

TEST(Neighbors, TiesBrokenByToken) {
  EmbeddingStore s(2);
  s.add("b", std::vector<double>{1, 0});
  s.add("a", std::vector<double>{2, 0});
  const auto nn = nearest_neighbors(s, std::vector<double>{1, 0}, 2);
  EXPECT_EQ(nn[0].token, "a");
  EXPECT_EQ(nn[1].token, "b");
}

TEST(Tokenizer, ScalarOffsetsAndFolding) {
  const auto t = tokenize("Берег реки");
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0].text, "берег");
  EXPECT_EQ(t[0].begin, 0u);
  EXPECT_EQ(t[0].end, 5u);
  EXPECT_EQ(t[1].begin, 6u);
  EXPECT_EQ(t[1].end, 10u);
}

TEST(Tokenizer, DropsPunctuation) {
  const auto t = tokenize("bank, bank.");
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[1].begin, 6u);
  EXPECT_EQ(t[1].end, 10u);
  EXPECT_TRUE(tokenize(" ,.; ").empty());
  EXPECT_EQ(fold_case("STRASSE Ёж"), "strasse ёж");
}

}  // namespace
}  // namespace wsi
