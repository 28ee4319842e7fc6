#ifndef WSI_VECTORIZER_HPP_
#define WSI_VECTORIZER_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wsi/dataset.hpp"
#include "wsi/embeddings.hpp"
#include "wsi/tokenizer.hpp"

namespace wsi {

struct WeightingScheme {
  enum class Variant { kUniform, kTfidf, kTfidfChisq };

  Variant variant = Variant::kUniform;
  double tfidf_exponent = 1.5;  // used by kTfidfChisq only
  double chisq_exponent = 0.5;

  static WeightingScheme uniform() { return {}; }
  static WeightingScheme tfidf() { return {Variant::kTfidf}; }
  static WeightingScheme tfidf_chisq(double p = 1.5, double q = 0.5) {
    return {Variant::kTfidfChisq, p, q};
  }
};

// Document frequencies of a target word's context set, contrasted with the
// rest of the dataset. For a token t the 2x2 association table is
//   a = word contexts containing t      b = other contexts containing t
//   c = word contexts without t         d = other contexts without t
class WordStats {
 public:
  struct Counts {
    std::size_t in_word = 0;
    std::size_t in_other = 0;
  };

  WordStats(std::size_t word_contexts, std::size_t other_contexts,
            std::unordered_map<std::string, Counts> counts);

  std::size_t word_contexts() const { return word_contexts_; }
  std::size_t other_contexts() const { return other_contexts_; }
  Counts counts(std::string_view token) const;
  std::size_t df(std::string_view token) const { return counts(token).in_word; }

  // ln((1 + N) / (1 + df)) + 1 with N the word's context count.
  double idf(std::string_view token) const;

  // Pearson chi-square of the 2x2 table; 0 when any marginal is empty.
  double chi_square(std::string_view token) const;
  bool chi_square_degenerate(std::string_view token) const;

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::size_t word_contexts_;
  std::size_t other_contexts_;
  std::unordered_map<std::string, Counts, Hash, std::equal_to<>> counts_;
};

// `records_of_word` must be non-empty and share one word; "other" contexts
// are the records of `whole_dataset` whose word differs.
WordStats compute_word_stats(std::span<const ContextRecord> records_of_word,
                             const Dataset& whole_dataset);

// Tokenizes a dataset once and serves WordStats for each of its words.
class CorpusStats {
 public:
  explicit CorpusStats(const Dataset& dataset);
  WordStats word_stats(const std::string& word) const;

 private:
  std::size_t total_contexts_ = 0;
  std::unordered_map<std::string, std::size_t> global_df_;
  std::unordered_map<std::string, std::size_t> word_contexts_;
  std::unordered_map<std::string, std::unordered_map<std::string, std::size_t>> word_df_;
};

// Weight of `token` given its term frequency in the context. Under
// tfidf_chisq a degenerate association table counts as chi-square = 1, so
// the scheme falls back to tf-idf.
double token_weight(std::string_view token, std::size_t tf, const WordStats* stats,
                    const WeightingScheme& scheme);
double token_weight(std::string_view token, std::span<const Token> context,
                    const WordStats* stats, const WeightingScheme& scheme);

struct ContextVector {
  Vector values;
  bool oov = false;  // no token contributed; values is the zero vector
};

// Weighted average of the vectors of the distinct in-vocabulary tokens of
// the context, each token type weighted once. With `exclude_target`, tokens
// equal to the case-folded target word and tokens overlapping a marked
// target position are skipped. `stats` may be null for the uniform scheme.
ContextVector context_vector(const ContextRecord& record, const EmbeddingStore& store,
                             const WordStats* stats, const WeightingScheme& scheme,
                             bool exclude_target = true);

}  // namespace wsi

#endif  // WSI_VECTORIZER_HPP_
