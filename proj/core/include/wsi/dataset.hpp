#ifndef WSI_DATASET_HPP_
#define WSI_DATASET_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wsi {

// Half-open range [begin, end) of Unicode scalar indices into a context.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

// One usage of an ambiguous word.
struct ContextRecord {
  std::string context_id;
  std::string word;
  std::optional<std::string> gold_sense_id;
  std::optional<std::string> predict_sense_id;
  std::vector<Span> positions;
  std::string context;

  friend bool operator==(const ContextRecord&, const ContextRecord&) = default;
};

struct Dataset {
  std::vector<ContextRecord> records;

  bool empty() const { return records.empty(); }
  std::size_t size() const { return records.size(); }

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// Header line of the lexical-sample TSV format.
inline constexpr std::string_view kTsvHeader =
    "context_id\tword\tgold_sense_id\tpredict_sense_id\tpositions\tcontext";

Dataset load_tsv(const std::filesystem::path& path);
Dataset parse_tsv(std::istream& in, const std::string& source_name = "<stream>");

// Rejects records containing a tab or a line break in any field, and any
// dataset that fails validate(). Nothing is written in that case.
void save_tsv(const Dataset& dataset, const std::filesystem::path& path);
void write_tsv(const Dataset& dataset, std::ostream& out);

std::string format_positions(const std::vector<Span>& positions);
std::vector<Span> parse_positions(std::string_view field);

struct Violation {
  std::string context_id;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

std::vector<Violation> validate(const Dataset& dataset);

// Groups are keyed by word; the vector preserves first-seen word order.
struct WordGroup {
  std::string word;
  std::vector<ContextRecord> records;
};
std::vector<WordGroup> group_by_word(const Dataset& dataset);

// Index-based variant: record indices per word in first-seen order.
std::vector<std::pair<std::string, std::vector<std::size_t>>> word_indices(
    const Dataset& dataset);

// Non-negative rational, used for the public share of words.
struct Fraction {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;

  // Accepts "p/q" or a plain decimal such as "0.25".
  static Fraction parse(std::string_view text);
};

struct SplitSpec {
  Fraction public_fraction{1, 3};
  std::uint64_t seed = 0;
};

// FNV-1a 64 over the 8 little-endian seed bytes followed by the word bytes.
std::uint64_t split_hash(std::string_view word, std::uint64_t seed);
bool is_public_word(std::string_view word, const SplitSpec& spec);

struct SplitResult {
  Dataset public_part;
  Dataset private_part;
};
SplitResult split_public_private(const Dataset& dataset, const SplitSpec& spec);

// One record per case-insensitive token match of `target` in `corpus_text`;
// each context keeps up to `window` tokens on either side of the match.
// Tabs and line breaks in the emitted context are replaced by spaces.
std::vector<ContextRecord> extract_contexts(std::string_view corpus_text,
                                            std::string_view target,
                                            std::size_t window = 50);

// Drops words with fewer than `min_occurrences` contexts, and words where
// some gold sense has fewer than `min_contexts_per_sense` contexts.
Dataset filter_sparse_words(const Dataset& dataset, std::size_t min_occurrences,
                            std::size_t min_contexts_per_sense);

struct DatasetStats {
  std::size_t words = 0;
  std::optional<std::size_t> senses;  // unknown if any gold label is absent
  std::optional<double> avg_senses;
  std::size_t contexts = 0;
};
DatasetStats stats(const Dataset& dataset);

}  // namespace wsi

#endif  // WSI_DATASET_HPP_
