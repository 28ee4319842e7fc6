#ifndef WSI_METRICS_HPP_
#define WSI_METRICS_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wsi/dataset.hpp"

namespace wsi {

// Cross-tabulation of predicted clusters (rows) against gold classes
// (columns). Rows and columns appear in first-occurrence order of their label.
class ContingencyTable {
 public:
  ContingencyTable(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), cells_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint64_t at(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j]; }
  std::uint64_t& at(std::size_t i, std::size_t j) { return cells_[i * cols_ + j]; }

  std::vector<std::uint64_t> row_sums() const;
  std::vector<std::uint64_t> col_sums() const;
  std::uint64_t total() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint64_t> cells_;
};

ContingencyTable contingency(std::span<const std::string> gold,
                             std::span<const std::string> pred);

// Adjusted Rand Index in the Hubert-Arabie form, computed with exact integer
// pair counts and a single final division. Returns 1 when both partitions are
// trivially identical (zero denominator). Requires a total of at least 2.
double ari(const ContingencyTable& table);
double ari(std::span<const std::string> gold, std::span<const std::string> pred);

// Independent route to the same value: enumerates all item pairs.
double ari_pair_oracle(std::span<const std::string> gold,
                       std::span<const std::string> pred);

enum class Aggregation { kWeighted, kMacro };

struct WordScore {
  std::string word;
  double ari = 0.0;
  std::size_t contexts = 0;
};

double aggregate_ari(std::span<const WordScore> per_word, Aggregation mode);

// Units x coders; an empty optional is a missing value.
using AnnotationMatrix = std::vector<std::vector<std::optional<std::string>>>;

// Krippendorff's alpha for nominal data. Units with fewer than two values are
// not pairable and are skipped.
double krippendorff_alpha(const AnnotationMatrix& matrix);

// One row per unit, one column per coder, empty cell = missing.
AnnotationMatrix parse_annotation_matrix(std::istream& in);

// Per-word scores of `predicted` against `gold`, matched by context_id.
// Words come in first-occurrence order of the gold dataset. A word with a
// single context scores 1.
struct EvaluationReport {
  std::vector<WordScore> words;
  double weighted_ari = 0.0;
  double macro_ari = 0.0;
};

EvaluationReport evaluate(const Dataset& gold, const Dataset& predicted);

// `word<TAB>n_contexts<TAB>ari` rows followed by the two aggregate lines.
void write_report(const EvaluationReport& report, std::ostream& out);

}  // namespace wsi

#endif  // WSI_METRICS_HPP_
