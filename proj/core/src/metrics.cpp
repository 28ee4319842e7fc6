#include "wsi/metrics.hpp"

#include <iomanip>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "wsi/error.hpp"

namespace wsi {
namespace {

__extension__ typedef __int128 i128;

std::uint64_t choose2(std::uint64_t x) { return x < 2 ? 0 : x * (x - 1) / 2; }

void check_labels(std::span<const std::string> gold,
                  std::span<const std::string> pred) {
  if (gold.size() != pred.size()) {
    throw Error("label length mismatch: " + std::to_string(gold.size()) +
                " gold vs " + std::to_string(pred.size()) + " predicted");
  }
  if (gold.empty()) throw Error("cannot score an empty labeling");
}

// Dense ids in first-occurrence order.
std::vector<std::size_t> encode(std::span<const std::string> labels,
                                std::size_t& distinct) {
  std::unordered_map<std::string_view, std::size_t> ids;
  std::vector<std::size_t> out;
  out.reserve(labels.size());
  for (const std::string& label : labels) {
    out.push_back(ids.try_emplace(label, ids.size()).first->second);
  }
  distinct = ids.size();
  return out;
}

}  // namespace

std::vector<std::uint64_t> ContingencyTable::row_sums() const {
  std::vector<std::uint64_t> sums(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) sums[i] += at(i, j);
  return sums;
}

std::vector<std::uint64_t> ContingencyTable::col_sums() const {
  std::vector<std::uint64_t> sums(cols_, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) sums[j] += at(i, j);
  return sums;
}

std::uint64_t ContingencyTable::total() const {
  return std::accumulate(cells_.begin(), cells_.end(), std::uint64_t{0});
}

ContingencyTable contingency(std::span<const std::string> gold,
                             std::span<const std::string> pred) {
  check_labels(gold, pred);
  std::size_t n_classes = 0, n_clusters = 0;
  const auto classes = encode(gold, n_classes);
  const auto clusters = encode(pred, n_clusters);
  ContingencyTable table(n_clusters, n_classes);
  for (std::size_t t = 0; t < gold.size(); ++t) ++table.at(clusters[t], classes[t]);
  return table;
}

double ari(const ContingencyTable& table) {
  const std::uint64_t n = table.total();
  if (n < 2) throw Error("ARI needs at least 2 items, got " + std::to_string(n));

  i128 index = 0;
  for (std::size_t i = 0; i < table.rows(); ++i)
    for (std::size_t j = 0; j < table.cols(); ++j) index += choose2(table.at(i, j));
  i128 sum_a = 0, sum_b = 0;
  for (std::uint64_t a : table.row_sums()) sum_a += choose2(a);
  for (std::uint64_t b : table.col_sums()) sum_b += choose2(b);
  const i128 pairs = choose2(n);

  // (index - E) / (max - E) with E = sum_a*sum_b/pairs, scaled by 2*pairs.
  const i128 numerator = 2 * pairs * index - 2 * sum_a * sum_b;
  const i128 denominator = pairs * (sum_a + sum_b) - 2 * sum_a * sum_b;
  if (denominator == 0) return 1.0;
  return static_cast<double>(static_cast<long double>(numerator) /
                             static_cast<long double>(denominator));
}

double ari(std::span<const std::string> gold, std::span<const std::string> pred) {
  return ari(contingency(gold, pred));
}

double ari_pair_oracle(std::span<const std::string> gold,
                       std::span<const std::string> pred) {
  check_labels(gold, pred);
  const std::size_t n = gold.size();
  if (n < 2) throw Error("ARI needs at least 2 items, got " + std::to_string(n));

  // n11: together in both; n10: together in gold only; n01: in pred only.
  std::int64_t n11 = 0, n10 = 0, n01 = 0, n00 = 0;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = s + 1; t < n; ++t) {
      const bool same_gold = gold[s] == gold[t];
      const bool same_pred = pred[s] == pred[t];
      if (same_gold && same_pred) ++n11;
      else if (same_gold) ++n10;
      else if (same_pred) ++n01;
      else ++n00;
    }
  }
  const i128 numerator = 2 * (static_cast<i128>(n00) * n11 - static_cast<i128>(n01) * n10);
  const i128 denominator = static_cast<i128>(n00 + n01) * (n01 + n11) +
                           static_cast<i128>(n00 + n10) * (n10 + n11);
  if (denominator == 0) return 1.0;
  return static_cast<double>(static_cast<long double>(numerator) /
                             static_cast<long double>(denominator));
}

double aggregate_ari(std::span<const WordScore> per_word, Aggregation mode) {
  if (per_word.empty()) throw Error("cannot aggregate ARI over zero words");
  long double sum = 0, weight = 0;
  for (const WordScore& w : per_word) {
    const long double wt = mode == Aggregation::kWeighted ? w.contexts : 1.0L;
    sum += wt * w.ari;
    weight += wt;
  }
  if (weight == 0) throw Error("cannot weight ARI by zero contexts");
  return static_cast<double>(sum / weight);
}

double krippendorff_alpha(const AnnotationMatrix& matrix) {
  // Coincidence counts, scaled per unit by 1 / (m_u - 1).
  std::map<std::string, std::size_t> category;
  std::vector<std::vector<std::size_t>> units;
  for (const auto& row : matrix) {
    std::vector<std::size_t> values;
    for (const auto& cell : row) {
      if (cell) values.push_back(category.try_emplace(*cell, category.size()).first->second);
    }
    if (values.size() >= 2) units.push_back(std::move(values));
  }
  if (units.empty()) throw Error("Krippendorff's alpha: no unit has two or more values");

  const std::size_t c = category.size();
  std::vector<long double> marginal(c, 0);
  long double disagreement = 0;  // sum over c != k of o_ck
  long double n = 0;
  for (const auto& values : units) {
    std::vector<std::size_t> counts(c, 0);
    for (std::size_t v : values) ++counts[v];
    const long double m = static_cast<long double>(values.size());
    // Ordered pairs of differing values within the unit.
    long double differing = m * m;
    for (std::size_t x : counts) differing -= static_cast<long double>(x) * x;
    disagreement += differing / (m - 1);
    for (std::size_t k = 0; k < c; ++k) marginal[k] += counts[k];
    n += m;
  }

  long double expected = n * n;  // sum over c != k of n_c n_k
  for (long double x : marginal) expected -= x * x;
  if (expected == 0) return 1.0;  // a single category: no disagreement possible
  return static_cast<double>(1.0L - (n - 1) * disagreement / expected);
}

AnnotationMatrix parse_annotation_matrix(std::istream& in) {
  AnnotationMatrix matrix;
  std::string line;
  std::size_t width = 0;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::optional<std::string>> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t tab = line.find('\t', start);
      const std::string cell = line.substr(start, tab == std::string::npos ? std::string::npos : tab - start);
      row.push_back(cell.empty() ? std::nullopt : std::optional<std::string>(cell));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (matrix.empty()) width = row.size();
    if (row.size() != width) {
      throw Error("annotation matrix line " + std::to_string(line_no) + ": expected " +
                  std::to_string(width) + " coders, found " + std::to_string(row.size()));
    }
    matrix.push_back(std::move(row));
  }
  return matrix;
}

EvaluationReport evaluate(const Dataset& gold, const Dataset& predicted) {
  std::unordered_map<std::string, const ContextRecord*> by_id;
  for (const ContextRecord& r : predicted.records) by_id.emplace(r.context_id, &r);
  if (by_id.size() != gold.records.size()) {
    throw Error("context_id sets differ: " + std::to_string(gold.records.size()) +
                " gold vs " + std::to_string(by_id.size()) + " predicted");
  }

  EvaluationReport report;
  for (const auto& [word, indices] : word_indices(gold)) {
    std::vector<std::string> gold_labels, pred_labels;
    for (std::size_t i : indices) {
      const ContextRecord& g = gold.records[i];
      if (!g.gold_sense_id) throw Error("missing gold_sense_id for '" + g.context_id + "'");
      const auto it = by_id.find(g.context_id);
      if (it == by_id.end()) throw Error("no prediction for context_id '" + g.context_id + "'");
      if (!it->second->predict_sense_id) {
        throw Error("missing predict_sense_id for '" + g.context_id + "'");
      }
      gold_labels.push_back(*g.gold_sense_id);
      pred_labels.push_back(*it->second->predict_sense_id);
    }
    const double score = indices.size() < 2 ? 1.0 : ari(gold_labels, pred_labels);
    report.words.push_back({word, score, indices.size()});
  }
  if (!report.words.empty()) {
    report.weighted_ari = aggregate_ari(report.words, Aggregation::kWeighted);
    report.macro_ari = aggregate_ari(report.words, Aggregation::kMacro);
  }
  return report;
}

void write_report(const EvaluationReport& report, std::ostream& out) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::fixed << std::setprecision(6);
  out << "word\tn_contexts\tari\n";
  for (const WordScore& w : report.words) {
    out << w.word << '\t' << w.contexts << '\t' << w.ari << '\n';
  }
  out << "weighted_ari\t" << report.weighted_ari << '\n';
  out << "macro_ari\t" << report.macro_ari << '\n';
  out.flags(flags);
  out.precision(precision);
}

}  // namespace wsi
