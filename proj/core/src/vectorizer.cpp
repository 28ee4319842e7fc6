#include "wsi/vectorizer.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "wsi/error.hpp"

namespace wsi {
namespace {

std::vector<std::string> distinct_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (Token& t : tokenize(text)) {
    if (seen.insert(t.text).second) out.push_back(std::move(t.text));
  }
  return out;
}

}  // namespace

WordStats::WordStats(std::size_t word_contexts, std::size_t other_contexts,
                     std::unordered_map<std::string, Counts> counts)
    : word_contexts_(word_contexts), other_contexts_(other_contexts) {
  for (auto& [token, c] : counts) counts_.emplace(token, c);
}

WordStats::Counts WordStats::counts(std::string_view token) const {
  const auto it = counts_.find(token);
  return it == counts_.end() ? Counts{} : it->second;
}

double WordStats::idf(std::string_view token) const {
  return std::log((1.0 + static_cast<double>(word_contexts_)) /
                  (1.0 + static_cast<double>(df(token)))) +
         1.0;
}

bool WordStats::chi_square_degenerate(std::string_view token) const {
  const Counts k = counts(token);
  const std::size_t total = word_contexts_ + other_contexts_;
  const std::size_t with = k.in_word + k.in_other;
  return with == 0 || with == total || word_contexts_ == 0 || other_contexts_ == 0;
}

double WordStats::chi_square(std::string_view token) const {
  if (chi_square_degenerate(token)) return 0.0;
  const Counts k = counts(token);
  const double a = static_cast<double>(k.in_word);
  const double b = static_cast<double>(k.in_other);
  const double c = static_cast<double>(word_contexts_ - k.in_word);
  const double d = static_cast<double>(other_contexts_ - k.in_other);
  const double n = a + b + c + d;
  const double cross = a * d - b * c;
  return n * cross * cross / ((a + b) * (c + d) * (a + c) * (b + d));
}

WordStats compute_word_stats(std::span<const ContextRecord> records_of_word,
                             const Dataset& whole_dataset) {
  if (records_of_word.empty()) throw Error("word statistics need at least one context");
  const std::string& word = records_of_word.front().word;
  std::unordered_map<std::string, WordStats::Counts> counts;
  for (const ContextRecord& r : records_of_word) {
    if (r.word != word) throw Error("word statistics mix '" + word + "' and '" + r.word + "'");
    for (const std::string& t : distinct_tokens(r.context)) ++counts[t].in_word;
  }
  std::size_t others = 0;
  for (const ContextRecord& r : whole_dataset.records) {
    if (r.word == word) continue;
    ++others;
    for (const std::string& t : distinct_tokens(r.context)) {
      if (auto it = counts.find(t); it != counts.end()) ++it->second.in_other;
    }
  }
  return WordStats(records_of_word.size(), others, std::move(counts));
}

CorpusStats::CorpusStats(const Dataset& dataset) : total_contexts_(dataset.size()) {
  for (const ContextRecord& r : dataset.records) {
    ++word_contexts_[r.word];
    auto& df = word_df_[r.word];
    for (const std::string& t : distinct_tokens(r.context)) {
      ++df[t];
      ++global_df_[t];
    }
  }
}

WordStats CorpusStats::word_stats(const std::string& word) const {
  const auto n = word_contexts_.find(word);
  if (n == word_contexts_.end()) throw Error("no contexts for word '" + word + "'");
  std::unordered_map<std::string, WordStats::Counts> counts;
  for (const auto& [token, df] : word_df_.at(word)) {
    counts[token] = {df, global_df_.at(token) - df};
  }
  return WordStats(n->second, total_contexts_ - n->second, std::move(counts));
}

double token_weight(std::string_view token, std::size_t tf, const WordStats* stats,
                    const WeightingScheme& scheme) {
  using V = WeightingScheme::Variant;
  if (scheme.variant == V::kUniform) return 1.0;
  if (stats == nullptr) throw Error("tf-idf weighting requires word statistics");
  const double tfidf = static_cast<double>(tf) * stats->idf(token);
  if (scheme.variant == V::kTfidf) return tfidf;
  const double chisq = stats->chi_square_degenerate(token) ? 1.0 : stats->chi_square(token);
  return std::pow(tfidf, scheme.tfidf_exponent) * std::pow(chisq, scheme.chisq_exponent);
}

double token_weight(std::string_view token, std::span<const Token> context,
                    const WordStats* stats, const WeightingScheme& scheme) {
  const auto tf = static_cast<std::size_t>(std::count_if(
      context.begin(), context.end(), [&](const Token& t) { return t.text == token; }));
  return token_weight(token, tf, stats, scheme);
}

ContextVector context_vector(const ContextRecord& record, const EmbeddingStore& store,
                             const WordStats* stats, const WeightingScheme& scheme,
                             bool exclude_target) {
  const std::vector<Token> tokens = tokenize(record.context);
  const std::string target = fold_case(record.word);
  const auto is_target = [&](const Token& t) {
    if (t.text == target) return true;
    return std::any_of(record.positions.begin(), record.positions.end(),
                       [&](const Span& s) { return t.begin < s.end && s.begin < t.end; });
  };

  // Distinct types in first-occurrence order, with term frequencies.
  std::vector<std::pair<std::string_view, std::size_t>> types;
  std::unordered_map<std::string_view, std::size_t> slot;
  for (const Token& t : tokens) {
    if (exclude_target && is_target(t)) continue;
    auto [it, inserted] = slot.try_emplace(t.text, types.size());
    if (inserted) types.emplace_back(t.text, 0);
    ++types[it->second].second;
  }

  ContextVector out{Vector(store.dim(), 0.0), false};
  double total_weight = 0.0;
  for (const auto& [token, tf] : types) {
    const auto v = store.find(token);
    if (v.empty()) continue;
    const double w = token_weight(token, tf, stats, scheme);
    if (!(w > 0.0)) continue;
    for (std::size_t d = 0; d < v.size(); ++d) out.values[d] += w * v[d];
    total_weight += w;
  }
  if (total_weight == 0.0) {
    out.oov = true;
    return out;
  }
  for (double& x : out.values) x /= total_weight;
  return out;
}

}  // namespace wsi
