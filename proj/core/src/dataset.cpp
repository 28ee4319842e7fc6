#include "wsi/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "utf8.hpp"
#include "wsi/error.hpp"
#include "wsi/tokenizer.hpp"

namespace wsi {
namespace {

constexpr std::size_t kColumns = 6;

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::optional<std::string> optional_field(std::string_view field) {
  if (field.empty()) return std::nullopt;
  return std::string(field);
}

bool parse_size(std::string_view text, std::size_t& value) {
  if (text.empty()) return false;
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), last, value);
  return ec == std::errc() && ptr == last;
}

bool has_line_break_or_tab(std::string_view s) {
  return s.find_first_of("\t\n\r") != std::string_view::npos;
}

}  // namespace

std::vector<Span> parse_positions(std::string_view field) {
  std::vector<Span> spans;
  if (field.empty()) return spans;
  std::size_t start = 0;
  while (start <= field.size()) {
    std::size_t comma = field.find(',', start);
    if (comma == std::string_view::npos) comma = field.size();
    const std::string_view pair = field.substr(start, comma - start);
    const std::size_t dash = pair.find('-');
    Span span;
    if (dash == std::string_view::npos ||
        !parse_size(pair.substr(0, dash), span.begin) ||
        !parse_size(pair.substr(dash + 1), span.end)) {
      throw Error("malformed position '" + std::string(pair) + "'");
    }
    spans.push_back(span);
    start = comma + 1;
  }
  return spans;
}

std::string format_positions(const std::vector<Span>& positions) {
  std::string out;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(positions[i].begin);
    out += '-';
    out += std::to_string(positions[i].end);
  }
  return out;
}

Dataset parse_tsv(std::istream& in, const std::string& source_name) {
  std::string line;
  if (!std::getline(in, line) || line != kTsvHeader) {
    throw Error(source_name + ": malformed header, expected '" +
                std::string(kTsvHeader) + "'");
  }

  Dataset dataset;
  std::unordered_set<std::string> seen_ids;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = source_name + ":" + std::to_string(line_no);
    const auto fields = split_tabs(line);
    if (fields.size() != kColumns) {
      throw Error(where + ": expected " + std::to_string(kColumns) +
                  " columns, found " + std::to_string(fields.size()));
    }

    ContextRecord record;
    record.context_id = std::string(fields[0]);
    record.word = std::string(fields[1]);
    record.gold_sense_id = optional_field(fields[2]);
    record.predict_sense_id = optional_field(fields[3]);
    record.context = std::string(fields[5]);
    if (record.word.empty()) throw Error(where + ": empty word");

    const auto length = utf8::length(record.context);
    if (!length) throw Error(where + ": context is not valid UTF-8");
    try {
      record.positions = parse_positions(fields[4]);
    } catch (const Error& e) {
      throw Error(where + ": " + e.what());
    }
    for (const Span& span : record.positions) {
      if (!(span.begin < span.end && span.end <= *length)) {
        throw Error(where + ": position " + std::to_string(span.begin) + "-" +
                    std::to_string(span.end) + " out of range for context of " +
                    std::to_string(*length) + " characters");
      }
    }
    if (!seen_ids.insert(record.context_id).second) {
      throw Error(where + ": duplicate context_id '" + record.context_id + "'");
    }
    dataset.records.push_back(std::move(record));
  }
  return dataset;
}

Dataset load_tsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return parse_tsv(in, path.string());
}

void write_tsv(const Dataset& dataset, std::ostream& out) {
  for (const ContextRecord& r : dataset.records) {
    for (std::string_view field :
         {std::string_view(r.context_id), std::string_view(r.word),
          std::string_view(r.gold_sense_id.value_or("")),
          std::string_view(r.predict_sense_id.value_or("")),
          std::string_view(r.context)}) {
      if (has_line_break_or_tab(field)) {
        throw Error("record '" + r.context_id +
                    "' contains a tab or line break and cannot be saved");
      }
    }
  }
  if (const auto violations = validate(dataset); !violations.empty()) {
    throw Error("invalid dataset: record '" + violations.front().context_id +
                "': " + violations.front().message);
  }

  out << kTsvHeader << '\n';
  for (const ContextRecord& r : dataset.records) {
    out << r.context_id << '\t' << r.word << '\t'
        << r.gold_sense_id.value_or("") << '\t'
        << r.predict_sense_id.value_or("") << '\t'
        << format_positions(r.positions) << '\t' << r.context << '\n';
  }
}

void save_tsv(const Dataset& dataset, const std::filesystem::path& path) {
  std::ostringstream buffer;
  write_tsv(dataset, buffer);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  const std::string bytes = buffer.str();
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw Error("failed writing " + path.string());
}

std::vector<Violation> validate(const Dataset& dataset) {
  std::vector<Violation> violations;
  std::unordered_set<std::string> seen;
  for (const ContextRecord& r : dataset.records) {
    if (!seen.insert(r.context_id).second) {
      violations.push_back({r.context_id, "duplicate context_id"});
    }
    if (r.word.empty()) violations.push_back({r.context_id, "empty word"});
    const auto length = utf8::length(r.context);
    if (!length) {
      violations.push_back({r.context_id, "context is not valid UTF-8"});
      continue;
    }
    for (const Span& span : r.positions) {
      if (!(span.begin < span.end && span.end <= *length)) {
        violations.push_back(
            {r.context_id, "position " + std::to_string(span.begin) + "-" +
                               std::to_string(span.end) + " out of range"});
      }
    }
  }
  return violations;
}

std::vector<std::pair<std::string, std::vector<std::size_t>>> word_indices(
    const Dataset& dataset) {
  std::vector<std::pair<std::string, std::vector<std::size_t>>> groups;
  std::unordered_map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < dataset.records.size(); ++i) {
    const std::string& word = dataset.records[i].word;
    auto [it, inserted] = slot.try_emplace(word, groups.size());
    if (inserted) groups.emplace_back(word, std::vector<std::size_t>{});
    groups[it->second].second.push_back(i);
  }
  return groups;
}

std::vector<WordGroup> group_by_word(const Dataset& dataset) {
  std::vector<WordGroup> groups;
  for (auto& [word, indices] : word_indices(dataset)) {
    WordGroup group{word, {}};
    group.records.reserve(indices.size());
    for (std::size_t i : indices) group.records.push_back(dataset.records[i]);
    groups.push_back(std::move(group));
  }
  return groups;
}

Fraction Fraction::parse(std::string_view text) {
  Fraction f;
  const auto bad = [&] {
    return Error("invalid fraction '" + std::string(text) +
                 "' (expected p/q or a decimal in [0, 1])");
  };
  if (const std::size_t slash = text.find('/'); slash != std::string_view::npos) {
    std::size_t num = 0, den = 0;
    if (!parse_size(text.substr(0, slash), num) ||
        !parse_size(text.substr(slash + 1), den) || den == 0) {
      throw bad();
    }
    f = {num, den};
  } else {
    const std::size_t dot = text.find('.');
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac =
        dot == std::string_view::npos ? std::string_view() : text.substr(dot + 1);
    if (frac.size() > 18 || (whole.empty() && frac.empty())) throw bad();
    std::size_t w = 0, p = 0;
    if (!whole.empty() && !parse_size(whole, w)) throw bad();
    if (!frac.empty() && !parse_size(frac, p)) throw bad();
    if (dot != std::string_view::npos && frac.empty()) throw bad();
    std::uint64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    if (w > 1) throw bad();
    f = {w * den + p, den};
  }
  if (f.numerator > f.denominator) throw bad();
  return f;
}

std::uint64_t split_hash(std::string_view word, std::uint64_t seed) {
  constexpr std::uint64_t kOffsetBasis = 14695981039346656037ULL;
  constexpr std::uint64_t kPrime = 1099511628211ULL;
  std::uint64_t h = kOffsetBasis;
  for (int i = 0; i < 8; ++i) {
    h ^= (seed >> (8 * i)) & 0xffU;
    h *= kPrime;
  }
  for (unsigned char c : word) {
    h ^= c;
    h *= kPrime;
  }
  return h;
}

bool is_public_word(std::string_view word, const SplitSpec& spec) {
  // hash / 2^64 < p / q  <=>  hash * q < p * 2^64, evaluated exactly.
  __extension__ typedef unsigned __int128 u128;
  const u128 lhs = static_cast<u128>(split_hash(word, spec.seed)) *
                   spec.public_fraction.denominator;
  const u128 rhs = static_cast<u128>(spec.public_fraction.numerator) << 64;
  return lhs < rhs;
}

SplitResult split_public_private(const Dataset& dataset, const SplitSpec& spec) {
  SplitResult result;
  std::unordered_map<std::string, bool> memo;
  for (const ContextRecord& r : dataset.records) {
    auto [it, inserted] = memo.try_emplace(r.word, false);
    if (inserted) it->second = is_public_word(r.word, spec);
    (it->second ? result.public_part : result.private_part).records.push_back(r);
  }
  return result;
}

std::vector<ContextRecord> extract_contexts(std::string_view corpus_text,
                                            std::string_view target,
                                            std::size_t window) {
  if (window == 0) throw Error("context window must be at least 1");
  std::vector<ContextRecord> records;
  const std::string folded_target = fold_case(target);
  if (folded_target.empty()) return records;

  const std::vector<Token> tokens = tokenize(corpus_text);
  const std::vector<std::size_t> bytes = utf8::scalar_byte_offsets(corpus_text);
  std::size_t occurrence = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].text != folded_target) continue;
    const std::size_t first = i >= window ? i - window : 0;
    const std::size_t last = std::min(tokens.size() - 1, i + window);
    const std::size_t begin_scalar = tokens[first].begin;
    const std::size_t end_scalar = tokens[last].end;

    std::string context(corpus_text.substr(
        bytes[begin_scalar], bytes[end_scalar] - bytes[begin_scalar]));
    // One byte replaced by one byte: scalar offsets are unchanged.
    std::replace_if(
        context.begin(), context.end(),
        [](char c) { return c == '\t' || c == '\n' || c == '\r'; }, ' ');

    ContextRecord record;
    record.context_id = std::string(target) + "." + std::to_string(++occurrence);
    record.word = std::string(target);
    record.positions.push_back(
        {tokens[i].begin - begin_scalar, tokens[i].end - begin_scalar});
    record.context = std::move(context);
    records.push_back(std::move(record));
  }
  return records;
}

Dataset filter_sparse_words(const Dataset& dataset, std::size_t min_occurrences,
                            std::size_t min_contexts_per_sense) {
  std::unordered_set<std::string> keep;
  for (const auto& [word, indices] : word_indices(dataset)) {
    if (indices.size() < min_occurrences) continue;
    std::unordered_map<std::string, std::size_t> per_sense;
    for (std::size_t i : indices) {
      if (const auto& gold = dataset.records[i].gold_sense_id) ++per_sense[*gold];
    }
    const bool sparse_sense = std::any_of(
        per_sense.begin(), per_sense.end(),
        [&](const auto& kv) { return kv.second < min_contexts_per_sense; });
    if (!sparse_sense) keep.insert(word);
  }
  Dataset out;
  for (const ContextRecord& r : dataset.records) {
    if (keep.count(r.word)) out.records.push_back(r);
  }
  return out;
}

DatasetStats stats(const Dataset& dataset) {
  DatasetStats s;
  s.contexts = dataset.records.size();
  std::set<std::string> words;
  std::set<std::pair<std::string, std::string>> senses;
  bool all_gold = true;
  for (const ContextRecord& r : dataset.records) {
    words.insert(r.word);
    if (r.gold_sense_id) {
      senses.emplace(r.word, *r.gold_sense_id);
    } else {
      all_gold = false;
    }
  }
  s.words = words.size();
  if (all_gold) {
    s.senses = senses.size();
    s.avg_senses = s.words == 0 ? 0.0
                                : static_cast<double>(senses.size()) /
                                      static_cast<double>(s.words);
  }
  return s;
}

}  // namespace wsi
