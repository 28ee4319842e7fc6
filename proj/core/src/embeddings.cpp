#include "wsi/embeddings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "wsi/error.hpp"

namespace wsi {
namespace {

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    if (i == line.size()) break;
    const std::size_t j = std::min(line.find(' ', i), line.size());
    parts.push_back(line.substr(i, j - i));
    i = j;
  }
  return parts;
}

template <typename T>
bool parse_number(std::string_view text, T& value) {
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), last, value);
  return ec == std::errc() && ptr == last;
}

}  // namespace

EmbeddingStore::EmbeddingStore(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw Error("embedding dimension must be positive");
}

void EmbeddingStore::add(std::string token, std::span<const double> vector) {
  if (vector.size() != dim_) {
    throw Error("vector for '" + token + "' has " + std::to_string(vector.size()) +
                " components, expected " + std::to_string(dim_));
  }
  if (!std::all_of(vector.begin(), vector.end(), [](double x) { return std::isfinite(x); })) {
    throw Error("vector for '" + token + "' has a non-finite component");
  }
  if (!index_.try_emplace(token, tokens_.size()).second) {
    throw Error("duplicate token '" + token + "'");
  }
  tokens_.push_back(std::move(token));
  values_.insert(values_.end(), vector.begin(), vector.end());
}

bool EmbeddingStore::contains(std::string_view token) const {
  return index_.find(token) != index_.end();
}

std::span<const double> EmbeddingStore::find(std::string_view token) const {
  const auto it = index_.find(token);
  if (it == index_.end()) return {};
  return vector(it->second);
}

EmbeddingStore parse_embeddings(std::istream& in, const std::string& source_name) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw Error(source_name + ": missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_spaces(line);
  std::size_t vocab = 0, dim = 0;
  if (header.size() != 2 || !parse_number(header[0], vocab) ||
      !parse_number(header[1], dim) || dim == 0) {
    throw Error(source_name + ":1: expected '<vocab_size> <dim>' header");
  }

  EmbeddingStore store(dim);
  std::vector<double> row(dim);
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = source_name + ":" + std::to_string(line_no);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
    const auto parts = split_spaces(line);
    if (parts.size() != dim + 1) {
      throw Error(where + ": expected token and " + std::to_string(dim) +
                  " components, found " +
                  std::to_string(parts.empty() ? 0 : parts.size() - 1) + " components");
    }
    for (std::size_t d = 0; d < dim; ++d) {
      if (!parse_number(parts[d + 1], row[d])) {
        throw Error(where + ": non-numeric component '" + std::string(parts[d + 1]) + "'");
      }
    }
    try {
      store.add(std::string(parts[0]), row);
    } catch (const Error& e) {
      throw Error(where + ": " + e.what());
    }
  }
  if (store.size() != vocab) {
    throw Error(source_name + ": header declares " + std::to_string(vocab) +
                " tokens but file has " + std::to_string(store.size()));
  }
  return store;
}

EmbeddingStore load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return parse_embeddings(in, path.string());
}

void write_embeddings(const EmbeddingStore& store, std::ostream& out) {
  out << store.size() << ' ' << store.dim() << '\n';
  char buffer[64];
  for (std::size_t i = 0; i < store.size(); ++i) {
    out << store.token(i);
    for (double x : store.vector(i)) {
      auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, x);
      out << ' ' << std::string_view(buffer, static_cast<std::size_t>(ptr - buffer));
    }
    out << '\n';
  }
}

void save_embeddings(const EmbeddingStore& store, const std::filesystem::path& path) {
  std::ostringstream buffer;
  write_embeddings(store, buffer);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  const std::string bytes = buffer.str();
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw Error("failed writing " + path.string());
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw Error("cosine: dimension mismatch (" + std::to_string(u.size()) + " vs " +
                std::to_string(v.size()) + ")");
  }
  double dot = 0, uu = 0, vv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0 || vv == 0) return 0.0;
  return std::clamp(dot / (std::sqrt(uu) * std::sqrt(vv)), -1.0, 1.0);
}

std::vector<Neighbor> nearest_neighbors(const EmbeddingStore& store,
                                        std::span<const double> query, std::size_t k,
                                        const std::unordered_set<std::string>& exclude) {
  if (query.size() != store.dim()) {
    throw Error("nearest_neighbors: query has dimension " + std::to_string(query.size()) +
                ", store has " + std::to_string(store.dim()));
  }
  std::vector<Neighbor> candidates;
  candidates.reserve(store.size());
  for (std::size_t i = 0; i < store.size(); ++i) {
    if (exclude.count(store.token(i))) continue;
    candidates.push_back({store.token(i), cosine(query, store.vector(i))});
  }
  const auto better = [](const Neighbor& a, const Neighbor& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.token < b.token;
  };
  const std::size_t take = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take),
                    candidates.end(), better);
  candidates.resize(take);
  return candidates;
}

}  // namespace wsi
