#ifndef WSI_EMBEDDINGS_HPP_
#define WSI_EMBEDDINGS_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace wsi {

using Vector = std::vector<double>;

// Immutable token -> vector map. Vectors are stored row-major in insertion
// order; lookups are exact and case-sensitive.
class EmbeddingStore {
 public:
  explicit EmbeddingStore(std::size_t dim);

  // Throws on a dimension mismatch, a non-finite component or a duplicate.
  void add(std::string token, std::span<const double> vector);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return tokens_.size(); }
  bool contains(std::string_view token) const;

  // Empty span if the token is unknown.
  std::span<const double> find(std::string_view token) const;
  std::span<const double> vector(std::size_t index) const {
    return {values_.data() + index * dim_, dim_};
  }
  const std::string& token(std::size_t index) const { return tokens_[index]; }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::size_t dim_;
  std::vector<std::string> tokens_;
  std::vector<double> values_;
  std::unordered_map<std::string, std::size_t, Hash, std::equal_to<>> index_;
};

// Text format: a `<vocab_size> <dim>` header, then `<token> <f1> ... <f_dim>`.
EmbeddingStore load_embeddings(const std::filesystem::path& path);
EmbeddingStore parse_embeddings(std::istream& in, const std::string& source_name = "<stream>");

// Components are written in shortest round-trip form.
void save_embeddings(const EmbeddingStore& store, const std::filesystem::path& path);
void write_embeddings(const EmbeddingStore& store, std::ostream& out);

// u.v / (|u| |v|), or 0 when either norm is 0.
double cosine(std::span<const double> u, std::span<const double> v);

struct Neighbor {
  std::string token;
  double similarity;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// Top-k by cosine, similarity descending then token ascending.
std::vector<Neighbor> nearest_neighbors(
    const EmbeddingStore& store, std::span<const double> query, std::size_t k,
    const std::unordered_set<std::string>& exclude = {});

}  // namespace wsi

#endif  // WSI_EMBEDDINGS_HPP_
