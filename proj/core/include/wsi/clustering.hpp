#ifndef WSI_CLUSTERING_HPP_
#define WSI_CLUSTERING_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wsi/embeddings.hpp"

namespace wsi {

// Dense n x n similarities. The diagonal holds affinity-propagation
// preferences and is left at 0 by cosine_similarity_matrix.
class SimilarityMatrix {
 public:
  explicit SimilarityMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t k) const { return values_[i * n_ + k]; }
  double& operator()(std::size_t i, std::size_t k) { return values_[i * n_ + k]; }

  // Median of the n(n-1) off-diagonal entries (mean of the middle two when
  // their count is even). Requires n >= 2.
  double off_diagonal_median() const;

 private:
  std::size_t n_;
  std::vector<double> values_;
};

SimilarityMatrix cosine_similarity_matrix(std::span<const Vector> vectors);

// Labels are 0-based and contiguous; cluster 0 holds item 0, cluster 1 the
// first item not in cluster 0, and so on.
struct ClusterAssignment {
  std::vector<std::size_t> labels;
  std::vector<std::size_t> exemplars;  // affinity propagation only, by label

  std::size_t num_clusters() const;
  friend bool operator==(const ClusterAssignment&, const ClusterAssignment&) = default;
};

// First-occurrence renumbering of arbitrary cluster ids.
ClusterAssignment canonicalize(std::span<const std::size_t> raw_labels);

struct ApConfig {
  double damping = 0.5;
  std::size_t max_iterations = 200;
  std::size_t convergence_window = 15;
  std::optional<double> preference;  // nullopt: off-diagonal median
  // Restart with damping raised by 0.2 (capped at 0.9) while the messages
  // oscillate without converging.
  bool escalate_damping = true;
};

struct ApResult {
  ClusterAssignment assignment;
  bool converged = false;
  std::size_t iterations = 0;  // of the final attempt
  double damping = 0.0;        // used by the final attempt
};

// Frey & Dueck message passing with damped responsibility and availability
// updates. The diagonal of `similarities` is overwritten by the preference.
// Stops once the exemplar set has been stable for `convergence_window`
// iterations; otherwise the messages at `max_iterations` are decoded and
// `converged` is false. Two well-separated groups already make undamped-enough
// messages oscillate at 0.5, hence the escalation option.
ApResult affinity_propagation(const SimilarityMatrix& similarities, const ApConfig& config = {});

enum class Linkage { kAverage, kWard };

struct StopRule {
  enum class Kind { kFixedK, kThreshold };
  Kind kind = Kind::kFixedK;
  std::size_t k = 1;
  double threshold = 0.0;

  static StopRule fixed_k(std::size_t k) { return {Kind::kFixedK, k, 0.0}; }
  static StopRule distance_threshold(double t) { return {Kind::kThreshold, 0, t}; }
};

struct AgglomerativeResult {
  ClusterAssignment assignment;
  std::vector<double> merge_heights;  // linkage distance of each merge performed
};

// Bottom-up merging with Lance-Williams updates. Average linkage works on
// cosine distance 1 - cos. Ward works on L2-normalized vectors and reports
// merge heights on the Euclidean scale (the square root of the updated
// squared distance), so two singletons merge at their Euclidean distance.
// A threshold rule stops before the first merge whose height exceeds it.
// Equal distances merge the lexicographically smallest cluster pair first.
AgglomerativeResult agglomerative(std::span<const Vector> vectors, Linkage linkage,
                                  const StopRule& stop);

struct KMeansResult {
  ClusterAssignment assignment;
  std::vector<Vector> centroids;        // indexed by canonical label
  std::vector<double> inertia_history;  // within-cluster SSE after each update
  std::size_t iterations = 0;
};

// k-means++ seeding from SplitMix64(seed), then Lloyd iterations on Euclidean
// distance until the assignment is stable or `max_iterations` is reached. An
// emptied cluster takes the point farthest from its current centroid.
KMeansResult kmeans(std::span<const Vector> vectors, std::size_t k, std::uint64_t seed,
                    std::size_t max_iterations = 300);

}  // namespace wsi

#endif  // WSI_CLUSTERING_HPP_
