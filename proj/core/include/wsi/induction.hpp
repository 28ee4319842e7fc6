#ifndef WSI_INDUCTION_HPP_
#define WSI_INDUCTION_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "wsi/clustering.hpp"
#include "wsi/dataset.hpp"
#include "wsi/embeddings.hpp"
#include "wsi/vectorizer.hpp"

namespace wsi {

struct Prototype {
  std::string label;
  std::string token;  // the neighbour that defines this sense
  Vector vector;
};

struct SenseInventory {
  std::string word;
  std::vector<Prototype> prototypes;
};

// Two senses from nearest neighbours: sense 1 is the nearest neighbour n1 of
// the word, sense 2 the nearest neighbour of v(word) - v(n1), excluding the
// word and n1. With `normalize_first` both vectors are L2-normalized before
// the subtraction.
SenseInventory nn_subtraction_prototypes(const std::string& word, const EmbeddingStore& store,
                                         bool normalize_first = false);

// Label of the prototype with the highest cosine; ties and a zero context
// vector go to the first prototype.
std::string assign_by_prototypes(std::span<const double> context, const SenseInventory& inventory);

struct ClusterMethod {
  enum class Algorithm { kAffinityPropagation, kAgglomerative, kKMeans };

  Algorithm algorithm = Algorithm::kAffinityPropagation;
  ApConfig ap;
  Linkage linkage = Linkage::kAverage;
  StopRule stop = StopRule::fixed_k(2);  // agglomerative
  std::size_t k = 2;                     // k-means
  std::uint64_t seed = 0;                // k-means
};

struct ClusterOutcome {
  std::vector<std::string> labels;  // "1", "2", ... in first-occurrence order
  std::size_t clusters = 0;
  std::size_t oov_records = 0;
  bool all_oov = false;  // nothing could be vectorized; one cluster emitted
  std::vector<std::string> warnings;
};

// Vectorizes each record, clusters the in-vocabulary ones and puts records
// without any known token into the largest cluster. A requested k larger
// than the number of clusterable records is clamped, with a warning.
ClusterOutcome cluster_contexts(std::span<const ContextRecord> records,
                                const EmbeddingStore& store, const WordStats* stats,
                                const WeightingScheme& scheme, const ClusterMethod& method,
                                bool exclude_target = true);

std::vector<std::string> baseline_one(std::span<const ContextRecord> records);
std::vector<std::string> baseline_singletons(std::span<const ContextRecord> records);
std::vector<std::string> baseline_random(std::span<const ContextRecord> records, std::size_t k,
                                         std::uint64_t seed);

struct MethodConfig {
  enum class Method { kNnSubtraction, kCluster, kBaselineOne, kBaselineSingletons, kBaselineRandom };

  Method method = Method::kBaselineOne;
  ClusterMethod cluster;
  WeightingScheme scheme;
  std::size_t random_k = 2;
  // Mixed with each word (see split_hash) so words draw independent streams.
  std::uint64_t seed = 0;
  bool exclude_target = true;
  bool normalize_before_subtraction = false;
};

struct WordRun {
  std::string word;
  std::size_t contexts = 0;
  std::size_t clusters = 0;
  std::string method;  // what actually produced the labels
  bool fallback = false;
};

struct RunReport {
  std::vector<WordRun> words;
  std::vector<std::string> warnings;
};

struct RunResult {
  Dataset dataset;
  RunReport report;
};

// Fills predict_sense_id of every record, word by word; everything else is
// copied unchanged and gold labels are never consulted. `store` may be null
// for the baselines.
RunResult run(const Dataset& dataset, const MethodConfig& config, const EmbeddingStore* store);

// `word<TAB>n_contexts<TAB>n_clusters<TAB>method` per word.
void write_cluster_summary(const RunReport& report, std::ostream& out);

}  // namespace wsi

#endif  // WSI_INDUCTION_HPP_
