#include "wsi/induction.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <unordered_set>

#include "wsi/error.hpp"
#include "wsi/rng.hpp"

namespace wsi {
namespace {

Vector normalized(std::span<const double> v) {
  double norm = 0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  Vector out(v.begin(), v.end());
  if (norm > 0) {
    for (double& x : out) x /= norm;
  }
  return out;
}

std::vector<std::string> to_strings(std::span<const std::size_t> labels) {
  std::vector<std::string> out;
  out.reserve(labels.size());
  for (std::size_t l : labels) out.push_back(std::to_string(l + 1));
  return out;
}

std::size_t distinct(const std::vector<std::string>& labels) {
  return std::unordered_set<std::string>(labels.begin(), labels.end()).size();
}

std::string algorithm_name(const ClusterMethod& m) {
  switch (m.algorithm) {
    case ClusterMethod::Algorithm::kAffinityPropagation:
      return "ap";
    case ClusterMethod::Algorithm::kAgglomerative:
      return m.linkage == Linkage::kWard ? "agglomerative-ward" : "agglomerative-average";
    case ClusterMethod::Algorithm::kKMeans:
      return "kmeans";
  }
  return "cluster";
}

}  // namespace

SenseInventory nn_subtraction_prototypes(const std::string& word, const EmbeddingStore& store,
                                         bool normalize_first) {
  const auto target = store.find(word);
  if (target.empty()) throw Error("'" + word + "' is not in the embedding vocabulary");

  const auto first = nearest_neighbors(store, target, 1, {word});
  if (first.empty()) throw Error("vocabulary too small for a first prototype of '" + word + "'");
  const auto n1 = store.find(first[0].token);

  Vector query;
  if (normalize_first) {
    const Vector t = normalized(target), u = normalized(n1);
    for (std::size_t d = 0; d < t.size(); ++d) query.push_back(t[d] - u[d]);
  } else {
    for (std::size_t d = 0; d < target.size(); ++d) query.push_back(target[d] - n1[d]);
  }
  const auto second = nearest_neighbors(store, query, 1, {word, first[0].token});
  if (second.empty()) {
    throw Error("insufficient vocabulary for a second prototype of '" + word + "'");
  }
  const auto n2 = store.find(second[0].token);

  SenseInventory inventory{word, {}};
  inventory.prototypes.push_back({"1", first[0].token, Vector(n1.begin(), n1.end())});
  inventory.prototypes.push_back({"2", second[0].token, Vector(n2.begin(), n2.end())});
  return inventory;
}

std::string assign_by_prototypes(std::span<const double> context, const SenseInventory& inventory) {
  if (inventory.prototypes.empty()) throw Error("empty sense inventory for '" + inventory.word + "'");
  std::size_t best = 0;
  double best_sim = cosine(context, inventory.prototypes[0].vector);
  for (std::size_t p = 1; p < inventory.prototypes.size(); ++p) {
    const double sim = cosine(context, inventory.prototypes[p].vector);
    if (sim > best_sim) {
      best_sim = sim;
      best = p;
    }
  }
  return inventory.prototypes[best].label;
}

ClusterOutcome cluster_contexts(std::span<const ContextRecord> records,
                                const EmbeddingStore& store, const WordStats* stats,
                                const WeightingScheme& scheme, const ClusterMethod& method,
                                bool exclude_target) {
  if (records.empty()) throw Error("cannot cluster an empty set of contexts");
  ClusterOutcome out;

  std::vector<Vector> vectors;
  std::vector<std::size_t> in_vocab;
  for (std::size_t i = 0; i < records.size(); ++i) {
    ContextVector cv = context_vector(records[i], store, stats, scheme, exclude_target);
    if (cv.oov) {
      ++out.oov_records;
      continue;
    }
    in_vocab.push_back(i);
    vectors.push_back(std::move(cv.values));
  }
  if (vectors.empty()) {
    out.all_oov = true;
    out.labels = baseline_one(records);
    out.clusters = 1;
    out.warnings.push_back("no context could be vectorized; all contexts put in one cluster");
    return out;
  }

  const std::size_t m = vectors.size();
  const auto clamp_k = [&](std::size_t k) {
    if (k <= m) return k;
    out.warnings.push_back("k=" + std::to_string(k) + " exceeds " + std::to_string(m) +
                           " clusterable contexts; using k=" + std::to_string(m));
    return m;
  };

  ClusterAssignment assignment;
  switch (method.algorithm) {
    case ClusterMethod::Algorithm::kAffinityPropagation: {
      ApResult ap = affinity_propagation(cosine_similarity_matrix(vectors), method.ap);
      if (!ap.converged) {
        out.warnings.push_back("affinity propagation did not converge (damping " +
                               std::to_string(ap.damping) + ", " +
                               std::to_string(ap.iterations) + " iterations)");
      }
      assignment = std::move(ap.assignment);
      break;
    }
    case ClusterMethod::Algorithm::kAgglomerative: {
      StopRule stop = method.stop;
      if (stop.kind == StopRule::Kind::kFixedK) stop.k = clamp_k(stop.k);
      assignment = agglomerative(vectors, method.linkage, stop).assignment;
      break;
    }
    case ClusterMethod::Algorithm::kKMeans:
      assignment = kmeans(vectors, clamp_k(method.k), method.seed).assignment;
      break;
  }

  const std::size_t k = assignment.num_clusters();
  std::vector<std::size_t> cluster_size(k, 0);
  for (std::size_t l : assignment.labels) ++cluster_size[l];
  const std::size_t largest = static_cast<std::size_t>(
      std::max_element(cluster_size.begin(), cluster_size.end()) - cluster_size.begin());

  std::vector<std::size_t> raw(records.size(), largest);
  for (std::size_t x = 0; x < m; ++x) raw[in_vocab[x]] = assignment.labels[x];
  out.labels = to_strings(canonicalize(raw).labels);
  out.clusters = k;
  if (out.oov_records > 0) {
    out.warnings.push_back(std::to_string(out.oov_records) +
                           " context(s) without known tokens joined the largest cluster");
  }
  return out;
}

std::vector<std::string> baseline_one(std::span<const ContextRecord> records) {
  if (records.empty()) throw Error("baseline needs at least one context");
  return std::vector<std::string>(records.size(), "1");
}

std::vector<std::string> baseline_singletons(std::span<const ContextRecord> records) {
  if (records.empty()) throw Error("baseline needs at least one context");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < records.size(); ++i) labels.push_back(std::to_string(i + 1));
  return labels;
}

std::vector<std::string> baseline_random(std::span<const ContextRecord> records, std::size_t k,
                                         std::uint64_t seed) {
  if (records.empty()) throw Error("baseline needs at least one context");
  if (k < 1) throw Error("random baseline needs k >= 1");
  SplitMix64 rng(seed);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < records.size(); ++i) {
    labels.push_back(std::to_string(rng.below(k) + 1));
  }
  return labels;
}

RunResult run(const Dataset& dataset, const MethodConfig& config, const EmbeddingStore* store) {
  using M = MethodConfig::Method;
  const bool needs_store = config.method == M::kNnSubtraction || config.method == M::kCluster;
  if (needs_store && store == nullptr) throw Error("this method requires word embeddings");

  RunResult result{dataset, {}};
  std::optional<CorpusStats> corpus;
  if (config.method == M::kCluster &&
      config.scheme.variant != WeightingScheme::Variant::kUniform) {
    corpus.emplace(dataset);
  }

  for (const auto& [word, indices] : word_indices(dataset)) {
    std::vector<ContextRecord> group;
    group.reserve(indices.size());
    for (std::size_t i : indices) group.push_back(dataset.records[i]);
    const std::uint64_t word_seed = split_hash(word, config.seed);

    WordRun info{word, group.size(), 0, "", false};
    std::vector<std::string> labels;
    const auto warn = [&](const std::string& message) {
      result.report.warnings.push_back(word + ": " + message);
    };
    try {
      switch (config.method) {
        case M::kBaselineOne:
          labels = baseline_one(group);
          info.method = "one";
          break;
        case M::kBaselineSingletons:
          labels = baseline_singletons(group);
          info.method = "singletons";
          break;
        case M::kBaselineRandom:
          labels = baseline_random(group, config.random_k, word_seed);
          info.method = "random";
          break;
        case M::kNnSubtraction: {
          if (!store->contains(word)) {
            warn("not in the embedding vocabulary; falling back to one cluster");
            labels = baseline_one(group);
            info.method = "one";
            info.fallback = true;
            break;
          }
          const SenseInventory inventory =
              nn_subtraction_prototypes(word, *store, config.normalize_before_subtraction);
          for (const ContextRecord& r : group) {
            const ContextVector cv = context_vector(r, *store, nullptr, WeightingScheme::uniform(),
                                                    config.exclude_target);
            labels.push_back(assign_by_prototypes(cv.values, inventory));
          }
          info.method = "nn-sub(" + inventory.prototypes[0].token + "," +
                        inventory.prototypes[1].token + ")";
          break;
        }
        case M::kCluster: {
          std::optional<WordStats> stats;
          if (corpus) stats.emplace(corpus->word_stats(word));
          ClusterMethod method = config.cluster;
          method.seed = split_hash(word, config.cluster.seed);
          ClusterOutcome outcome = cluster_contexts(group, *store, stats ? &*stats : nullptr,
                                                    config.scheme, method, config.exclude_target);
          for (const std::string& w : outcome.warnings) warn(w);
          labels = std::move(outcome.labels);
          info.method = outcome.all_oov ? "one" : algorithm_name(method);
          info.fallback = outcome.all_oov;
          break;
        }
      }
    } catch (const Error& e) {
      throw Error("word '" + word + "': " + e.what());
    }

    info.clusters = distinct(labels);
    for (std::size_t x = 0; x < indices.size(); ++x) {
      result.dataset.records[indices[x]].predict_sense_id = std::move(labels[x]);
    }
    result.report.words.push_back(std::move(info));
  }
  return result;
}

void write_cluster_summary(const RunReport& report, std::ostream& out) {
  out << "word\tn_contexts\tn_clusters\tmethod\n";
  for (const WordRun& w : report.words) {
    out << w.word << '\t' << w.contexts << '\t' << w.clusters << '\t' << w.method
        << (w.fallback ? " (fallback)" : "") << '\n';
  }
}

}  // namespace wsi
