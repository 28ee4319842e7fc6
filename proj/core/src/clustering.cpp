#include "wsi/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "wsi/error.hpp"
#include "wsi/rng.hpp"

namespace wsi {
namespace {

std::size_t check_vectors(std::span<const Vector> vectors) {
  if (vectors.empty()) throw Error("clustering needs at least one vector");
  const std::size_t dim = vectors.front().size();
  for (const Vector& v : vectors) {
    if (v.size() != dim) {
      throw Error("clustering: dimension mismatch (" + std::to_string(v.size()) + " vs " +
                  std::to_string(dim) + ")");
    }
  }
  return dim;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    const double diff = a[d] - b[d];
    s += diff * diff;
  }
  return s;
}

Vector l2_normalized(const Vector& v) {
  double norm = 0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  Vector out = v;
  if (norm > 0) {
    for (double& x : out) x /= norm;
  }
  return out;
}

}  // namespace

double SimilarityMatrix::off_diagonal_median() const {
  if (n_ < 2) throw Error("median preference needs at least 2 items");
  std::vector<double> off;
  off.reserve(n_ * (n_ - 1));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k)
      if (i != k) off.push_back((*this)(i, k));
  const std::size_t mid = off.size() / 2;
  std::nth_element(off.begin(), off.begin() + static_cast<std::ptrdiff_t>(mid), off.end());
  const double upper = off[mid];
  if (off.size() % 2 == 1) return upper;
  const double lower = *std::max_element(off.begin(), off.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lower + upper) / 2.0;
}

SimilarityMatrix cosine_similarity_matrix(std::span<const Vector> vectors) {
  check_vectors(vectors);
  const std::size_t n = vectors.size();
  SimilarityMatrix s(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      const double c = cosine(vectors[i], vectors[k]);
      s(i, k) = c;
      s(k, i) = c;
    }
  }
  return s;
}

std::size_t ClusterAssignment::num_clusters() const {
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

ClusterAssignment canonicalize(std::span<const std::size_t> raw_labels) {
  ClusterAssignment out;
  out.labels.reserve(raw_labels.size());
  std::unordered_map<std::size_t, std::size_t> renumber;
  for (std::size_t raw : raw_labels) {
    out.labels.push_back(renumber.try_emplace(raw, renumber.size()).first->second);
  }
  return out;
}

namespace {

struct Messages {
  std::vector<char> exemplar;
  bool converged = false;
  std::size_t iterations = 0;
};

// `s` carries the preferences on its diagonal.
Messages pass_messages(const SimilarityMatrix& s, double lambda, const ApConfig& config) {
  const std::size_t n = s.size();
  SimilarityMatrix r(n), a(n);
  std::vector<double> column(n);
  Messages m;
  m.exemplar.assign(n, 0);
  std::vector<char> previous(n, 0);
  std::size_t stable = 0;

  for (std::size_t it = 1; it <= config.max_iterations; ++it) {
    // Responsibilities.
    for (std::size_t i = 0; i < n; ++i) {
      double best = -std::numeric_limits<double>::infinity();
      double second = best;
      std::size_t best_k = 0;
      for (std::size_t k = 0; k < n; ++k) {
        const double v = a(i, k) + s(i, k);
        if (v > best) {
          second = best;
          best = v;
          best_k = k;
        } else if (v > second) {
          second = v;
        }
      }
      for (std::size_t k = 0; k < n; ++k) {
        const double fresh = s(i, k) - (k == best_k ? second : best);
        r(i, k) = lambda * r(i, k) + (1.0 - lambda) * fresh;
      }
    }
    // Availabilities.
    for (std::size_t k = 0; k < n; ++k) {
      double sum = r(k, k);
      for (std::size_t i = 0; i < n; ++i)
        if (i != k) sum += std::max(0.0, r(i, k));
      column[k] = sum;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const double fresh = i == k ? column[k] - r(k, k)
                                    : std::min(0.0, column[k] - std::max(0.0, r(i, k)));
        a(i, k) = lambda * a(i, k) + (1.0 - lambda) * fresh;
      }
    }

    bool any = false;
    for (std::size_t k = 0; k < n; ++k) {
      m.exemplar[k] = r(k, k) + a(k, k) > 0.0;
      any = any || m.exemplar[k];
    }
    stable = m.exemplar == previous ? stable + 1 : 0;
    previous = m.exemplar;
    m.iterations = it;
    if (any && stable >= config.convergence_window) {
      m.converged = true;
      break;
    }
  }
  return m;
}

}  // namespace

ApResult affinity_propagation(const SimilarityMatrix& similarities, const ApConfig& config) {
  const std::size_t n = similarities.size();
  if (n == 0) throw Error("affinity propagation needs at least one item");
  if (!(config.damping >= 0.5 && config.damping < 1.0)) {
    throw Error("affinity propagation damping must lie in [0.5, 1)");
  }
  if (config.max_iterations == 0 || config.convergence_window == 0) {
    throw Error("affinity propagation iteration counts must be positive");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (i != k && !std::isfinite(similarities(i, k))) {
        throw Error("affinity propagation: non-finite similarity");
      }
  if (n == 1) return {{{0}, {0}}, true, 0, config.damping};

  SimilarityMatrix s = similarities;
  const double preference =
      config.preference ? *config.preference : similarities.off_diagonal_median();
  if (!std::isfinite(preference)) throw Error("affinity propagation: non-finite preference");
  for (std::size_t k = 0; k < n; ++k) s(k, k) = preference;

  constexpr double kMaxEscalatedDamping = 0.9;
  double lambda = config.damping;
  Messages m = pass_messages(s, lambda, config);
  while (!m.converged && config.escalate_damping && lambda < kMaxEscalatedDamping - 1e-9) {
    lambda = std::min(kMaxEscalatedDamping, lambda + 0.2);
    m = pass_messages(s, lambda, config);
  }

  ApResult result;
  result.converged = m.converged;
  result.iterations = m.iterations;
  result.damping = lambda;

  std::vector<std::size_t> centers;
  for (std::size_t k = 0; k < n; ++k)
    if (m.exemplar[k]) centers.push_back(k);
  if (centers.empty()) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < n; ++k)
      if (s(k, k) > s(best, best)) best = k;
    centers.push_back(best);
  }

  std::vector<std::size_t> raw(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::binary_search(centers.begin(), centers.end(), i)) {
      raw[i] = i;
      continue;
    }
    std::size_t best = centers.front();
    for (std::size_t k : centers)
      if (s(i, k) > s(i, best)) best = k;
    raw[i] = best;
  }
  result.assignment = canonicalize(raw);
  result.assignment.exemplars.assign(result.assignment.num_clusters(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (raw[i] == i) result.assignment.exemplars[result.assignment.labels[i]] = i;
  }
  return result;
}

AgglomerativeResult agglomerative(std::span<const Vector> vectors, Linkage linkage,
                                  const StopRule& stop) {
  check_vectors(vectors);
  const std::size_t n = vectors.size();
  if (stop.kind == StopRule::Kind::kFixedK && (stop.k < 1 || stop.k > n)) {
    throw Error("agglomerative: k must lie in [1, " + std::to_string(n) + "], got " +
                std::to_string(stop.k));
  }

  // Working distances: 1 - cos for average linkage, squared Euclidean on
  // unit vectors for Ward.
  std::vector<double> dist(n * n, 0.0);
  const auto d = [&](std::size_t i, std::size_t j) -> double& { return dist[i * n + j]; };
  std::vector<Vector> unit;
  if (linkage == Linkage::kWard) {
    unit.reserve(n);
    for (const Vector& v : vectors) unit.push_back(l2_normalized(v));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = linkage == Linkage::kAverage ? 1.0 - cosine(vectors[i], vectors[j])
                                                    : squared_distance(unit[i], unit[j]);
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  const auto height = [&](double working) {
    return linkage == Linkage::kWard ? std::sqrt(std::max(0.0, working)) : working;
  };

  std::vector<std::size_t> size(n, 1);
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  std::vector<std::size_t> active(n);
  for (std::size_t i = 0; i < n; ++i) active[i] = i;

  AgglomerativeResult result;
  while (active.size() > 1) {
    if (stop.kind == StopRule::Kind::kFixedK && active.size() <= stop.k) break;
    std::size_t bi = 0, bj = 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < active.size(); ++x) {
      for (std::size_t y = x + 1; y < active.size(); ++y) {
        const double v = d(active[x], active[y]);
        if (v < best) {
          best = v;
          bi = x;
          bj = y;
        }
      }
    }
    const double h = height(best);
    if (stop.kind == StopRule::Kind::kThreshold && h > stop.threshold) break;

    const std::size_t i = active[bi];
    const std::size_t j = active[bj];
    const double ni = static_cast<double>(size[i]);
    const double nj = static_cast<double>(size[j]);
    for (std::size_t k : active) {
      if (k == i || k == j) continue;
      double v;
      if (linkage == Linkage::kAverage) {
        v = (ni * d(k, i) + nj * d(k, j)) / (ni + nj);
      } else {
        const double nk = static_cast<double>(size[k]);
        v = ((nk + ni) * d(k, i) + (nk + nj) * d(k, j) - nk * d(i, j)) / (nk + ni + nj);
      }
      d(k, i) = v;
      d(i, k) = v;
    }
    size[i] += size[j];
    parent[j] = i;
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(bj));
    result.merge_heights.push_back(h);
  }

  std::vector<std::size_t> root(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t r = x;
    while (parent[r] != r) r = parent[r];
    root[x] = r;
  }
  result.assignment = canonicalize(root);
  return result;
}

KMeansResult kmeans(std::span<const Vector> vectors, std::size_t k, std::uint64_t seed,
                    std::size_t max_iterations) {
  const std::size_t dim = check_vectors(vectors);
  const std::size_t n = vectors.size();
  if (k < 1 || k > n) {
    throw Error("k-means: k must lie in [1, " + std::to_string(n) + "], got " +
                std::to_string(k));
  }

  // k-means++ seeding.
  SplitMix64 rng(seed);
  std::vector<Vector> centroids;
  std::vector<char> chosen(n, 0);
  std::size_t first = static_cast<std::size_t>(rng.below(n));
  centroids.push_back(vectors[first]);
  chosen[first] = 1;
  std::vector<double> nearest(n);
  for (std::size_t i = 0; i < n; ++i) nearest[i] = squared_distance(vectors[i], centroids[0]);
  while (centroids.size() < k) {
    double total = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (!chosen[i]) total += nearest[i];
    std::size_t pick = n;
    if (total > 0) {
      const double target = rng.uniform() * total;
      double cumulative = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (chosen[i]) continue;
        cumulative += nearest[i];
        if (cumulative > target) {
          pick = i;
          break;
        }
      }
      if (pick == n) {  // rounding at the top end
        for (std::size_t i = n; i-- > 0;)
          if (!chosen[i] && nearest[i] > 0) {
            pick = i;
            break;
          }
      }
    } else {
      for (std::size_t i = 0; i < n && pick == n; ++i)
        if (!chosen[i]) pick = i;
    }
    chosen[pick] = 1;
    centroids.push_back(vectors[pick]);
    for (std::size_t i = 0; i < n; ++i)
      nearest[i] = std::min(nearest[i], squared_distance(vectors[i], centroids.back()));
  }

  KMeansResult result;
  std::vector<std::size_t> assign(n, k), previous(n, k);
  std::vector<std::size_t> counts(k);
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = squared_distance(vectors[i], centroids[0]);
      for (std::size_t c = 1; c < k; ++c) {
        const double dc = squared_distance(vectors[i], centroids[c]);
        if (dc < best_d) {
          best_d = dc;
          best = c;
        }
      }
      assign[i] = best;
    }

    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t c : assign) ++counts[c];
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      std::size_t far = n;
      double far_d = -1;
      for (std::size_t i = 0; i < n; ++i) {
        if (counts[assign[i]] < 2) continue;
        const double di = squared_distance(vectors[i], centroids[assign[i]]);
        if (di > far_d) {
          far_d = di;
          far = i;
        }
      }
      --counts[assign[far]];
      assign[far] = c;
      counts[c] = 1;
    }

    result.iterations = it;
    if (assign == previous) break;
    previous = assign;

    for (Vector& c : centroids) std::fill(c.begin(), c.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t dd = 0; dd < dim; ++dd) centroids[assign[i]][dd] += vectors[i][dd];
    for (std::size_t c = 0; c < k; ++c)
      for (double& x : centroids[c]) x /= static_cast<double>(counts[c]);

    double sse = 0;
    for (std::size_t i = 0; i < n; ++i) sse += squared_distance(vectors[i], centroids[assign[i]]);
    result.inertia_history.push_back(sse);
  }

  result.assignment = canonicalize(assign);
  result.centroids.assign(k, Vector());
  for (std::size_t i = 0; i < n; ++i) {
    Vector& slot = result.centroids[result.assignment.labels[i]];
    if (slot.empty()) slot = centroids[assign[i]];
  }
  return result;
}

}  // namespace wsi
