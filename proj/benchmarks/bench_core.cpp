#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "wsi/clustering.hpp"
#include "wsi/induction.hpp"
#include "wsi/metrics.hpp"
#include "wsi/rng.hpp"
#include "wsi/synth.hpp"

namespace {

std::vector<wsi::Vector> random_vectors(std::size_t n, std::size_t dim, std::uint64_t seed) {
  wsi::SplitMix64 rng(seed);
  std::vector<wsi::Vector> out(n, wsi::Vector(dim));
  for (auto& v : out)
    for (double& x : v) x = rng.uniform() - 0.5;
  return out;
}

void BM_Ari(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  wsi::SplitMix64 rng(1);
  std::vector<std::string> gold, pred;
  for (std::size_t i = 0; i < n; ++i) {
    gold.push_back(std::to_string(rng.below(5)));
    pred.push_back(std::to_string(rng.below(8)));
  }
  for (auto _ : state) benchmark::DoNotOptimize(wsi::ari(gold, pred));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Ari)->Arg(100)->Arg(10000);

void BM_AffinityPropagation(benchmark::State& state) {
  const auto v = random_vectors(static_cast<std::size_t>(state.range(0)), 100, 2);
  const auto s = wsi::cosine_similarity_matrix(v);
  for (auto _ : state) benchmark::DoNotOptimize(wsi::affinity_propagation(s));
}
BENCHMARK(BM_AffinityPropagation)->Arg(50)->Arg(200);

void BM_Agglomerative(benchmark::State& state) {
  const auto v = random_vectors(static_cast<std::size_t>(state.range(0)), 100, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        wsi::agglomerative(v, wsi::Linkage::kWard, wsi::StopRule::fixed_k(2)));
  }
}
BENCHMARK(BM_Agglomerative)->Arg(50)->Arg(200);

void BM_KMeans(benchmark::State& state) {
  const auto v = random_vectors(static_cast<std::size_t>(state.range(0)), 100, 4);
  for (auto _ : state) benchmark::DoNotOptimize(wsi::kmeans(v, 4, 7));
}
BENCHMARK(BM_KMeans)->Arg(200)->Arg(2000);

void BM_InducePipeline(benchmark::State& state) {
  wsi::SynthSpec spec;
  spec.n_words = 10;
  spec.dim = 100;
  const wsi::SynthInstance inst = wsi::generate(spec);
  wsi::MethodConfig cfg;
  cfg.method = wsi::MethodConfig::Method::kCluster;
  cfg.scheme = wsi::WeightingScheme::tfidf_chisq();
  for (auto _ : state) benchmark::DoNotOptimize(wsi::run(inst.dataset, cfg, &inst.store));
}
BENCHMARK(BM_InducePipeline);

}  // namespace

BENCHMARK_MAIN();
