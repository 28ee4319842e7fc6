#include "wsi/synth.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <utility>

#include "wsi/error.hpp"
#include "wsi/rng.hpp"

namespace wsi {
namespace {

Vector normalize(Vector v) {
  double norm = 0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm > 0) {
    for (double& x : v) x /= norm;
  }
  return v;
}

class Gaussian {
 public:
  explicit Gaussian(SplitMix64& rng) : rng_(rng) {}

  Vector draw(std::size_t dim, double scale) {
    Vector v(dim);
    for (double& x : v) x = scale * normal_(rng_);
    return v;
  }
  Vector unit(std::size_t dim) {
    Vector v;
    do {
      v = draw(dim, 1.0);
    } while (std::all_of(v.begin(), v.end(), [](double x) { return x == 0; }));
    return normalize(std::move(v));
  }

 private:
  SplitMix64& rng_;
  std::normal_distribution<double> normal_;
};

void check(const SynthSpec& spec) {
  if (spec.n_words == 0 || spec.senses_per_word == 0 || spec.contexts_per_sense == 0 ||
      spec.vocab_per_sense == 0) {
    throw Error("synthetic spec counts must be positive");
  }
  if (spec.dim < 2) throw Error("synthetic spec needs dim >= 2");
  if (!(spec.separation >= 0 && std::isfinite(spec.separation)) ||
      !(spec.noise >= 0 && std::isfinite(spec.noise))) {
    throw Error("synthetic separation and noise must be finite and non-negative");
  }
}

}  // namespace

SynthInstance generate(const SynthSpec& spec) {
  check(spec);
  SplitMix64 rng(spec.seed);
  Gaussian gauss(rng);
  SynthInstance out{{}, EmbeddingStore(spec.dim), {}};
  std::size_t next_id = 0;

  for (std::size_t w = 0; w < spec.n_words; ++w) {
    SynthWordTruth truth;
    truth.word = "lemma" + std::to_string(w);
    const Vector base = gauss.unit(spec.dim);

    std::vector<std::vector<std::string>> topic(spec.senses_per_word);
    Vector target(spec.dim, 0.0);
    for (std::size_t s = 0; s < spec.senses_per_word; ++s) {
      const Vector u = gauss.unit(spec.dim);
      Vector p(spec.dim);
      for (std::size_t d = 0; d < spec.dim; ++d) p[d] = base[d] + spec.separation * u[d];
      p = normalize(std::move(p));
      for (std::size_t d = 0; d < spec.dim; ++d) target[d] += p[d];

      for (std::size_t j = 0; j < spec.vocab_per_sense; ++j) {
        const Vector g = gauss.draw(spec.dim, spec.noise / std::sqrt(static_cast<double>(spec.dim)));
        Vector t(spec.dim);
        for (std::size_t d = 0; d < spec.dim; ++d) t[d] = p[d] + g[d];
        std::string name = truth.word + "sense" + std::to_string(s + 1) + "tok" + std::to_string(j);
        out.store.add(name, normalize(std::move(t)));
        topic[s].push_back(std::move(name));
      }
      truth.senses.push_back(std::to_string(s + 1));
      truth.prototypes.push_back(std::move(p));
    }
    out.store.add(truth.word, normalize(std::move(target)));

    std::vector<ContextRecord> records;
    for (std::size_t s = 0; s < spec.senses_per_word; ++s) {
      for (std::size_t c = 0; c < spec.contexts_per_sense; ++c) {
        std::vector<std::string> tokens;
        for (std::size_t t = 0; t < kSynthTopicTokensPerContext; ++t) {
          tokens.push_back(topic[s][rng.below(spec.vocab_per_sense)]);
        }
        const std::size_t slot = rng.below(kSynthTopicTokensPerContext + 1);
        tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(slot), truth.word);

        ContextRecord r;
        r.word = truth.word;
        r.gold_sense_id = truth.senses[s];
        for (std::size_t t = 0; t < tokens.size(); ++t) {
          if (t > 0) r.context += ' ';
          if (t == slot) r.positions.push_back({r.context.size(), r.context.size() + truth.word.size()});
          r.context += tokens[t];
        }
        records.push_back(std::move(r));
      }
    }
    for (std::size_t i = records.size(); i > 1; --i) {
      std::swap(records[i - 1], records[rng.below(i)]);
    }
    for (ContextRecord& r : records) {
      r.context_id = std::to_string(++next_id);
      out.dataset.records.push_back(std::move(r));
    }
    out.truth.push_back(std::move(truth));
  }
  return out;
}

void write_truth(const std::vector<SynthWordTruth>& truth, std::ostream& out) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::fixed << std::setprecision(6);
  for (const SynthWordTruth& w : truth) {
    for (std::size_t s = 0; s < w.prototypes.size(); ++s) {
      out << w.word << '\t' << w.senses[s];
      for (const Vector& other : w.prototypes) out << '\t' << cosine(w.prototypes[s], other);
      out << '\n';
    }
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace wsi
