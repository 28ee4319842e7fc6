#ifndef WSI_SYNTH_HPP_
#define WSI_SYNTH_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wsi/dataset.hpp"
#include "wsi/embeddings.hpp"

namespace wsi {

// Planted-sense benchmark. For each word a base direction b is drawn and each
// sense s gets prototype p_s = normalize(b + separation * u_s) with u_s a
// random unit vector, so separation 0 makes all senses coincide. Topic tokens
// of a sense are normalize(p_s + noise * g), g ~ N(0, I / dim). The target
// word's vector is the normalized sum of its sense prototypes.
struct SynthSpec {
  std::size_t n_words = 3;
  std::size_t senses_per_word = 2;
  std::size_t contexts_per_sense = 20;
  std::size_t dim = 25;
  std::size_t vocab_per_sense = 20;
  double separation = 2.0;
  double noise = 0.1;
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kSynthTopicTokensPerContext = 10;

struct SynthWordTruth {
  std::string word;
  std::vector<std::string> senses;  // gold sense ids
  std::vector<Vector> prototypes;
};

struct SynthInstance {
  Dataset dataset;
  EmbeddingStore store;
  std::vector<SynthWordTruth> truth;
};

// Each context is 10 topic tokens of its sense plus the target at a random
// slot, space separated. Records of a word are shuffled; ids run "1".."N".
SynthInstance generate(const SynthSpec& spec);

// `word<TAB>sense<TAB>cos to sense 1 ... cos to sense S` per sense.
void write_truth(const std::vector<SynthWordTruth>& truth, std::ostream& out);

}  // namespace wsi

#endif  // WSI_SYNTH_HPP_
