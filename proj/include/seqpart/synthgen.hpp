// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SEQPART_SYNTHGEN_HPP
#define SEQPART_SYNTHGEN_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "seqpart/core.hpp"

namespace seqpart {

/// Number of positive and of negative pairs in every episode.
inline constexpr std::size_t kPairsPerClass = 3;

struct SynthConfig {
  std::size_t vocab_size = 100;
  std::size_t dim = 16;
  std::size_t phrase_len = 3;  // words per phrase, 1..4
  std::size_t dur_min = 3;     // frames per word
  std::size_t dur_max = 10;
  double noise_sigma = 0.15;
  bool hard_negative = false;
  std::uint64_t seed = 0;

  void validate() const;
};

/// One keyword phrase with matched and mismatched audio. All six pairs share
/// the same text sequence (the phrase's word prototypes).
struct Episode {
  std::size_t index = 0;
  std::vector<std::size_t> phrase;  // vocabulary ids
  std::vector<LabeledPair> positives;
  std::vector<LabeledPair> negatives;
  std::vector<std::vector<std::size_t>> negative_phrases;  // words spoken
  std::vector<PartitionBoundaries> true_boundaries;  // one per positive
};

/// vocab_size x dim unit-norm word prototypes, rounded to float32.
EmbeddingSequence make_vocabulary(const SynthConfig& cfg);

Episode generate_episode(const SynthConfig& cfg, std::size_t episode_index);

std::vector<Episode> generate_corpus(const SynthConfig& cfg,
                                     std::size_t num_episodes);

/// Like generate_corpus, but episode i uses phrase_lens[i % size] words.
std::vector<Episode> generate_mixed_corpus(
    const SynthConfig& cfg, std::span<const std::size_t> phrase_lens,
    std::size_t num_episodes);

}  // namespace seqpart

#endif  // SEQPART_SYNTHGEN_HPP
