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

#include "seqpart/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "seqpart/rng.hpp"

namespace seqpart {

namespace {

constexpr std::uint64_t kVocabStream = 0x766f636162ULL;

double to_float32(double x) {
  return static_cast<double>(static_cast<float>(x));
}

// k distinct draws from `pool`, in draw order.
std::vector<std::size_t> sample_distinct(std::vector<std::size_t> pool,
                                         std::size_t k, SplitMix64& rng) {
  for (std::size_t t = 0; t < k; ++t) {
    const std::size_t r = t + rng.below(pool.size() - t);
    std::swap(pool[t], pool[r]);
  }
  pool.resize(k);
  return pool;
}

struct Audio {
  EmbeddingSequence frames;
  PartitionBoundaries cuts;
};

Audio render_audio(const EmbeddingSequence& vocab,
                   const std::vector<std::size_t>& words,
                   const SynthConfig& cfg, SplitMix64& rng) {
  const std::size_t d = cfg.dim;
  std::vector<double> data;
  std::vector<std::size_t> cuts{1};
  for (std::size_t w : words) {
    const std::size_t span = cfg.dur_max - cfg.dur_min + 1;
    const std::size_t frames = cfg.dur_min + rng.below(span);
    const auto proto = vocab.row(w);
    for (std::size_t f = 0; f < frames; ++f) {
      for (std::size_t c = 0; c < d; ++c) {
        double v = proto[c];
        if (cfg.noise_sigma > 0.0) v += cfg.noise_sigma * rng.normal();
        data.push_back(to_float32(v));
      }
    }
    cuts.push_back(cuts.back() + frames);
  }
  const std::size_t n = data.size() / d;
  return {EmbeddingSequence(n, d, std::move(data)),
          PartitionBoundaries(std::move(cuts), n)};
}

EmbeddingSequence phrase_text(const EmbeddingSequence& vocab,
                              const std::vector<std::size_t>& words) {
  std::vector<double> data;
  for (std::size_t w : words) {
    const auto proto = vocab.row(w);
    data.insert(data.end(), proto.begin(), proto.end());
  }
  return EmbeddingSequence(words.size(), vocab.d(), std::move(data));
}

std::size_t nearest_outside(const EmbeddingSequence& vocab, std::size_t word,
                            const std::vector<std::size_t>& excluded) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_id = word;
  for (std::size_t v = 0; v < vocab.n(); ++v) {
    if (std::find(excluded.begin(), excluded.end(), v) != excluded.end()) {
      continue;
    }
    const double dist = l2_distance(vocab.row(v), vocab.row(word));
    if (dist < best) {
      best = dist;
      best_id = v;
    }
  }
  return best_id;
}

Episode generate_with_vocab(const EmbeddingSequence& vocab,
                            const SynthConfig& cfg, std::size_t index) {
  SplitMix64 rng(cfg.seed, index + 1);
  std::vector<std::size_t> all_ids(cfg.vocab_size);
  std::iota(all_ids.begin(), all_ids.end(), std::size_t{0});

  Episode ep;
  ep.index = index;
  ep.phrase = sample_distinct(all_ids, cfg.phrase_len, rng);
  const EmbeddingSequence text = phrase_text(vocab, ep.phrase);

  for (std::size_t k = 0; k < kPairsPerClass; ++k) {
    Audio audio = render_audio(vocab, ep.phrase, cfg, rng);
    ep.true_boundaries.push_back(std::move(audio.cuts));
    ep.positives.emplace_back(std::move(audio.frames), text, 1);
  }

  std::vector<std::size_t> others;
  for (std::size_t v : all_ids) {
    if (std::find(ep.phrase.begin(), ep.phrase.end(), v) == ep.phrase.end()) {
      others.push_back(v);
    }
  }
  for (std::size_t k = 0; k < kPairsPerClass; ++k) {
    std::vector<std::size_t> spoken;
    if (cfg.hard_negative) {
      spoken = ep.phrase;
      const std::size_t slot = rng.below(cfg.phrase_len);
      spoken[slot] = nearest_outside(vocab, ep.phrase[slot], ep.phrase);
    } else {
      spoken = sample_distinct(others, cfg.phrase_len, rng);
    }
    Audio audio = render_audio(vocab, spoken, cfg, rng);
    ep.negatives.emplace_back(std::move(audio.frames), text, 0);
    ep.negative_phrases.push_back(std::move(spoken));
  }
  return ep;
}

}  // namespace

void SynthConfig::validate() const {
  const auto fail = [](const char* what) {
    throw Error(ErrorCode::kInvalidConfig, what);
  };
  if (dim == 0) fail("dim must be positive");
  if (phrase_len < 1 || phrase_len > 4) fail("phrase_len must be in [1, 4]");
  if (dur_min < 1 || dur_min > dur_max) {
    fail("durations must satisfy 1 <= dur_min <= dur_max");
  }
  if (vocab_size < 2 * phrase_len) fail("vocab_size must be >= 2*phrase_len");
  if (!std::isfinite(noise_sigma) || noise_sigma < 0.0) {
    fail("noise_sigma must be finite and nonnegative");
  }
}

EmbeddingSequence make_vocabulary(const SynthConfig& cfg) {
  cfg.validate();
  SplitMix64 rng(cfg.seed, kVocabStream);
  std::vector<double> data(cfg.vocab_size * cfg.dim);
  for (std::size_t v = 0; v < cfg.vocab_size; ++v) {
    double* row = data.data() + v * cfg.dim;
    double norm = 0.0;
    while (norm == 0.0) {
      for (std::size_t c = 0; c < cfg.dim; ++c) {
        row[c] = rng.normal();
        norm += row[c] * row[c];
      }
    }
    norm = std::sqrt(norm);
    for (std::size_t c = 0; c < cfg.dim; ++c) {
      row[c] = to_float32(row[c] / norm);
    }
  }
  return EmbeddingSequence(cfg.vocab_size, cfg.dim, std::move(data));
}

Episode generate_episode(const SynthConfig& cfg, std::size_t episode_index) {
  return generate_with_vocab(make_vocabulary(cfg), cfg, episode_index);
}

std::vector<Episode> generate_corpus(const SynthConfig& cfg,
                                     std::size_t num_episodes) {
  const std::size_t lens[] = {cfg.phrase_len};
  return generate_mixed_corpus(cfg, lens, num_episodes);
}

std::vector<Episode> generate_mixed_corpus(
    const SynthConfig& cfg, std::span<const std::size_t> phrase_lens,
    std::size_t num_episodes) {
  if (num_episodes == 0) {
    throw Error(ErrorCode::kInvalidConfig, "need at least one episode");
  }
  if (phrase_lens.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "no phrase lengths given");
  }
  const EmbeddingSequence vocab = make_vocabulary(cfg);
  std::vector<Episode> corpus;
  corpus.reserve(num_episodes);
  for (std::size_t e = 0; e < num_episodes; ++e) {
    SynthConfig episode_cfg = cfg;
    episode_cfg.phrase_len = phrase_lens[e % phrase_lens.size()];
    episode_cfg.validate();
    corpus.push_back(generate_with_vocab(vocab, episode_cfg, e));
  }
  return corpus;
}

}  // namespace seqpart
