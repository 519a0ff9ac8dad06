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

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "seqpart/aligner.hpp"
#include "seqpart/harness.hpp"
#include "seqpart/synthgen.hpp"

using namespace seqpart;

namespace {

using Cuts = std::vector<std::size_t>;

SynthConfig quiet(std::size_t phrase_len, std::size_t dmin, std::size_t dmax) {
  SynthConfig cfg;
  cfg.phrase_len = phrase_len;
  cfg.dur_min = dmin;
  cfg.dur_max = dmax;
  cfg.noise_sigma = 0.0;
  cfg.seed = 17;
  return cfg;
}

bool same_pairs(const std::vector<LabeledPair>& a,
                const std::vector<LabeledPair>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!(a[k].audio == b[k].audio) || !(a[k].text == b[k].text) ||
        a[k].label != b[k].label) {
      return false;
    }
  }
  return true;
}

bool same_episode(const Episode& a, const Episode& b) {
  return a.index == b.index && a.phrase == b.phrase &&
         same_pairs(a.positives, b.positives) &&
         same_pairs(a.negatives, b.negatives) &&
         a.true_boundaries == b.true_boundaries &&
         a.negative_phrases == b.negative_phrases;
}

double mean_cost(const std::vector<Episode>& corpus, int label) {
  double total = 0.0;
  std::size_t count = 0;
  for (const auto& ep : corpus) {
    for (const auto& p : label == 1 ? ep.positives : ep.negatives) {
      total += dsp_align(p.audio, p.text).cost;
      ++count;
    }
  }
  return total / static_cast<double>(count);
}

}  // namespace

TEST_CASE("config validation") {
  const auto bad = [](auto mutate) {
    SynthConfig cfg;
    mutate(cfg);
    try {
      cfg.validate();
    } catch (const Error& e) {
      return e.code() == ErrorCode::kInvalidConfig;
    }
    return false;
  };
  CHECK(bad([](SynthConfig& c) { c.dim = 0; }));
  CHECK(bad([](SynthConfig& c) { c.phrase_len = 0; }));
  CHECK(bad([](SynthConfig& c) { c.phrase_len = 5; }));
  CHECK(bad([](SynthConfig& c) { c.dur_min = 0; }));
  CHECK(bad([](SynthConfig& c) { c.dur_min = 5, c.dur_max = 4; }));
  CHECK(bad([](SynthConfig& c) { c.vocab_size = 5, c.phrase_len = 3; }));
  CHECK(bad([](SynthConfig& c) { c.noise_sigma = -1.0; }));
  CHECK(bad([](SynthConfig& c) { c.noise_sigma = std::nan(""); }));
  CHECK_NOTHROW(SynthConfig{}.validate());
  CHECK_THROWS_AS(generate_corpus(SynthConfig{}, 0), Error);
}

TEST_CASE("vocabulary prototypes are unit norm and distinct") {
  SynthConfig cfg;
  const auto vocab = make_vocabulary(cfg);
  CHECK(vocab.n() == cfg.vocab_size);
  CHECK(vocab.d() == cfg.dim);
  for (std::size_t v = 0; v < vocab.n(); ++v) {
    double norm = 0.0;
    for (double x : vocab.row(v)) {
      norm += x * x;
      CHECK(static_cast<double>(static_cast<float>(x)) == x);
    }
    CHECK(std::sqrt(norm) == doctest::Approx(1.0).epsilon(1e-6));
    for (std::size_t w = 0; w < v; ++w) {
      CHECK(l2_distance(vocab.row(v), vocab.row(w)) > 0.0);
    }
  }
}

TEST_CASE("episode structure") {
  SynthConfig cfg;
  cfg.hard_negative = true;
  const Episode ep = generate_episode(cfg, 3);
  CHECK(ep.index == 3);
  CHECK(ep.positives.size() == kPairsPerClass);
  CHECK(ep.negatives.size() == kPairsPerClass);
  CHECK(ep.true_boundaries.size() == kPairsPerClass);
  CHECK(ep.phrase.size() == cfg.phrase_len);
  auto sorted = ep.phrase;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
  for (std::size_t k = 0; k < kPairsPerClass; ++k) {
    const auto& pos = ep.positives[k];
    CHECK(pos.label == 1);
    CHECK(ep.negatives[k].label == 0);
    CHECK(pos.audio.d() == cfg.dim);
    CHECK(ep.negatives[k].audio.d() == cfg.dim);
    CHECK(pos.text == ep.negatives[k].text);
    CHECK(ep.true_boundaries[k].length() == pos.audio.n());
    for (std::size_t s : ep.true_boundaries[k].chunk_sizes()) {
      CHECK(s >= cfg.dur_min);
      CHECK(s <= cfg.dur_max);
    }
  }
}

TEST_CASE("hard negatives swap exactly one word for its nearest neighbour") {
  SynthConfig cfg;
  cfg.hard_negative = true;
  const auto vocab = make_vocabulary(cfg);
  for (std::size_t e = 0; e < 20; ++e) {
    const Episode ep = generate_episode(cfg, e);
    for (const auto& spoken : ep.negative_phrases) {
      REQUIRE(spoken.size() == ep.phrase.size());
      std::size_t changed = 0;
      for (std::size_t w = 0; w < spoken.size(); ++w) {
        if (spoken[w] == ep.phrase[w]) continue;
        ++changed;
        CHECK(std::find(ep.phrase.begin(), ep.phrase.end(), spoken[w]) ==
              ep.phrase.end());
        // Brute-force nearest prototype outside the phrase.
        const double chosen =
            l2_distance(vocab.row(spoken[w]), vocab.row(ep.phrase[w]));
        for (std::size_t v = 0; v < vocab.n(); ++v) {
          if (std::find(ep.phrase.begin(), ep.phrase.end(), v) !=
              ep.phrase.end()) {
            continue;
          }
          CHECK(l2_distance(vocab.row(v), vocab.row(ep.phrase[w])) >= chosen);
        }
      }
      CHECK(changed == 1);
    }
  }
}

TEST_CASE("easy negatives use words outside the phrase") {
  SynthConfig cfg;
  for (std::size_t e = 0; e < 20; ++e) {
    const Episode ep = generate_episode(cfg, e);
    for (const auto& spoken : ep.negative_phrases) {
      for (std::size_t w : spoken) {
        CHECK(std::find(ep.phrase.begin(), ep.phrase.end(), w) ==
              ep.phrase.end());
      }
    }
  }
}

TEST_CASE("determinism") {
  SynthConfig cfg;
  cfg.hard_negative = true;
  const auto a = generate_corpus(cfg, 5);
  const auto b = generate_corpus(cfg, 5);
  REQUIRE(a.size() == 5);
  for (std::size_t e = 0; e < 5; ++e) {
    CHECK(same_episode(a[e], b[e]));
    CHECK(same_episode(a[e], generate_episode(cfg, e)));
  }
  CHECK(same_episode(generate_corpus(cfg, 1).front(), generate_episode(cfg, 0)));
  cfg.seed += 1;
  CHECK_FALSE(same_episode(a[0], generate_episode(cfg, 0)));
}

TEST_CASE("zero noise, one frame per word: audio equals text") {
  const auto corpus = generate_corpus(quiet(4, 1, 1), 10);
  for (const auto& ep : corpus) {
    for (const auto& pos : ep.positives) {
      CHECK(pos.audio == pos.text);
      const auto out = dsp_align(pos.audio, pos.text);
      CHECK(out.cost == 0.0);
      CHECK(out.boundaries.cuts() == Cuts{1, 2, 3, 4, 5});
    }
  }
}

TEST_CASE("zero noise with word durations (2, 5, 5) is recovered exactly") {
  const SynthConfig cfg = quiet(3, 1, 1);
  const auto vocab = make_vocabulary(cfg);
  const std::size_t words[] = {4, 41, 77};
  const std::size_t durations[] = {2, 5, 5};
  std::vector<double> audio;
  std::vector<double> text;
  for (int w = 0; w < 3; ++w) {
    const auto proto = vocab.row(words[w]);
    text.insert(text.end(), proto.begin(), proto.end());
    for (std::size_t f = 0; f < durations[w]; ++f) {
      audio.insert(audio.end(), proto.begin(), proto.end());
    }
  }
  const auto out = dsp_align(EmbeddingSequence(12, cfg.dim, audio),
                             EmbeddingSequence(3, cfg.dim, text));
  CHECK(out.cost == 0.0);
  CHECK(out.boundaries.cuts() == Cuts{1, 3, 8, 13});
}

TEST_CASE("zero-noise recoverability across episodes") {
  SynthConfig cfg = quiet(3, 1, 8);
  for (std::size_t len : {1, 2, 3, 4}) {
    cfg.phrase_len = len;
    for (const auto& ep : generate_corpus(cfg, 25)) {
      for (std::size_t k = 0; k < kPairsPerClass; ++k) {
        const auto out = dsp_align(ep.positives[k].audio, ep.positives[k].text);
        CHECK(out.cost == 0.0);
        CHECK(out.boundaries == ep.true_boundaries[k]);
        if (len == 1) CHECK(out.boundaries.num_chunks() == 1);
      }
    }
  }
}

TEST_CASE("mean positive cost grows with noise") {
  SynthConfig cfg;
  cfg.seed = 3;
  double previous = -1.0;
  for (double sigma : {0.0, 0.05, 0.1, 0.2, 0.4}) {
    cfg.noise_sigma = sigma;
    const double pos = mean_cost(generate_corpus(cfg, 100), 1);
    CHECK(pos >= previous);
    previous = pos;
  }
}

TEST_CASE("regression fixture: positives sit below hard negatives") {
  SynthConfig cfg;
  cfg.noise_sigma = 0.05;
  cfg.phrase_len = 3;
  cfg.hard_negative = true;
  cfg.seed = 0;
  const auto corpus = generate_corpus(cfg, 200);
  const double pos = mean_cost(corpus, 1);
  const double neg = mean_cost(corpus, 0);
  CHECK(pos < neg);
  // Frozen from the generator at seed 0; a change here means the RNG stream
  // or the generation order changed.
  CHECK(pos == doctest::Approx(0.081003997127789273).epsilon(1e-9));
  CHECK(neg == doctest::Approx(0.34478902390719429).epsilon(1e-9));
}

TEST_CASE("scored corpus keeps episode order") {
  SynthConfig cfg;
  const auto corpus = generate_corpus(cfg, 4);
  const auto scored = score_corpus(corpus, Scheme::kDsp, 0);
  REQUIRE(scored.size() == 4 * 2 * kPairsPerClass);
  CHECK(scored[0].id == "ep000000-pos0");
  CHECK(scored[3].id == "ep000000-neg0");
  CHECK(scored[23].id == "ep000003-neg2");
  CHECK(scored[3].label == 0);
  const auto again = score_corpus(corpus, Scheme::kRandom, 5);
  const auto twice = score_corpus(corpus, Scheme::kRandom, 5);
  for (std::size_t k = 0; k < again.size(); ++k) {
    CHECK(again[k].cost == twice[k].cost);
    CHECK(scored[k].cost <= again[k].cost + 1e-9);
  }
}
