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

#include "seqpart/harness.hpp"

#include <cstdio>

#include "seqpart/rng.hpp"

namespace seqpart {

std::string pair_id(std::size_t episode_index, int label, std::size_t slot) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "ep%06zu-%s%zu", episode_index,
                label == 1 ? "pos" : "neg", slot);
  return buf;
}

std::uint64_t pair_seed(std::uint64_t seed, std::size_t ordinal) {
  return SplitMix64::mix(seed + SplitMix64::kGamma * (ordinal + 1));
}

std::vector<ScoredPair> score_corpus(std::span<const Episode> corpus,
                                     Scheme scheme, std::uint64_t seed) {
  struct Job {
    const LabeledPair* pair;
    std::string id;
  };
  std::vector<Job> jobs;
  for (const auto& ep : corpus) {
    for (std::size_t k = 0; k < ep.positives.size(); ++k) {
      jobs.push_back({&ep.positives[k], pair_id(ep.index, 1, k)});
    }
    for (std::size_t k = 0; k < ep.negatives.size(); ++k) {
      jobs.push_back({&ep.negatives[k], pair_id(ep.index, 0, k)});
    }
  }
  std::vector<ScoredPair> scored(jobs.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(jobs.size());
       ++t) {
    const auto idx = static_cast<std::size_t>(t);
    const LabeledPair& pair = *jobs[idx].pair;
    // Nested regions inside the DP kernel run on one thread here.
    const double cost =
        align_with_scheme(pair, scheme, pair_seed(seed, idx)).cost;
    scored[idx] = {jobs[idx].id, cost, pair.label};
  }
  return scored;
}

std::vector<SchemeComparison> compare_schemes(std::span<const Episode> corpus,
                                              std::uint64_t seed) {
  std::vector<SchemeComparison> out;
  for (Scheme s : {Scheme::kDsp, Scheme::kEqual, Scheme::kRandom}) {
    const auto scored = score_corpus(corpus, s, seed);
    out.push_back({s, evaluate(scored)});
  }
  return out;
}

}  // namespace seqpart
