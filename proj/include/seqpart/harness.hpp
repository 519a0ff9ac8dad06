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

#ifndef SEQPART_HARNESS_HPP
#define SEQPART_HARNESS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "seqpart/aligner.hpp"
#include "seqpart/metrics.hpp"
#include "seqpart/synthgen.hpp"

namespace seqpart {

/// Stable id of a pair inside a corpus, e.g. "ep000012-neg1".
std::string pair_id(std::size_t episode_index, int label, std::size_t slot);

/// Seed handed to the random scheme for one pair; decorrelates pairs while
/// staying a pure function of (seed, pair ordinal).
std::uint64_t pair_seed(std::uint64_t seed, std::size_t ordinal);

/// Aligns every pair of every episode under `scheme`. Output order is
/// episode order, positives before negatives, independent of threading.
std::vector<ScoredPair> score_corpus(std::span<const Episode> corpus,
                                     Scheme scheme, std::uint64_t seed);

struct SchemeComparison {
  Scheme scheme;
  EvalReport report;
};

/// Evaluates dsp, equal and random partitioning on the same corpus.
std::vector<SchemeComparison> compare_schemes(std::span<const Episode> corpus,
                                              std::uint64_t seed);

}  // namespace seqpart

#endif  // SEQPART_HARNESS_HPP
