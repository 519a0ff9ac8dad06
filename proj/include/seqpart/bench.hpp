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

#ifndef SEQPART_BENCH_HPP
#define SEQPART_BENCH_HPP

#include <cstddef>
#include <cstdint>
#include <utility>

#include "seqpart/aligner.hpp"

namespace seqpart {

/// Audio (n x d) and text (m x d) with entries uniform in [-1, 1).
std::pair<EmbeddingSequence, EmbeddingSequence> random_instance(
    std::size_t n, std::size_t m, std::size_t d, std::uint64_t seed);

struct TimingOptions {
  Execution exec = Execution::kParallel;
  bool cost_only = false;
  std::uint64_t seed = 1;
};

/// Median wall-clock seconds of `repeats` alignments of one random instance.
double median_align_seconds(std::size_t n, std::size_t m, std::size_t d,
                            std::size_t repeats, const TimingOptions& opts);

}  // namespace seqpart

#endif  // SEQPART_BENCH_HPP
