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

#include "seqpart/bench.hpp"

#include <algorithm>
#include <chrono>
#include <vector>

#include "seqpart/rng.hpp"

namespace seqpart {

std::pair<EmbeddingSequence, EmbeddingSequence> random_instance(
    std::size_t n, std::size_t m, std::size_t d, std::uint64_t seed) {
  SplitMix64 rng(seed, 0x62656e6368ULL);
  const auto fill = [&](std::size_t rows) {
    std::vector<double> data(rows * d);
    for (double& v : data) v = 2.0 * rng.uniform() - 1.0;
    return EmbeddingSequence(rows, d, std::move(data));
  };
  EmbeddingSequence audio = fill(n);
  EmbeddingSequence text = fill(m);
  return {std::move(audio), std::move(text)};
}

double median_align_seconds(std::size_t n, std::size_t m, std::size_t d,
                            std::size_t repeats, const TimingOptions& opts) {
  if (n == 0 || m == 0 || d == 0 || repeats == 0 || m > n) {
    throw Error(ErrorCode::kInvalidInput,
                "benchmark sizes must be positive with m <= n");
  }
  const auto [audio, text] = random_instance(n, m, d, opts.seed);
  std::vector<double> samples;
  samples.reserve(repeats);
  volatile double sink = 0.0;
  for (std::size_t r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    if (opts.cost_only) {
      sink = sink + dsp_cost(audio, text, opts.exec);
    } else {
      sink = sink + dsp_align(audio, text, opts.exec).cost;
    }
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    samples.push_back(elapsed.count());
  }
  std::sort(samples.begin(), samples.end());
  const std::size_t mid = samples.size() / 2;
  return samples.size() % 2 == 1 ? samples[mid]
                                 : 0.5 * (samples[mid - 1] + samples[mid]);
}

}  // namespace seqpart
