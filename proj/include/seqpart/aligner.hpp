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

#ifndef SEQPART_ALIGNER_HPP
#define SEQPART_ALIGNER_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "seqpart/core.hpp"

namespace seqpart {

enum class Scheme { kDsp, kEqual, kRandom };

std::string_view to_string(Scheme scheme);
/// Accepts "dsp", "equal", "random".
std::optional<Scheme> parse_scheme(std::string_view name);

/// Which DP kernel to run. Both produce the same table; the serial one is
/// the straightforward reference kept for cross-checking.
enum class Execution { kParallel, kSerial };

/// Two DP candidates within this relative distance count as tied; the
/// smaller split index wins.
inline constexpr double kTieTolerance = 1e-12;

/// Sum-of-distances table for partitioning suffixes of the audio sequence.
///
/// value(k, i) is the least total distance for splitting rows i..n (1-based)
/// into k chunks matched against the last k text rows; choice(k, i) is the
/// 1-based start of the second chunk in that optimum (n + 1 when k == 1).
/// Entries with i > n - k + 1 are undefined and hold +inf / 0.
class DPTable {
 public:
  DPTable(std::size_t m, std::size_t n);

  std::size_t m() const noexcept { return m_; }
  std::size_t n() const noexcept { return n_; }
  double value(std::size_t k, std::size_t i) const {
    return values_[(k - 1) * n_ + (i - 1)];
  }
  std::size_t choice(std::size_t k, std::size_t i) const {
    return choices_[(k - 1) * n_ + (i - 1)];
  }
  double* value_row(std::size_t k) { return values_.data() + (k - 1) * n_; }
  std::size_t* choice_row(std::size_t k) {
    return choices_.data() + (k - 1) * n_;
  }
  const double* value_row(std::size_t k) const {
    return values_.data() + (k - 1) * n_;
  }

  /// Follows choice() from (m, 1) to recover the optimal cuts.
  PartitionBoundaries backtrack() const;

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<double> values_;
  std::vector<std::size_t> choices_;
};

DPTable build_dp_table(const EmbeddingSequence& audio,
                       const EmbeddingSequence& text,
                       Execution exec = Execution::kParallel);

/// Optimal partition of `audio` into text.n() chunks with backtracked cuts.
AlignmentOutcome dsp_align(const EmbeddingSequence& audio,
                           const EmbeddingSequence& text,
                           Execution exec = Execution::kParallel);

/// Cost-only variant keeping two rolling rows: O(n) memory, no boundaries.
double dsp_cost(const EmbeddingSequence& audio, const EmbeddingSequence& text,
                Execution exec = Execution::kParallel);

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// Binomial coefficient, saturating at UINT64_MAX.
std::uint64_t count_partitions(std::size_t n, std::size_t m);

/// Exhaustive search over every set of m-1 interior cuts. Ties (within
/// kTieTolerance) go to the lexicographically smallest cut list.
AlignmentOutcome brute_force_align(
    const EmbeddingSequence& audio, const EmbeddingSequence& text,
    std::uint64_t enumeration_cap = kDefaultEnumerationCap);

/// Chunk sizes differ by at most one; the n mod m larger chunks come first.
PartitionBoundaries equal_partition(std::size_t n, std::size_t m);

/// m-1 interior cuts drawn uniformly without replacement from {2..n}.
PartitionBoundaries random_partition(std::size_t n, std::size_t m,
                                     std::uint64_t seed);

AlignmentOutcome align_with_scheme(const LabeledPair& pair, Scheme scheme,
                                   std::uint64_t seed);

}  // namespace seqpart

#endif  // SEQPART_ALIGNER_HPP
