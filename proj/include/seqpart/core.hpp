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

#ifndef SEQPART_CORE_HPP
#define SEQPART_CORE_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqpart {

enum class ErrorCode {
  kInvalidInput,
  kNonFinite,
  kDimensionMismatch,
  kIndexOutOfRange,
  kEmptyRange,
  kChunkCountMismatch,
  kInvalidBoundaries,
  kSequenceTooShort,  // n < m
  kEnumerationCap,
  kSingleClass,
  kLengthMismatch,
  kEmptyBatch,
  kInvalidConfig,
  kIo,
  kFormat,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Row-major n x d matrix of finite reals. Rows are addressed 0-based in
/// C++ (`row(r)`); the 1-based convention applies only to cut indices.
class EmbeddingSequence {
 public:
  EmbeddingSequence(std::size_t n, std::size_t d, std::vector<double> data);

  /// Builds from nested rows; all rows must have the same nonzero length.
  static EmbeddingSequence from_rows(
      const std::vector<std::vector<double>>& rows);

  std::size_t n() const noexcept { return n_; }
  std::size_t d() const noexcept { return d_; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * d_, d_};
  }
  std::span<const double> data() const noexcept { return data_; }

  bool operator==(const EmbeddingSequence&) const = default;

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<double> data_;
};

/// Cut indices i_0..i_m, 1-based; chunk k covers rows [cuts[k-1], cuts[k]).
class PartitionBoundaries {
 public:
  /// Validates cuts[0] == 1, strict increase, and cuts.back() == n + 1.
  PartitionBoundaries(std::vector<std::size_t> cuts, std::size_t n);

  const std::vector<std::size_t>& cuts() const noexcept { return cuts_; }
  std::size_t num_chunks() const noexcept { return cuts_.size() - 1; }
  std::size_t length() const noexcept { return cuts_.back() - 1; }
  std::vector<std::size_t> chunk_sizes() const;

  bool operator==(const PartitionBoundaries&) const = default;
  auto operator<=>(const PartitionBoundaries& o) const {
    return cuts_ <=> o.cuts_;
  }

 private:
  std::vector<std::size_t> cuts_;
};

/// (n+1) x d running sums; row i holds the sum of the first i rows.
class PrefixSums {
 public:
  explicit PrefixSums(const EmbeddingSequence& seq);

  std::size_t n() const noexcept { return n_; }
  std::size_t d() const noexcept { return d_; }
  std::span<const double> cumulative(std::size_t i) const {
    return {sums_.data() + i * d_, d_};
  }

  /// Mean of rows i..j-1 (1-based, half-open), written into `out`.
  void chunk_mean_into(std::size_t i, std::size_t j,
                       std::span<double> out) const;

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<double> sums_;
};

struct LabeledPair {
  LabeledPair(EmbeddingSequence audio_seq, EmbeddingSequence text_seq,
              int label_value);

  EmbeddingSequence audio;
  EmbeddingSequence text;
  int label;
};

struct AlignmentOutcome {
  double cost;
  PartitionBoundaries boundaries;
  EmbeddingSequence chunk_means;  // m x d
};

PrefixSums build_prefix_sums(const EmbeddingSequence& seq);

/// Mean of rows i..j-1 with 1-based half-open indices, 1 <= i < j <= n+1.
std::vector<double> chunk_mean(const PrefixSums& ps, std::size_t i,
                               std::size_t j);

/// Average unsquared Euclidean distance between each chunk mean and its
/// paired text row.
double cost_of_partition(const EmbeddingSequence& audio,
                         const EmbeddingSequence& text,
                         const PartitionBoundaries& p);

/// Chunk means of `audio` under `p`, computed by direct summation.
EmbeddingSequence chunk_means(const EmbeddingSequence& audio,
                              const PartitionBoundaries& p);

/// Throws kDimensionMismatch unless both sequences share d.
void require_same_dim(const EmbeddingSequence& a, const EmbeddingSequence& b);

double l2_distance(std::span<const double> a, std::span<const double> b);

}  // namespace seqpart

#endif  // SEQPART_CORE_HPP
