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

#include "seqpart/core.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace seqpart {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "invalid-input";
    case ErrorCode::kNonFinite: return "non-finite";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kIndexOutOfRange: return "index-out-of-range";
    case ErrorCode::kEmptyRange: return "empty-range";
    case ErrorCode::kChunkCountMismatch: return "chunk-count-mismatch";
    case ErrorCode::kInvalidBoundaries: return "invalid-boundaries";
    case ErrorCode::kSequenceTooShort: return "sequence-too-short";
    case ErrorCode::kEnumerationCap: return "enumeration-cap-exceeded";
    case ErrorCode::kSingleClass: return "single-class";
    case ErrorCode::kLengthMismatch: return "length-mismatch";
    case ErrorCode::kEmptyBatch: return "empty-batch";
    case ErrorCode::kInvalidConfig: return "invalid-config";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kFormat: return "format";
  }
  return "unknown";
}

EmbeddingSequence::EmbeddingSequence(std::size_t n, std::size_t d,
                                     std::vector<double> data)
    : n_(n), d_(d), data_(std::move(data)) {
  if (n_ == 0 || d_ == 0) {
    throw Error(ErrorCode::kInvalidInput,
                "embedding sequence needs n >= 1 and d >= 1");
  }
  if (data_.size() != n_ * d_) {
    std::ostringstream msg;
    msg << "embedding payload has " << data_.size() << " values, expected "
        << n_ << "x" << d_;
    throw Error(ErrorCode::kInvalidInput, msg.str());
  }
  for (std::size_t k = 0; k < data_.size(); ++k) {
    if (!std::isfinite(data_[k])) {
      std::ostringstream msg;
      msg << "non-finite value at row " << k / d_ + 1 << ", column "
          << k % d_ + 1;
      throw Error(ErrorCode::kNonFinite, msg.str());
    }
  }
}

EmbeddingSequence EmbeddingSequence::from_rows(
    const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw Error(ErrorCode::kInvalidInput, "empty embedding sequence");
  }
  const std::size_t d = rows.front().size();
  std::vector<double> data;
  data.reserve(rows.size() * d);
  for (const auto& r : rows) {
    if (r.size() != d) {
      throw Error(ErrorCode::kInvalidInput, "ragged embedding rows");
    }
    data.insert(data.end(), r.begin(), r.end());
  }
  return EmbeddingSequence(rows.size(), d, std::move(data));
}

PartitionBoundaries::PartitionBoundaries(std::vector<std::size_t> cuts,
                                         std::size_t n)
    : cuts_(std::move(cuts)) {
  if (cuts_.size() < 2) {
    throw Error(ErrorCode::kInvalidBoundaries,
                "a partition needs at least two cut indices");
  }
  if (cuts_.front() != 1 || cuts_.back() != n + 1) {
    std::ostringstream msg;
    msg << "cuts must start at 1 and end at n+1 = " << n + 1;
    throw Error(ErrorCode::kInvalidBoundaries, msg.str());
  }
  for (std::size_t k = 1; k < cuts_.size(); ++k) {
    if (cuts_[k] <= cuts_[k - 1]) {
      throw Error(ErrorCode::kInvalidBoundaries,
                  "cuts must be strictly increasing");
    }
  }
}

std::vector<std::size_t> PartitionBoundaries::chunk_sizes() const {
  std::vector<std::size_t> sizes(num_chunks());
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    sizes[k] = cuts_[k + 1] - cuts_[k];
  }
  return sizes;
}

PrefixSums::PrefixSums(const EmbeddingSequence& seq)
    : n_(seq.n()), d_(seq.d()), sums_((seq.n() + 1) * seq.d(), 0.0) {
  for (std::size_t i = 0; i < n_; ++i) {
    const auto src = seq.row(i);
    const double* prev = sums_.data() + i * d_;
    double* next = sums_.data() + (i + 1) * d_;
    for (std::size_t c = 0; c < d_; ++c) next[c] = prev[c] + src[c];
  }
}

void PrefixSums::chunk_mean_into(std::size_t i, std::size_t j,
                                 std::span<double> out) const {
  if (i < 1 || j > n_ + 1) {
    std::ostringstream msg;
    msg << "chunk [" << i << ", " << j << ") outside [1, " << n_ + 1 << ")";
    throw Error(ErrorCode::kIndexOutOfRange, msg.str());
  }
  if (i >= j) {
    throw Error(ErrorCode::kEmptyRange, "chunk range is empty");
  }
  const double inv_len = 1.0 / static_cast<double>(j - i);
  const double* hi = sums_.data() + (j - 1) * d_;
  const double* lo = sums_.data() + (i - 1) * d_;
  for (std::size_t c = 0; c < d_; ++c) out[c] = (hi[c] - lo[c]) * inv_len;
}

LabeledPair::LabeledPair(EmbeddingSequence audio_seq,
                         EmbeddingSequence text_seq, int label_value)
    : audio(std::move(audio_seq)), text(std::move(text_seq)),
      label(label_value) {
  require_same_dim(audio, text);
  if (label != 0 && label != 1) {
    throw Error(ErrorCode::kInvalidInput, "label must be 0 or 1");
  }
}

PrefixSums build_prefix_sums(const EmbeddingSequence& seq) {
  return PrefixSums(seq);
}

std::vector<double> chunk_mean(const PrefixSums& ps, std::size_t i,
                               std::size_t j) {
  std::vector<double> out(ps.d());
  ps.chunk_mean_into(i, j, out);
  return out;
}

void require_same_dim(const EmbeddingSequence& a, const EmbeddingSequence& b) {
  if (a.d() != b.d()) {
    std::ostringstream msg;
    msg << "embedding dimensions differ: " << a.d() << " vs " << b.d();
    throw Error(ErrorCode::kDimensionMismatch, msg.str());
  }
}

double l2_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double diff = a[c] - b[c];
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

EmbeddingSequence chunk_means(const EmbeddingSequence& audio,
                              const PartitionBoundaries& p) {
  if (p.length() != audio.n()) {
    throw Error(ErrorCode::kInvalidBoundaries,
                "partition length does not match the audio sequence");
  }
  const std::size_t d = audio.d();
  const auto& cuts = p.cuts();
  std::vector<double> means(p.num_chunks() * d, 0.0);
  for (std::size_t k = 0; k < p.num_chunks(); ++k) {
    double* dst = means.data() + k * d;
    for (std::size_t r = cuts[k] - 1; r < cuts[k + 1] - 1; ++r) {
      const auto src = audio.row(r);
      for (std::size_t c = 0; c < d; ++c) dst[c] += src[c];
    }
    const double len = static_cast<double>(cuts[k + 1] - cuts[k]);
    for (std::size_t c = 0; c < d; ++c) dst[c] /= len;
  }
  return EmbeddingSequence(p.num_chunks(), d, std::move(means));
}

double cost_of_partition(const EmbeddingSequence& audio,
                         const EmbeddingSequence& text,
                         const PartitionBoundaries& p) {
  require_same_dim(audio, text);
  if (p.num_chunks() != text.n()) {
    std::ostringstream msg;
    msg << "partition has " << p.num_chunks() << " chunks but text has "
        << text.n() << " tokens";
    throw Error(ErrorCode::kChunkCountMismatch, msg.str());
  }
  const EmbeddingSequence means = chunk_means(audio, p);
  double total = 0.0;
  for (std::size_t k = 0; k < text.n(); ++k) {
    total += l2_distance(means.row(k), text.row(k));
  }
  return total / static_cast<double>(text.n());
}

}  // namespace seqpart
