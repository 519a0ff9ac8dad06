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

#include "seqpart/aligner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "seqpart/rng.hpp"

namespace seqpart {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool improves(double candidate, double best) {
  if (std::isinf(best)) return candidate < best;
  return candidate < best - kTieTolerance * std::max(1.0, best);
}

void check_alignable(const EmbeddingSequence& audio,
                     const EmbeddingSequence& text) {
  require_same_dim(audio, text);
  if (audio.n() < text.n()) {
    std::ostringstream msg;
    msg << "cannot split " << audio.n() << " audio rows into " << text.n()
        << " nonempty chunks";
    throw Error(ErrorCode::kSequenceTooShort, msg.str());
  }
}

// Distance between the mean of prefix rows [lo, hi) (0-based prefix
// offsets) and `token`.
inline double chunk_distance(const double* sums, std::size_t d,
                             std::size_t lo, std::size_t hi,
                             const double* token) {
  const double inv_len = 1.0 / static_cast<double>(hi - lo);
  const double* a = sums + lo * d;
  const double* b = sums + hi * d;
  double acc = 0.0;
  for (std::size_t c = 0; c < d; ++c) {
    const double diff = (b[c] - a[c]) * inv_len - token[c];
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

// Row k = 1: a single chunk running from each start to the end.
void fill_last_chunk_row(const PrefixSums& ps, const double* token,
                         double* values, std::size_t* choices,
                         Execution exec) {
  const std::size_t n = ps.n();
  const std::size_t d = ps.d();
  const double* sums = ps.cumulative(0).data();
  const auto body = [&](std::size_t s) {
    values[s] = chunk_distance(sums, d, s, n, token);
    if (choices != nullptr) choices[s] = n + 1;
  };
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(n); ++s) {
      body(static_cast<std::size_t>(s));
    }
  } else {
    for (std::size_t s = 0; s < n; ++s) body(s);
  }
}

// Row k >= 2 from row k - 1. Start s (0-based) takes its first chunk as
// [s, e) for e in (s, n - k + 1]; the remaining k - 1 chunks start at e.
void fill_row(const PrefixSums& ps, const double* token, std::size_t k,
              const double* prev, double* values, std::size_t* choices,
              Execution exec) {
  const std::size_t n = ps.n();
  const std::size_t d = ps.d();
  const double* sums = ps.cumulative(0).data();
  const std::size_t last_start = n - k;  // inclusive
  const auto body = [&](std::size_t s) {
    double best = kInf;
    std::size_t best_end = s + 1;
    for (std::size_t e = s + 1; e <= last_start + 1; ++e) {
      const double candidate = chunk_distance(sums, d, s, e, token) + prev[e];
      if (improves(candidate, best)) {
        best = candidate;
        best_end = e;
      }
    }
    values[s] = best;
    if (choices != nullptr) choices[s] = best_end + 1;
  };
  if (exec == Execution::kParallel) {
    // Work per start shrinks linearly with s.
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t s = 0; s <= static_cast<std::ptrdiff_t>(last_start);
         ++s) {
      body(static_cast<std::size_t>(s));
    }
  } else {
    for (std::size_t s = 0; s <= last_start; ++s) body(s);
  }
  for (std::size_t s = last_start + 1; s < n; ++s) {
    values[s] = kInf;
    if (choices != nullptr) choices[s] = 0;
  }
}

// Reference kernel: the recurrence written out with 1-based indices and the
// public chunk-mean API. Kept deliberately plain.
void fill_table_serial(const EmbeddingSequence& audio,
                       const EmbeddingSequence& text, DPTable& table) {
  const std::size_t n = audio.n();
  const std::size_t m = text.n();
  const PrefixSums ps(audio);
  std::vector<double> mean(audio.d());

  for (std::size_t i = 1; i <= n; ++i) {
    ps.chunk_mean_into(i, n + 1, mean);
    table.value_row(1)[i - 1] = l2_distance(mean, text.row(m - 1));
    table.choice_row(1)[i - 1] = n + 1;
  }
  for (std::size_t k = 2; k <= m; ++k) {
    const auto token = text.row(m - k);
    for (std::size_t i = 1; i <= n - k + 1; ++i) {
      double best = kInf;
      std::size_t best_j = i + 1;
      for (std::size_t j = i + 1; j <= n - k + 2; ++j) {
        ps.chunk_mean_into(i, j, mean);
        const double delta = l2_distance(mean, token);
        const double candidate = delta + table.value(k - 1, j);
        if (improves(candidate, best)) {
          best = candidate;
          best_j = j;
        }
      }
      table.value_row(k)[i - 1] = best;
      table.choice_row(k)[i - 1] = best_j;
    }
  }
}

}  // namespace

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kDsp: return "dsp";
    case Scheme::kEqual: return "equal";
    case Scheme::kRandom: return "random";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  if (name == "dsp") return Scheme::kDsp;
  if (name == "equal") return Scheme::kEqual;
  if (name == "random") return Scheme::kRandom;
  return std::nullopt;
}

DPTable::DPTable(std::size_t m, std::size_t n)
    : m_(m), n_(n), values_(m * n, kInf), choices_(m * n, 0) {}

PartitionBoundaries DPTable::backtrack() const {
  std::vector<std::size_t> cuts{1};
  std::size_t i = 1;
  for (std::size_t k = m_; k >= 2; --k) {
    i = choice(k, i);
    cuts.push_back(i);
  }
  cuts.push_back(n_ + 1);
  return PartitionBoundaries(std::move(cuts), n_);
}

DPTable build_dp_table(const EmbeddingSequence& audio,
                       const EmbeddingSequence& text, Execution exec) {
  check_alignable(audio, text);
  const std::size_t m = text.n();
  DPTable table(m, audio.n());
  if (exec == Execution::kSerial) {
    fill_table_serial(audio, text, table);
    return table;
  }
  const PrefixSums ps(audio);
  fill_last_chunk_row(ps, text.row(m - 1).data(), table.value_row(1),
                      table.choice_row(1), exec);
  for (std::size_t k = 2; k <= m; ++k) {
    fill_row(ps, text.row(m - k).data(), k, table.value_row(k - 1),
             table.value_row(k), table.choice_row(k), exec);
  }
  return table;
}

AlignmentOutcome dsp_align(const EmbeddingSequence& audio,
                           const EmbeddingSequence& text, Execution exec) {
  const DPTable table = build_dp_table(audio, text, exec);
  PartitionBoundaries cuts = table.backtrack();
  EmbeddingSequence means = chunk_means(audio, cuts);
  const double cost = table.value(table.m(), 1) / static_cast<double>(text.n());
  return {cost, std::move(cuts), std::move(means)};
}

double dsp_cost(const EmbeddingSequence& audio, const EmbeddingSequence& text,
                Execution exec) {
  check_alignable(audio, text);
  const std::size_t m = text.n();
  const PrefixSums ps(audio);
  std::vector<double> prev(audio.n());
  std::vector<double> cur(audio.n());
  fill_last_chunk_row(ps, text.row(m - 1).data(), prev.data(), nullptr, exec);
  for (std::size_t k = 2; k <= m; ++k) {
    fill_row(ps, text.row(m - k).data(), k, prev.data(), cur.data(), nullptr,
             exec);
    std::swap(prev, cur);
  }
  return prev[0] / static_cast<double>(m);
}

std::uint64_t count_partitions(std::size_t n, std::size_t m) {
  if (m == 0 || n < m) return 0;
  // C(n-1, m-1) built incrementally; each partial product is itself a
  // binomial coefficient, so the division is exact.
  const std::uint64_t top = n - 1;
  std::uint64_t k = m - 1;
  if (k > top - k) k = top - k;
  std::uint64_t result = 1;
  for (std::uint64_t r = 1; r <= k; ++r) {
    const std::uint64_t factor = top - k + r;
    if (result > UINT64_MAX / factor) return UINT64_MAX;
    result = result * factor / r;
  }
  return result;
}

AlignmentOutcome brute_force_align(const EmbeddingSequence& audio,
                                   const EmbeddingSequence& text,
                                   std::uint64_t enumeration_cap) {
  check_alignable(audio, text);
  const std::size_t n = audio.n();
  const std::size_t m = text.n();
  const std::uint64_t total = count_partitions(n, m);
  if (total > enumeration_cap) {
    std::ostringstream msg;
    msg << total << " partitions exceed the enumeration cap of "
        << enumeration_cap;
    throw Error(ErrorCode::kEnumerationCap, msg.str());
  }

  // Interior cuts walk the (m-1)-combinations of {2..n} in lexicographic
  // order, so the first minimum seen is the lexicographically smallest.
  std::vector<std::size_t> cuts(m + 1);
  cuts.front() = 1;
  cuts.back() = n + 1;
  for (std::size_t k = 1; k < m; ++k) cuts[k] = k + 1;

  double best = kInf;
  std::vector<std::size_t> best_cuts;
  while (true) {
    const double cost =
        cost_of_partition(audio, text, PartitionBoundaries(cuts, n));
    if (improves(cost, best)) {
      best = cost;
      best_cuts = cuts;
    }
    // Advance: rightmost interior cut that can still move.
    std::size_t k = m - 1;
    while (k >= 1 && cuts[k] == n - (m - 1 - k)) --k;
    if (k == 0) break;
    ++cuts[k];
    for (std::size_t r = k + 1; r < m; ++r) cuts[r] = cuts[r - 1] + 1;
  }

  PartitionBoundaries boundaries(std::move(best_cuts), n);
  EmbeddingSequence means = chunk_means(audio, boundaries);
  return {best, std::move(boundaries), std::move(means)};
}

PartitionBoundaries equal_partition(std::size_t n, std::size_t m) {
  if (m == 0 || n < m) {
    throw Error(ErrorCode::kSequenceTooShort,
                "equal partition needs n >= m >= 1");
  }
  const std::size_t base = n / m;
  const std::size_t extra = n % m;
  std::vector<std::size_t> cuts{1};
  for (std::size_t k = 0; k < m; ++k) {
    cuts.push_back(cuts.back() + base + (k < extra ? 1 : 0));
  }
  return PartitionBoundaries(std::move(cuts), n);
}

PartitionBoundaries random_partition(std::size_t n, std::size_t m,
                                     std::uint64_t seed) {
  if (m == 0 || n < m) {
    throw Error(ErrorCode::kSequenceTooShort,
                "random partition needs n >= m >= 1");
  }
  std::vector<std::size_t> pool(n - 1);
  std::iota(pool.begin(), pool.end(), std::size_t{2});
  SplitMix64 rng(seed, /*stream=*/0x7061727469ULL);
  // Partial Fisher-Yates: the first m-1 slots become the sample.
  for (std::size_t t = 0; t + 1 < m; ++t) {
    const std::size_t r = t + rng.below(pool.size() - t);
    std::swap(pool[t], pool[r]);
  }
  std::vector<std::size_t> cuts{1};
  cuts.insert(cuts.end(), pool.begin(), pool.begin() + (m - 1));
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.push_back(n + 1);
  return PartitionBoundaries(std::move(cuts), n);
}

AlignmentOutcome align_with_scheme(const LabeledPair& pair, Scheme scheme,
                                   std::uint64_t seed) {
  if (scheme == Scheme::kDsp) return dsp_align(pair.audio, pair.text);
  check_alignable(pair.audio, pair.text);
  PartitionBoundaries cuts =
      scheme == Scheme::kEqual
          ? equal_partition(pair.audio.n(), pair.text.n())
          : random_partition(pair.audio.n(), pair.text.n(), seed);
  const double cost = cost_of_partition(pair.audio, pair.text, cuts);
  EmbeddingSequence means = chunk_means(pair.audio, cuts);
  return {cost, std::move(cuts), std::move(means)};
}

}  // namespace seqpart
