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

#include "seqpart/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "seqpart/core.hpp"

namespace seqpart {

namespace {

struct ClassCounts {
  std::size_t pos = 0;
  std::size_t neg = 0;
};

ClassCounts validate(std::span<const ScoredPair> pairs) {
  ClassCounts counts;
  for (const auto& p : pairs) {
    if (!std::isfinite(p.cost)) {
      throw Error(ErrorCode::kNonFinite, "non-finite cost for '" + p.id + "'");
    }
    if (p.label == 1) {
      ++counts.pos;
    } else if (p.label == 0) {
      ++counts.neg;
    } else {
      throw Error(ErrorCode::kInvalidInput, "label must be 0 or 1");
    }
  }
  if (counts.pos == 0 || counts.neg == 0) {
    throw Error(ErrorCode::kSingleClass,
                "need at least one positive and one negative");
  }
  return counts;
}

// Distinct costs ascending with per-class multiplicities.
struct TieGroup {
  double cost;
  std::size_t pos;
  std::size_t neg;
};

std::vector<TieGroup> group_by_cost(std::span<const ScoredPair> pairs) {
  std::vector<std::pair<double, int>> sorted;
  sorted.reserve(pairs.size());
  for (const auto& p : pairs) sorted.emplace_back(p.cost, p.label);
  std::sort(sorted.begin(), sorted.end());
  std::vector<TieGroup> groups;
  for (const auto& [cost, label] : sorted) {
    if (groups.empty() || groups.back().cost != cost) {
      groups.push_back({cost, 0, 0});
    }
    (label == 1 ? groups.back().pos : groups.back().neg) += 1;
  }
  return groups;
}

}  // namespace

double auc(std::span<const ScoredPair> pairs) {
  const ClassCounts counts = validate(pairs);
  // Twice the Mann-Whitney U, kept integral until the final division.
  std::uint64_t twice_u = 0;
  std::size_t neg_at_or_below = 0;
  for (const auto& g : group_by_cost(pairs)) {
    neg_at_or_below += g.neg;
    const std::uint64_t neg_above = counts.neg - neg_at_or_below;
    twice_u += 2 * g.pos * neg_above + g.pos * g.neg;
  }
  return static_cast<double>(twice_u) /
         (2.0 * static_cast<double>(counts.pos) *
          static_cast<double>(counts.neg));
}

EerPoint eer(std::span<const ScoredPair> pairs) {
  const ClassCounts counts = validate(pairs);
  const auto groups = group_by_cost(pairs);
  const double n_pos = static_cast<double>(counts.pos);
  const double n_neg = static_cast<double>(counts.neg);

  // Start just below the smallest cost: nothing accepted, FPR 0, FNR 1.
  double prev_fpr = 0.0;
  double prev_fnr = 1.0;
  double prev_threshold = groups.front().cost;
  std::size_t pos_accepted = 0;
  std::size_t neg_accepted = 0;
  for (const auto& g : groups) {
    pos_accepted += g.pos;
    neg_accepted += g.neg;
    const double fpr = static_cast<double>(neg_accepted) / n_neg;
    const double fnr = static_cast<double>(counts.pos - pos_accepted) / n_pos;
    if (fpr == fnr) return {fpr, g.cost};
    if (fpr > fnr) {
      // The gap fpr - fnr changes sign on this step.
      const double before = prev_fpr - prev_fnr;
      const double after = fpr - fnr;
      const double t = -before / (after - before);
      return {prev_fpr + t * (fpr - prev_fpr),
              prev_threshold + t * (g.cost - prev_threshold)};
    }
    prev_fpr = fpr;
    prev_fnr = fnr;
    prev_threshold = g.cost;
  }
  // Unreachable: at the last threshold fpr = 1 >= fnr = 0.
  return {prev_fpr, prev_threshold};
}

EvalReport evaluate(std::span<const ScoredPair> pairs) {
  const ClassCounts counts = validate(pairs);
  const EerPoint point = eer(pairs);
  return {auc(pairs), point.eer, point.threshold, counts.pos, counts.neg};
}

}  // namespace seqpart
