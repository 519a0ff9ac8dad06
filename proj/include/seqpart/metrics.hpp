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

#ifndef SEQPART_METRICS_HPP
#define SEQPART_METRICS_HPP

#include <cstddef>
#include <span>
#include <string>

namespace seqpart {

/// A scored example. Lower cost means "more likely a match"; a pair is
/// classified positive when cost <= threshold.
struct ScoredPair {
  std::string id;
  double cost;
  int label;
};

struct EerPoint {
  double eer;
  double threshold;  // in cost units
};

struct EvalReport {
  double auc;
  double eer;
  double eer_threshold;
  std::size_t n_pos;
  std::size_t n_neg;
};

/// Probability that a random positive has lower cost than a random negative,
/// ties counted as one half.
double auc(std::span<const ScoredPair> pairs);

/// Equal error rate. Thresholds sweep the distinct observed costs; when the
/// false-positive and false-negative rates cross between two adjacent
/// thresholds the crossing is linearly interpolated.
EerPoint eer(std::span<const ScoredPair> pairs);

EvalReport evaluate(std::span<const ScoredPair> pairs);

}  // namespace seqpart

#endif  // SEQPART_METRICS_HPP
