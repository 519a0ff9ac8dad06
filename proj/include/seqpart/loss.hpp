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

#ifndef SEQPART_LOSS_HPP
#define SEQPART_LOSS_HPP

#include <span>

namespace seqpart {

/// Hinge margins: positives are penalised above m_pos, negatives below m_neg.
struct LossConfig {
  double m_pos = 0.2;
  double m_neg = 7.0;

  /// Throws kInvalidConfig unless 0 <= m_pos < m_neg (both finite).
  void validate() const;
};

double contrastive_loss(double z, int label, const LossConfig& cfg = {});

/// Mean of contrastive_loss over the batch.
double batch_loss(std::span<const double> zs, std::span<const int> labels,
                  const LossConfig& cfg = {});

}  // namespace seqpart

#endif  // SEQPART_LOSS_HPP
