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

#include "seqpart/loss.hpp"

#include <algorithm>
#include <cmath>

#include "seqpart/core.hpp"

namespace seqpart {

void LossConfig::validate() const {
  if (!std::isfinite(m_pos) || !std::isfinite(m_neg) || m_pos < 0.0 ||
      m_pos >= m_neg) {
    throw Error(ErrorCode::kInvalidConfig,
                "margins must satisfy 0 <= m_pos < m_neg");
  }
}

double contrastive_loss(double z, int label, const LossConfig& cfg) {
  if (!std::isfinite(z)) {
    throw Error(ErrorCode::kNonFinite, "distance must be finite");
  }
  if (z < 0.0) {
    throw Error(ErrorCode::kInvalidInput, "distance must be nonnegative");
  }
  if (label != 0 && label != 1) {
    throw Error(ErrorCode::kInvalidInput, "label must be 0 or 1");
  }
  cfg.validate();
  return label == 1 ? std::max(z - cfg.m_pos, 0.0)
                    : std::max(cfg.m_neg - z, 0.0);
}

double batch_loss(std::span<const double> zs, std::span<const int> labels,
                  const LossConfig& cfg) {
  if (zs.size() != labels.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "distances and labels differ in length");
  }
  if (zs.empty()) throw Error(ErrorCode::kEmptyBatch, "empty batch");
  double total = 0.0;
  for (std::size_t k = 0; k < zs.size(); ++k) {
    total += contrastive_loss(zs[k], labels[k], cfg);
  }
  return total / static_cast<double>(zs.size());
}

}  // namespace seqpart
