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

#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "seqpart/core.hpp"
#include "seqpart/loss.hpp"
#include "seqpart/rng.hpp"

using namespace seqpart;

TEST_CASE("default margins") {
  const LossConfig cfg;
  CHECK(cfg.m_pos == 0.2);
  CHECK(cfg.m_neg == 7.0);
}

TEST_CASE("contrastive loss closed-form cases") {
  CHECK(contrastive_loss(0.1, 1) == 0.0);
  CHECK(contrastive_loss(1.2, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(contrastive_loss(5.0, 0) == 2.0);
  CHECK(contrastive_loss(9.0, 0) == 0.0);
  CHECK(contrastive_loss(0.0, 0, {0.0, 2.5}) == 2.5);
}

TEST_CASE("contrastive loss rejects bad input") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(contrastive_loss(nan, 1), Error);
  CHECK_THROWS_AS(contrastive_loss(std::numeric_limits<double>::infinity(), 0),
                  Error);
  CHECK_THROWS_AS(contrastive_loss(-0.5, 1), Error);
  CHECK_THROWS_AS(contrastive_loss(1.0, 2), Error);
  CHECK_THROWS_AS(contrastive_loss(1.0, 1, {3.0, 3.0}), Error);
  CHECK_THROWS_AS(contrastive_loss(1.0, 1, {-0.1, 3.0}), Error);
}

TEST_CASE("batch loss") {
  const std::vector<double> zs{1.2, 5.0};
  const std::vector<int> labels{1, 0};
  CHECK(batch_loss(zs, labels) == doctest::Approx(1.5).epsilon(1e-15));
  const std::vector<double> inside{0.0, 0.1, 0.2};
  const std::vector<int> pos{1, 1, 1};
  CHECK(batch_loss(inside, pos) == 0.0);
  const std::vector<double> one{3.3};
  const std::vector<int> neg{0};
  CHECK(batch_loss(one, neg) == contrastive_loss(3.3, 0));

  try {
    batch_loss(zs, pos);
    FAIL("expected length mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kLengthMismatch);
  }
  try {
    batch_loss(std::vector<double>{}, std::vector<int>{});
    FAIL("expected empty batch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyBatch);
  }
}

TEST_CASE("loss properties over random samples") {
  const LossConfig cfg;
  SplitMix64 rng(31337);
  const double h = 1e-6;
  for (int s = 0; s < 10000; ++s) {
    const double z = 12.0 * rng.uniform();
    const int label = static_cast<int>(rng.below(2));
    const double loss = contrastive_loss(z, label, cfg);
    CHECK(loss >= 0.0);
    if (label == 1 && z <= cfg.m_pos) CHECK(loss == 0.0);
    if (label == 0 && z >= cfg.m_neg) CHECK(loss == 0.0);

    const double later = contrastive_loss(z + 0.25, label, cfg);
    if (label == 1) CHECK(later >= loss);
    if (label == 0) CHECK(later <= loss);

    // Away from the hinge the slope is exactly one of -1, 0, +1.
    const double hinge = label == 1 ? cfg.m_pos : cfg.m_neg;
    if (std::abs(z - hinge) > 1e-3 && z > h) {
      const double slope = (contrastive_loss(z + h, label, cfg) -
                            contrastive_loss(z - h, label, cfg)) /
                           (2 * h);
      const double want = label == 1 ? (z > hinge ? 1.0 : 0.0)
                                      : (z < hinge ? -1.0 : 0.0);
      CHECK(slope == doctest::Approx(want).epsilon(1e-6));
    }
  }
}
