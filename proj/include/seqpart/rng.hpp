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

#ifndef SEQPART_RNG_HPP
#define SEQPART_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace seqpart {

/// SplitMix64 (Steele, Lea & Flood 2014) with explicit stream keying.
///
/// Every draw in the library goes through this type, and every transform
/// (uniform doubles, bounded integers, Gaussians) is written out here rather
/// than delegated to <random> distributions, whose outputs differ between
/// standard library implementations. Outputs are therefore identical on any
/// platform with IEEE-754 doubles and a correctly rounded std::log/std::sqrt.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Independent stream per (seed, stream) key.
  explicit SplitMix64(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : state_(mix(seed ^ mix(stream + kGamma))) {}

  std::uint64_t next() noexcept {
    state_ += kGamma;
    return mix(state_);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound), rejection-sampled so it is unbiased.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % bound;
  }

  /// Standard normal via Box-Muller; one value per call.
  double normal() noexcept {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace seqpart

#endif  // SEQPART_RNG_HPP
