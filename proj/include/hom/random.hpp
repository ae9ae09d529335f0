/**
 * Copyright 2026 The homsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hom {

/// P(n) = (1 - ratio) ratio^n with the logarithm precomputed.
struct GeometricLaw {
  explicit GeometricLaw(double ratio)
      : zero_probability(ratio > 0.0 ? 1.0 - ratio : 1.0), log_ratio(ratio > 0.0 ? std::log(ratio) : 0.0) {}

  double zero_probability;
  double log_ratio;
};

/// Seedable random stream. Engine and seeding are fully specified by the
/// standard library, and the deviates below are derived from raw engine
/// output by hand, so a (seed, stream) pair yields the same sequence on
/// every conforming platform.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  /// Number of failures before the first success, P(n) = (1 - ratio) ratio^n.
  int geometric(double ratio) { return geometric(GeometricLaw(ratio)); }

  /// Inversion, n = floor(log(1 - u) / log(ratio)); the n = 0 branch
  /// (u < 1 - ratio) skips the logarithm.
  int geometric(const GeometricLaw& law) {
    const double u = uniform();
    if (u < law.zero_probability) return 0;
    return static_cast<int>(std::floor(std::log1p(-u) / law.log_ratio));
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hom
