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

#include <cstdint>

#include "hom/fock.hpp"
#include "hom/random.hpp"

namespace hom::pdc {

/// Pulsed down-conversion source. The squeezing parameter zeta is the
/// stored quantity; everything else derives from it. The per-pulse pair
/// probability P used in rate formulas is tanh^2(zeta), which agrees with
/// zeta^2 to O(zeta^4).
class SourceParams {
 public:
  static SourceParams from_zeta(double zeta);
  /// Inverts P = tanh^2(zeta). Requires 0 <= P < 1.
  static SourceParams from_pair_probability(double p);

  double zeta() const { return zeta_; }
  /// Geometric ratio of the pair-number law.
  double lambda() const;
  double g() const;
  double gamma() const;
  double pair_probability() const { return lambda(); }

  /// Throws ValidationError unless |P - zeta^2| / zeta^2 < 0.05.
  void check_small_zeta() const;

  bool operator==(const SourceParams&) const = default;

 private:
  explicit SourceParams(double zeta) : zeta_(zeta) {}
  double zeta_ = 0.0;
};

/// (1 - lambda) lambda^n.
double pair_number_distribution(const SourceParams& params, int n);

struct PairCountSample {
  int n1 = 0;
  int n2 = 0;
  bool operator==(const PairCountSample&) const = default;
};

/// Draws (n1, n2) from two independent pair-number laws; caches the
/// per-source logarithms for tight sampling loops.
class PairCountSampler {
 public:
  PairCountSampler(const SourceParams& s1, const SourceParams& s2);
  PairCountSample operator()(RandomStream& rng) const;

 private:
  GeometricLaw law1_;
  GeometricLaw law2_;
};

PairCountSample sample_pair_counts(const SourceParams& s1, const SourceParams& s2, RandomStream& rng);
PairCountSample sample_pair_counts(const SourceParams& s1, const SourceParams& s2, std::uint64_t seed);

/// Unnormalized amplitude of n pairs: tanh(zeta)^n / cosh(zeta).
double pair_amplitude(const SourceParams& params, int n);

/// n1 pairs from source 1 and n2 from source 2, as a normalized Fock
/// state. Source-1 signal photons enter port a in the matched temporal
/// mode; source-2 signal photons enter port b in the superposition given
/// by `source2_profile`. Each signal photon's twin sits in the herald
/// mode of its source.
fock::PureState pair_sector_state(int n1, int n2, const fock::TemporalProfile& source2_profile,
                                  fock::StateOptions options = {});

/// Coherent superposition of all sectors with n1 + n2 <= max_pairs,
/// amplitudes from the product of the two pair-number laws, normalized.
fock::PureState joint_input_state(const SourceParams& s1, const SourceParams& s2, int max_pairs,
                                  const fock::TemporalProfile& source2_profile = {},
                                  fock::StateOptions options = {});

}  // namespace hom::pdc
