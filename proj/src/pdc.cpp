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

#include "hom/pdc.hpp"

#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "hom/errors.hpp"

namespace hom::pdc {

using fock::Amplitude;
using fock::ModeLabel;
using fock::Spatial;
using fock::Temporal;

SourceParams SourceParams::from_zeta(double zeta) {
  if (!(zeta >= 0.0) || !std::isfinite(zeta)) throw ValidationError("zeta must be finite and >= 0");
  return SourceParams(zeta);
}

SourceParams SourceParams::from_pair_probability(double p) {
  if (!(p >= 0.0 && p < 1.0)) throw ValidationError(fmt::format("pair probability {} outside [0, 1)", p));
  return SourceParams(std::atanh(std::sqrt(p)));
}

double SourceParams::lambda() const {
  const double t = std::tanh(zeta_);
  return t * t;
}

double SourceParams::g() const { return std::log(std::cosh(zeta_)); }

double SourceParams::gamma() const { return std::tanh(zeta_); }

void SourceParams::check_small_zeta() const {
  if (zeta_ == 0.0) return;
  const double z2 = zeta_ * zeta_;
  const double rel = std::abs(pair_probability() - z2) / z2;
  if (!(rel < 0.05)) {
    throw ValidationError(fmt::format("zeta = {} is outside the small-zeta regime (|P - zeta^2|/zeta^2 = {:.3g})",
                                      zeta_, rel));
  }
}

double pair_number_distribution(const SourceParams& params, int n) {
  if (n < 0) throw PreconditionError("pair number must be non-negative");
  const double lam = params.lambda();
  return (1.0 - lam) * std::pow(lam, n);
}

double pair_amplitude(const SourceParams& params, int n) {
  if (n < 0) throw PreconditionError("pair number must be non-negative");
  return std::pow(params.gamma(), n) / std::cosh(params.zeta());
}

PairCountSampler::PairCountSampler(const SourceParams& s1, const SourceParams& s2)
    : law1_(s1.lambda()), law2_(s2.lambda()) {}

PairCountSample PairCountSampler::operator()(RandomStream& rng) const {
  PairCountSample out;
  out.n1 = rng.geometric(law1_);
  out.n2 = rng.geometric(law2_);
  return out;
}

PairCountSample sample_pair_counts(const SourceParams& s1, const SourceParams& s2, RandomStream& rng) {
  return PairCountSampler(s1, s2)(rng);
}

PairCountSample sample_pair_counts(const SourceParams& s1, const SourceParams& s2, std::uint64_t seed) {
  RandomStream rng(seed);
  return sample_pair_counts(s1, s2, rng);
}

fock::PureState pair_sector_state(int n1, int n2, const fock::TemporalProfile& source2_profile,
                                  fock::StateOptions options) {
  if (n1 < 0 || n2 < 0) throw PreconditionError("pair numbers must be non-negative");
  if (2 * (n1 + n2) > options.max_photons) {
    throw TruncationError(fmt::format("{} + {} pairs need {} photons, truncation is {}", n1, n2,
                                      2 * (n1 + n2), options.max_photons));
  }
  const double profile_norm = std::norm(source2_profile.matched) + std::norm(source2_profile.orthogonal);
  if (std::abs(profile_norm - 1.0) > 1e-12) throw PreconditionError("temporal profile must be normalized");

  auto state = fock::PureState::vacuum(fock::ModeRegistry::standard(), options);
  if (n1 > 0) {
    state = fock::apply_creation(state, {Spatial::a, Temporal::matched}, n1);
    state = fock::apply_creation(state, {Spatial::herald1, Temporal::matched}, n1);
  }
  if (n2 > 0) {
    const std::pair<ModeLabel, Amplitude> b_photon[2] = {
        {{Spatial::b, Temporal::matched}, source2_profile.matched},
        {{Spatial::b, Temporal::orthogonal}, source2_profile.orthogonal},
    };
    for (int k = 0; k < n2; ++k) state = fock::apply_linear_creation(state, b_photon);
    state = fock::apply_creation(state, {Spatial::herald2, Temporal::matched}, n2);
  }
  return state.normalized();
}

fock::PureState joint_input_state(const SourceParams& s1, const SourceParams& s2, int max_pairs,
                                  const fock::TemporalProfile& source2_profile, fock::StateOptions options) {
  if (max_pairs < 0) throw PreconditionError("max_pairs must be non-negative");
  if (2 * max_pairs > options.max_photons) {
    throw TruncationError(
        fmt::format("{} pairs need {} photons, truncation is {}", max_pairs, 2 * max_pairs, options.max_photons));
  }
  fock::Terms terms;
  for (int n1 = 0; n1 <= max_pairs; ++n1) {
    for (int n2 = 0; n1 + n2 <= max_pairs; ++n2) {
      const double weight = pair_amplitude(s1, n1) * pair_amplitude(s2, n2);
      if (weight == 0.0) continue;
      const auto sector = pair_sector_state(n1, n2, source2_profile, options);
      for (const auto& [occ, amp] : sector.terms()) {
        terms[occ] += weight * amp;
      }
    }
  }
  return fock::PureState(fock::ModeRegistry::standard(), std::move(terms), options).normalized();
}

}  // namespace hom::pdc
