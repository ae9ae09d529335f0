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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hom::fock {

enum class Spatial : std::uint8_t { a, b, c, d, herald1, herald2 };
enum class Temporal : std::uint8_t { matched, orthogonal };
enum class Polarization : std::uint8_t { H, V };

struct ModeLabel {
  Spatial spatial;
  Temporal temporal = Temporal::matched;
  Polarization polarization = Polarization::H;

  auto operator<=>(const ModeLabel&) const = default;
};

std::string to_string(Spatial s);
std::string to_string(const ModeLabel& label);

/// Ordered, duplicate-free list of the modes a computation works in.
/// Occupation vectors index into this order.
class ModeRegistry {
 public:
  explicit ModeRegistry(std::vector<ModeLabel> modes);

  /// a, b, c, d in both temporal sublabels, plus one herald mode per
  /// source. All horizontally polarized.
  static ModeRegistry standard();

  std::size_t size() const { return modes_.size(); }
  const ModeLabel& operator[](std::size_t i) const { return modes_[i]; }
  std::span<const ModeLabel> modes() const { return modes_; }

  std::optional<std::size_t> find(const ModeLabel& label) const;
  /// Throws PreconditionError when the label is not registered.
  std::size_t index(const ModeLabel& label) const;

  bool operator==(const ModeRegistry&) const = default;

 private:
  std::vector<ModeLabel> modes_;
};

using Occupation = std::vector<int>;
using Amplitude = std::complex<double>;
using Terms = std::map<Occupation, Amplitude>;

struct StateOptions {
  int max_photons = 6;
  double prune_threshold = 1e-15;

  bool operator==(const StateOptions&) const = default;
};

/// Superposition of occupation-number basis vectors. Terms are kept in
/// lexicographic order of their occupation vectors.
class PureState {
 public:
  /// Builds a state from raw terms. Throws TruncationError if any term
  /// holds more than options.max_photons photons; terms below the prune
  /// threshold are dropped.
  PureState(ModeRegistry registry, Terms terms, StateOptions options = {});

  static PureState vacuum(ModeRegistry registry, StateOptions options = {});

  const ModeRegistry& registry() const { return registry_; }
  const Terms& terms() const { return terms_; }
  const StateOptions& options() const { return options_; }

  Amplitude amplitude(const Occupation& occupation) const;
  double norm() const;
  PureState normalized() const;
  PureState scaled(Amplitude factor) const;

  /// One line per term: `amp_re amp_im | n1 n2 ... nk`.
  std::string to_text() const;
  static PureState from_text(ModeRegistry registry, std::string_view text,
                             StateOptions options = {});

 private:
  ModeRegistry registry_;
  Terms terms_;
  StateOptions options_;
};

/// Expansion coefficients of a photon's temporal mode onto the registry's
/// matched/orthogonal sublabels.
struct TemporalProfile {
  Amplitude matched{1.0, 0.0};
  Amplitude orthogonal{0.0, 0.0};
};

/// Applies (a_mode^dagger)^power. The result is not renormalized.
PureState apply_creation(const PureState& state, const ModeLabel& mode, int power = 1);

/// Applies the single creation operator sum_k coeff_k a_k^dagger.
PureState apply_linear_creation(const PureState& state,
                                std::span<const std::pair<ModeLabel, Amplitude>> combination);

struct SplitterPorts {
  Spatial in1 = Spatial::a;
  Spatial in2 = Spatial::b;
  Spatial out1 = Spatial::c;
  Spatial out2 = Spatial::d;
};

/// Lossless two-port splitter acting block-diagonally on every
/// temporal/polarization sublabel:
///   in1^dagger -> t out1^dagger + i r out2^dagger
///   in2^dagger -> i r out1^dagger + t out2^dagger
/// with r = sqrt(reflectivity), t = sqrt(1 - reflectivity).
PureState apply_beamsplitter(const PureState& state, SplitterPorts ports = {},
                             double reflectivity = 0.5);

/// Moves every photon from spatial mode `from` to `to`, keeping sublabels.
PureState relabel_spatial(const PureState& state, Spatial from, Spatial to);

using Grouping = std::vector<std::vector<std::size_t>>;
using PatternDistribution = std::map<std::vector<int>, double>;

/// Groups registry modes by spatial label, one group per entry of
/// `spatial`, in that order.
Grouping group_by_spatial(const ModeRegistry& registry, std::span<const Spatial> spatial);

/// Distribution of total photon counts per group. Modes outside every
/// group are traced out. Assumes a normalized state.
PatternDistribution mode_probabilities(const PureState& state, const Grouping& grouping);

}  // namespace hom::fock
