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

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace hom::detect {

enum class DetectorRole : std::size_t { ge_1310 = 0, ingaas_1310 = 1, ingaas_1550_1 = 2, ingaas_1550_2 = 3 };

inline constexpr std::size_t kDetectorCount = 4;

std::string to_string(DetectorRole role);

struct DetectorModel {
  double efficiency = 0.1;
  double dark_prob = 0.0;  // per gate

  void validate() const;
};

/// Indexed by DetectorRole.
using DetectorBank = std::array<DetectorModel, kDetectorCount>;

/// Ge 10 %, InGaAs 30 %; dark probabilities per 1 ns gate.
DetectorBank lab_detectors();

enum class SchemeKind { threefold, fivefold };

std::string to_string(SchemeKind kind);
SchemeKind scheme_from_string(const std::string& name);

struct CoincidenceScheme {
  SchemeKind kind = SchemeKind::threefold;
  double window_ns = 1.0;

  /// Detectors that must click together with the clock.
  std::vector<DetectorRole> participants() const;
};

using PhotonPattern = std::map<DetectorRole, int>;

/// Threshold detector: 1 - (1 - eta)^n (1 - dark).
double click_probability(int photons, const DetectorModel& det);

/// Leading-order response n * eta, the formal eta -> 0 limit.
double linear_response(int photons, const DetectorModel& det);

/// Product of the participating detectors' click probabilities. Throws
/// PreconditionError when the pattern lacks a participating detector.
double coincidence_probability(const PhotonPattern& pattern, const CoincidenceScheme& scheme,
                               const DetectorBank& detectors);

/// Background estimate: probability that every participant clicks given
/// independent singles, minus the part where no dark count is involved.
/// `singles` holds each detector's photon-only click probability per gate.
double accidental_probability(const CoincidenceScheme& scheme, const DetectorBank& detectors,
                              const std::array<double, kDetectorCount>& singles);

/// raw - accidental, floored at zero.
double subtract_accidentals(double raw, double accidental);

}  // namespace hom::detect
