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

#include "hom/detect.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "hom/errors.hpp"

namespace hom::detect {

std::string to_string(DetectorRole role) {
  switch (role) {
    case DetectorRole::ge_1310: return "Ge-1310";
    case DetectorRole::ingaas_1310: return "InGaAs-1310";
    case DetectorRole::ingaas_1550_1: return "InGaAs-1550-1";
    case DetectorRole::ingaas_1550_2: return "InGaAs-1550-2";
  }
  return "?";
}

void DetectorModel::validate() const {
  if (!(efficiency >= 0.0 && efficiency <= 1.0)) throw ValidationError("detector efficiency must lie in [0, 1]");
  if (!(dark_prob >= 0.0 && dark_prob < 1.0)) throw ValidationError("dark-count probability must lie in [0, 1)");
}

DetectorBank lab_detectors() {
  // Ge: ~3 kHz gated darks at the default 76 MHz clock.
  return {DetectorModel{0.10, 3.0e3 / 7.6e7}, DetectorModel{0.30, 1.0e-4}, DetectorModel{0.30, 1.0e-4},
          DetectorModel{0.30, 1.0e-4}};
}

std::string to_string(SchemeKind kind) { return kind == SchemeKind::threefold ? "threefold" : "fivefold"; }

SchemeKind scheme_from_string(const std::string& name) {
  if (name == "threefold") return SchemeKind::threefold;
  if (name == "fivefold") return SchemeKind::fivefold;
  throw ValidationError("unknown coincidence scheme '" + name + "'");
}

std::vector<DetectorRole> CoincidenceScheme::participants() const {
  if (kind == SchemeKind::threefold) return {DetectorRole::ge_1310, DetectorRole::ingaas_1310};
  return {DetectorRole::ge_1310, DetectorRole::ingaas_1310, DetectorRole::ingaas_1550_1,
          DetectorRole::ingaas_1550_2};
}

double click_probability(int photons, const DetectorModel& det) {
  if (photons < 0) throw PreconditionError("photon number must be non-negative");
  // -expm1 keeps full relative precision when eta and dark are small.
  double log_silent = std::log1p(-det.dark_prob);
  if (photons > 0) log_silent += photons * std::log1p(-det.efficiency);
  return -std::expm1(log_silent);
}

double linear_response(int photons, const DetectorModel& det) {
  if (photons < 0) throw PreconditionError("photon number must be non-negative");
  return photons * det.efficiency;
}

double coincidence_probability(const PhotonPattern& pattern, const CoincidenceScheme& scheme,
                               const DetectorBank& detectors) {
  double p = 1.0;
  for (DetectorRole role : scheme.participants()) {
    auto it = pattern.find(role);
    if (it == pattern.end()) {
      throw PreconditionError(fmt::format("photon pattern has no entry for detector {}", to_string(role)));
    }
    p *= click_probability(it->second, detectors[static_cast<std::size_t>(role)]);
  }
  return p;
}

double accidental_probability(const CoincidenceScheme& scheme, const DetectorBank& detectors,
                              const std::array<double, kDetectorCount>& singles) {
  double with_darks = 1.0;
  double photons_only = 1.0;
  for (DetectorRole role : scheme.participants()) {
    const auto i = static_cast<std::size_t>(role);
    const double s = singles[i];
    if (!(s >= 0.0 && s <= 1.0)) throw PreconditionError("singles must be probabilities in [0, 1]");
    const double dark = detectors[i].dark_prob;
    if (dark < 0.0) throw PreconditionError("dark-count probability must be non-negative");
    with_darks *= s + dark * (1.0 - s);
    photons_only *= s;
  }
  return with_darks - photons_only;
}

double subtract_accidentals(double raw, double accidental) {
  if (raw < 0.0 || accidental < 0.0) throw PreconditionError("rates must be non-negative");
  return std::max(0.0, raw - accidental);
}

}  // namespace hom::detect
