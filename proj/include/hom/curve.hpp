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
#include <string>
#include <vector>

#include "hom/detect.hpp"

namespace hom {

enum class CurveMode { analytic, mc };

inline std::string to_string(CurveMode mode) { return mode == CurveMode::analytic ? "analytic" : "mc"; }

struct DipPoint {
  double delay_um = 0.0;
  double rate_hz = 0.0;
  double err_hz = 0.0;
};

/// Coincidence rate versus optical delay.
struct DipCurve {
  std::vector<DipPoint> points;
  detect::SchemeKind scheme = detect::SchemeKind::threefold;
  CurveMode mode = CurveMode::analytic;
  std::string config_digest;
  /// Delay-independent background already contained in every rate.
  double accidental_hz = 0.0;
  double coherence_length_um = 0.0;
  /// MC pulses that drew more pairs than the truncation allows.
  std::int64_t truncated_pulses = 0;
};

}  // namespace hom
