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
#include <vector>

#include "hom/curve.hpp"
#include "hom/detect.hpp"
#include "hom/optics.hpp"
#include "hom/pdc.hpp"

namespace hom::runner {

enum class DetectionResponse {
  threshold,         // exact click probabilities
  linear_small_eta,  // n * eta, dark counts ignored
};

struct ExperimentConfig {
  pdc::SourceParams source1 = pdc::SourceParams::from_pair_probability(0.04);
  pdc::SourceParams source2 = pdc::SourceParams::from_pair_probability(0.04);

  optics::FilterSpec signal_filter{1310.0, 10.0};
  optics::FilterSpec herald_filter{1550.0, 10.0};
  optics::FilterSpec pump{710.0, 4.5};

  detect::DetectorBank detectors = detect::lab_detectors();
  detect::CoincidenceScheme scheme{};
  DetectionResponse response = DetectionResponse::threshold;

  std::vector<double> delays_um;
  int truncation_pairs = 3;

  double polarization_angle_rad = 0.0;
  double spectral_mismatch = 0.0;
  double splitter_reflectivity = 0.5;

  /// Per-photon transmission folded into every detector efficiency.
  double collection_efficiency = 1.0;
  double pulse_rate_hz = 7.6e7;

  std::int64_t pulses_per_point = 1'000'000;
  std::uint64_t seed = 20030101;
  /// MC worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;

  void validate() const;
};

/// Delays min, min + step, ... up to max inclusive.
std::vector<double> delay_grid(double min_um, double max_um, double step_um);

/// Lab defaults: P = 4 % per source, 10 nm filters, lab detectors and a
/// collection efficiency calibrated to ~160 net threefold counts/s.
ExperimentConfig lab_config(detect::SchemeKind scheme);

/// Detectors with collection efficiency folded in.
detect::DetectorBank effective_detectors(const ExperimentConfig& cfg);

/// Coherence length governing the dip: the signal filter alone for
/// threefold, the herald-narrowed band for fivefold.
double dip_coherence_length_um(const ExperimentConfig& cfg);

/// Overlap |m|^2 at the given delay, including polarization and mismatch.
double overlap_squared(const ExperimentConfig& cfg, double delay_um);

/// Joint output photon-count distribution over (c, d, herald1, herald2),
/// weighted by the absolute probability of the truncated pair sectors.
fock::PatternDistribution output_patterns(const ExperimentConfig& cfg, double overlap_sq);

/// Coincidence probability per pulse for a given overlap |m|^2.
double coincidence_probability_per_pulse(const ExperimentConfig& cfg, double overlap_sq);

/// Accidental-coincidence probability per pulse, from singles evaluated
/// at the outermost scan delay. Zero in the small-eta response.
double accidental_probability_per_pulse(const ExperimentConfig& cfg);

/// 1/3: one pair per source interferes, double pairs in one source do not.
double analytic_visibility_threefold();

/// (1 + 8P) / (1 + 12P); P must lie in [0, 0.2].
double analytic_visibility_fivefold_max(double pair_probability);

/// (I_max - I_min) / I_max from the full pipeline: I_min at zero delay,
/// I_max with fully distinguishable photons.
double pipeline_visibility(const ExperimentConfig& cfg);

DipCurve dip_curve_analytic(const ExperimentConfig& cfg);

/// Seeded Monte Carlo. Point k draws from stream (seed, k), so results do
/// not depend on thread count or scheduling.
DipCurve dip_curve_mc(const ExperimentConfig& cfg);

}  // namespace hom::runner
