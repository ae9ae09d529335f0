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

#include "hom/runner.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <thread>

#include <fmt/format.h>

#include "hom/errors.hpp"
#include "hom/random.hpp"

namespace hom::runner {

namespace {

using detect::DetectorRole;
using fock::Spatial;

// Output groups in detector-role order: Ge on c, InGaAs-1310 on d, one
// 1550 detector per herald mode.
constexpr std::array<Spatial, detect::kDetectorCount> kDetectorModes = {Spatial::c, Spatial::d, Spatial::herald1,
                                                                        Spatial::herald2};

constexpr int kMaxPhotons = fock::StateOptions{}.max_photons;

double truncated_weight(const ExperimentConfig& cfg) {
  double z = 0.0;
  for (int n1 = 0; n1 <= cfg.truncation_pairs; ++n1) {
    for (int n2 = 0; n1 + n2 <= cfg.truncation_pairs; ++n2) {
      z += pdc::pair_number_distribution(cfg.source1, n1) * pdc::pair_number_distribution(cfg.source2, n2);
    }
  }
  return z;
}

double pattern_response(const std::vector<int>& pattern, const ExperimentConfig& cfg,
                        const detect::DetectorBank& detectors) {
  double p = 1.0;
  for (DetectorRole role : cfg.scheme.participants()) {
    const auto i = static_cast<std::size_t>(role);
    p *= cfg.response == DetectionResponse::threshold ? detect::click_probability(pattern[i], detectors[i])
                                                      : detect::linear_response(pattern[i], detectors[i]);
  }
  return p;
}

double max_abs_delay(const std::vector<double>& delays) {
  double out = 0.0;
  for (double d : delays) out = std::max(out, std::abs(d));
  return out;
}

// Conditional (c, d) photon-count distribution for one (n1, n2) sector,
// stored cumulatively for inversion sampling.
struct SectorTable {
  std::vector<std::array<int, 2>> outputs;
  std::vector<double> cumulative;
};

struct PointResult {
  std::int64_t coincidences = 0;
  std::int64_t truncated = 0;
};

}  // namespace

void ExperimentConfig::validate() const {
  if (delays_um.empty()) throw ValidationError("delay grid is empty");
  for (std::size_t i = 0; i < delays_um.size(); ++i) {
    if (!std::isfinite(delays_um[i])) throw ValidationError("delay grid contains a non-finite value");
    if (i > 0 && !(delays_um[i] > delays_um[i - 1])) throw ValidationError("delay grid must be strictly increasing");
  }
  if (truncation_pairs < 0) throw ValidationError("truncation_pairs must be non-negative");
  if (2 * truncation_pairs > kMaxPhotons) {
    throw TruncationError(fmt::format("truncation of {} pairs exceeds the {}-photon limit", truncation_pairs,
                                      kMaxPhotons));
  }
  signal_filter.validate();
  herald_filter.validate();
  pump.validate();
  for (const auto& det : detectors) det.validate();
  if (!std::isfinite(polarization_angle_rad)) throw ValidationError("polarization angle must be finite");
  if (!(spectral_mismatch >= 0.0 && spectral_mismatch <= 1.0)) {
    throw ValidationError("spectral_mismatch must lie in [0, 1]");
  }
  if (!(splitter_reflectivity >= 0.0 && splitter_reflectivity <= 1.0)) {
    throw ValidationError("splitter reflectivity must lie in [0, 1]");
  }
  if (!(collection_efficiency >= 0.0 && collection_efficiency <= 1.0)) {
    throw ValidationError("collection_efficiency must lie in [0, 1]");
  }
  if (!(pulse_rate_hz > 0.0) || !std::isfinite(pulse_rate_hz)) throw ValidationError("pulse rate must be positive");
  if (pulses_per_point < 1) throw ValidationError("pulses_per_point must be at least 1");
  if (scheme.kind == detect::SchemeKind::fivefold) {
    (void)optics::heralded_bandwidth(signal_filter, herald_filter, pump);
  }
}

std::vector<double> delay_grid(double min_um, double max_um, double step_um) {
  if (!std::isfinite(min_um) || !std::isfinite(max_um) || !std::isfinite(step_um)) {
    throw ValidationError("delay bounds must be finite");
  }
  if (!(step_um > 0.0)) throw ValidationError("delay step must be positive");
  if (max_um < min_um) throw ValidationError("delay grid is empty (max < min)");
  std::vector<double> grid;
  const double tol = 1e-9 * step_um;
  for (std::int64_t k = 0;; ++k) {
    const double d = min_um + static_cast<double>(k) * step_um;
    if (d > max_um + tol) break;
    grid.push_back(std::abs(d) < tol ? 0.0 : d);
  }
  return grid;
}

ExperimentConfig lab_config(detect::SchemeKind scheme) {
  ExperimentConfig cfg;
  cfg.scheme.kind = scheme;
  cfg.delays_um = delay_grid(-300.0, 300.0, 10.0);
  cfg.collection_efficiency = 0.165;
  return cfg;
}

detect::DetectorBank effective_detectors(const ExperimentConfig& cfg) {
  detect::DetectorBank out = cfg.detectors;
  for (auto& det : out) det.efficiency *= cfg.collection_efficiency;
  return out;
}

double dip_coherence_length_um(const ExperimentConfig& cfg) {
  if (cfg.scheme.kind == detect::SchemeKind::fivefold) {
    return optics::coherence_length_um(optics::heralded_bandwidth(cfg.signal_filter, cfg.herald_filter, cfg.pump));
  }
  return optics::coherence_length_um(cfg.signal_filter);
}

double overlap_squared(const ExperimentConfig& cfg, double delay_um) {
  optics::DistinguishabilityContext ctx;
  ctx.delay_um = delay_um;
  ctx.coherence_length_um = dip_coherence_length_um(cfg);
  ctx.polarization_angle_rad = cfg.polarization_angle_rad;
  ctx.spectral_mismatch = cfg.spectral_mismatch;
  return std::norm(optics::overlap_amplitude(ctx));
}

fock::PatternDistribution output_patterns(const ExperimentConfig& cfg, double overlap_sq) {
  if (!(overlap_sq >= 0.0 && overlap_sq <= 1.0)) throw PreconditionError("overlap |m|^2 must lie in [0, 1]");
  const auto profile = optics::decompose_modes(std::sqrt(overlap_sq));
  const auto input = pdc::joint_input_state(cfg.source1, cfg.source2, cfg.truncation_pairs, profile);
  const auto output = fock::apply_beamsplitter(input, {}, cfg.splitter_reflectivity);
  auto dist = fock::mode_probabilities(output, fock::group_by_spatial(output.registry(), kDetectorModes));
  const double z = truncated_weight(cfg);
  for (auto& [pattern, p] : dist) p *= z;
  return dist;
}

double coincidence_probability_per_pulse(const ExperimentConfig& cfg, double overlap_sq) {
  const auto detectors = effective_detectors(cfg);
  double p = 0.0;
  for (const auto& [pattern, prob] : output_patterns(cfg, overlap_sq)) {
    p += prob * pattern_response(pattern, cfg, detectors);
  }
  return p;
}

double accidental_probability_per_pulse(const ExperimentConfig& cfg) {
  if (cfg.response == DetectionResponse::linear_small_eta) return 0.0;
  const auto detectors = effective_detectors(cfg);
  std::array<double, detect::kDetectorCount> singles{};
  const double outer = overlap_squared(cfg, max_abs_delay(cfg.delays_um));
  for (const auto& [pattern, prob] : output_patterns(cfg, outer)) {
    for (std::size_t i = 0; i < detect::kDetectorCount; ++i) {
      singles[i] += prob * (1.0 - std::pow(1.0 - detectors[i].efficiency, pattern[i]));
    }
  }
  return detect::accidental_probability(cfg.scheme, detectors, singles);
}

double analytic_visibility_threefold() { return 1.0 / 3.0; }

double analytic_visibility_fivefold_max(double pair_probability) {
  if (!(pair_probability >= 0.0 && pair_probability <= 0.2)) {
    throw ValidationError(fmt::format("pair probability {} outside the validated range [0, 0.2]", pair_probability));
  }
  return (1.0 + 8.0 * pair_probability) / (1.0 + 12.0 * pair_probability);
}

double pipeline_visibility(const ExperimentConfig& cfg) {
  const double i_max = coincidence_probability_per_pulse(cfg, 0.0);
  const double i_min = coincidence_probability_per_pulse(cfg, overlap_squared(cfg, 0.0));
  if (!(i_max > 0.0)) throw PreconditionError("no coincidences outside the dip");
  return (i_max - i_min) / i_max;
}

DipCurve dip_curve_analytic(const ExperimentConfig& cfg) {
  cfg.validate();
  DipCurve curve;
  curve.scheme = cfg.scheme.kind;
  curve.mode = CurveMode::analytic;
  curve.coherence_length_um = dip_coherence_length_um(cfg);
  curve.accidental_hz = accidental_probability_per_pulse(cfg) * cfg.pulse_rate_hz;
  curve.points.reserve(cfg.delays_um.size());
  for (double delay : cfg.delays_um) {
    const double p = coincidence_probability_per_pulse(cfg, overlap_squared(cfg, delay));
    curve.points.push_back({delay, p * cfg.pulse_rate_hz, 0.0});
  }
  return curve;
}

DipCurve dip_curve_mc(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.response != DetectionResponse::threshold) {
    throw ValidationError("Monte Carlo mode requires the threshold detector response");
  }
  const int max_pairs = cfg.truncation_pairs;
  const auto detectors = effective_detectors(cfg);
  const auto participants = cfg.scheme.participants();

  std::array<std::array<double, kMaxPhotons + 1>, detect::kDetectorCount> click{};
  for (std::size_t i = 0; i < detect::kDetectorCount; ++i) {
    for (int n = 0; n <= kMaxPhotons; ++n) click[i][n] = detect::click_probability(n, detectors[i]);
  }

  // Sampling tables for every point, built up front so workers never throw.
  const std::size_t n_points = cfg.delays_um.size();
  const std::size_t n_sectors = static_cast<std::size_t>((max_pairs + 1) * (max_pairs + 1));
  std::vector<std::vector<SectorTable>> tables(n_points, std::vector<SectorTable>(n_sectors));
  for (std::size_t k = 0; k < n_points; ++k) {
    auto& point_tables = tables[k];
    for (const auto& [pattern, prob] : output_patterns(cfg, overlap_squared(cfg, cfg.delays_um[k]))) {
      auto& t = point_tables[static_cast<std::size_t>(pattern[2] * (max_pairs + 1) + pattern[3])];
      t.outputs.push_back({pattern[0], pattern[1]});
      t.cumulative.push_back((t.cumulative.empty() ? 0.0 : t.cumulative.back()) + prob);
    }
    for (auto& t : point_tables) {
      if (t.cumulative.empty()) continue;
      const double total = t.cumulative.back();
      for (double& c : t.cumulative) c /= total;
    }
  }

  const pdc::PairCountSampler sample_pairs(cfg.source1, cfg.source2);
  auto run_point = [&](std::size_t k) {
    RandomStream rng(cfg.seed, k);
    PointResult res;
    const auto& point_tables = tables[k];
    std::array<int, detect::kDetectorCount> photons{};
    for (std::int64_t pulse = 0; pulse < cfg.pulses_per_point; ++pulse) {
      const auto pairs = sample_pairs(rng);
      if (pairs.n1 + pairs.n2 > max_pairs) {
        ++res.truncated;
        continue;
      }
      const auto& t = point_tables[static_cast<std::size_t>(pairs.n1 * (max_pairs + 1) + pairs.n2)];
      std::size_t pick = 0;
      if (t.outputs.size() > 1) {
        const double u = rng.uniform();
        while (pick + 1 < t.outputs.size() && u >= t.cumulative[pick]) ++pick;
      }
      photons = {t.outputs[pick][0], t.outputs[pick][1], pairs.n1, pairs.n2};
      bool all = true;
      for (DetectorRole role : participants) {
        const auto i = static_cast<std::size_t>(role);
        if (!rng.bernoulli(click[i][photons[i]])) {
          all = false;
          break;
        }
      }
      if (all) ++res.coincidences;
    }
    return res;
  };

  std::vector<PointResult> results(n_points);
  unsigned n_threads = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, n_points));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < n_points; k = next++) results[k] = run_point(k);
      });
    }
  }

  DipCurve curve;
  curve.scheme = cfg.scheme.kind;
  curve.mode = CurveMode::mc;
  curve.coherence_length_um = dip_coherence_length_um(cfg);
  curve.accidental_hz = accidental_probability_per_pulse(cfg) * cfg.pulse_rate_hz;
  const double pulses = static_cast<double>(cfg.pulses_per_point);
  for (std::size_t k = 0; k < n_points; ++k) {
    const double p = static_cast<double>(results[k].coincidences) / pulses;
    curve.points.push_back({cfg.delays_um[k], p * cfg.pulse_rate_hz,
                            cfg.pulse_rate_hz * std::sqrt(p * (1.0 - p) / pulses)});
    curve.truncated_pulses += results[k].truncated;
  }
  return curve;
}

}  // namespace hom::runner
