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

#include "hom/optics.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "hom/errors.hpp"

namespace hom::optics {

void FilterSpec::validate() const {
  if (!(center_nm > 0.0) || !std::isfinite(center_nm)) throw ValidationError("filter center must be positive");
  if (!(fwhm_nm > 0.0)) throw ValidationError("filter FWHM must be positive");
  if (std::isfinite(fwhm_nm) && !(fwhm_nm < 0.5 * center_nm)) {
    throw ValidationError(fmt::format("filter FWHM {} nm is not narrow against center {} nm", fwhm_nm, center_nm));
  }
}

double coherence_length_um(const FilterSpec& filter) {
  filter.validate();
  const double nm = 2.0 * std::numbers::ln2 / std::numbers::pi * filter.center_nm * filter.center_nm / filter.fwhm_nm;
  return nm * 1e-3;
}

double coherence_time_fs(const FilterSpec& filter) { return coherence_length_um(filter) / kSpeedOfLightUmPerFs; }

FilterSpec heralded_bandwidth(const FilterSpec& signal_filter, const FilterSpec& herald_filter,
                              const FilterSpec& pump) {
  signal_filter.validate();
  herald_filter.validate();
  pump.validate();
  const double pump_inv = 1.0 / pump.center_nm;
  const double twins_inv = 1.0 / signal_filter.center_nm + 1.0 / herald_filter.center_nm;
  if (std::abs(twins_inv - pump_inv) > 0.01 * pump_inv) {
    throw ValidationError(fmt::format("wavelengths {} / {} / {} nm violate energy conservation",
                                      pump.center_nm, signal_filter.center_nm, herald_filter.center_nm));
  }
  const double ratio = signal_filter.center_nm / herald_filter.center_nm;
  const double mapped = herald_filter.fwhm_nm * ratio * ratio;
  const double inv_sq = 1.0 / (signal_filter.fwhm_nm * signal_filter.fwhm_nm) + 1.0 / (mapped * mapped);
  return FilterSpec{signal_filter.center_nm, 1.0 / std::sqrt(inv_sq)};
}

void DistinguishabilityContext::validate() const {
  if (!std::isfinite(delay_um)) throw ValidationError("delay must be finite");
  if (!(coherence_length_um > 0.0)) throw ValidationError("coherence length must be positive");
  if (!std::isfinite(polarization_angle_rad)) throw ValidationError("polarization angle must be finite");
  if (!(spectral_mismatch >= 0.0 && spectral_mismatch <= 1.0)) {
    throw ValidationError("spectral mismatch must lie in [0, 1]");
  }
}

double overlap_sigma_um(double coherence_length_um) {
  return coherence_length_um / (2.0 * std::sqrt(std::numbers::ln2));
}

double dip_fwhm_um(double coherence_length_um) { return std::numbers::sqrt2 * coherence_length_um; }

std::complex<double> overlap_amplitude(const DistinguishabilityContext& ctx) {
  ctx.validate();
  const double sigma = overlap_sigma_um(ctx.coherence_length_um);
  const double c = std::cos(ctx.polarization_angle_rad);
  const double m_sq = c * c * (1.0 - ctx.spectral_mismatch) *
                      std::exp(-ctx.delay_um * ctx.delay_um / (2.0 * sigma * sigma));
  return {std::sqrt(m_sq), 0.0};
}

fock::TemporalProfile decompose_modes(std::complex<double> m) {
  const double m_sq = std::norm(m);
  if (m_sq > 1.0 + 1e-12) throw PreconditionError("overlap magnitude exceeds 1");
  return {m, {std::sqrt(std::max(0.0, 1.0 - m_sq)), 0.0}};
}

}  // namespace hom::optics
