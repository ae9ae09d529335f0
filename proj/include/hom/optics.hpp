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

#include "hom/fock.hpp"

namespace hom::optics {

/// Speed of light in micrometres per femtosecond.
inline constexpr double kSpeedOfLightUmPerFs = 0.299792458;

/// Gaussian band-pass filter. fwhm_nm may be +infinity (no filter).
struct FilterSpec {
  double center_nm = 1310.0;
  double fwhm_nm = 10.0;

  void validate() const;
};

/// FWHM coherence length of light through a Gaussian filter,
/// (2 ln2 / pi) lambda^2 / dlambda, in micrometres.
double coherence_length_um(const FilterSpec& filter);
double coherence_time_fs(const FilterSpec& filter);

/// Effective filter seen by a signal photon whose twin passed
/// `herald_filter`. The herald width is mapped to the signal wavelength at
/// equal frequency width and combined with the signal filter as a product
/// of Gaussians. The pump only enters the energy-conservation check.
FilterSpec heralded_bandwidth(const FilterSpec& signal_filter, const FilterSpec& herald_filter,
                              const FilterSpec& pump);

struct DistinguishabilityContext {
  double delay_um = 0.0;
  double coherence_length_um = 75.0;
  double polarization_angle_rad = 0.0;
  double spectral_mismatch = 0.0;

  void validate() const;
};

/// Standard deviation of |m(delay)|^2 as a Gaussian in delay.
double overlap_sigma_um(double coherence_length_um);
/// FWHM of the dip, sqrt(2) l_c.
double dip_fwhm_um(double coherence_length_um);

/// Temporal-mode overlap of the two photons. Real and non-negative here;
/// |m|^2 = cos^2(pol) (1 - mismatch) exp(-delay^2 / (2 sigma^2)).
std::complex<double> overlap_amplitude(const DistinguishabilityContext& ctx);

/// Source-2 photon profile m |matched> + sqrt(1 - |m|^2) |orthogonal>.
fock::TemporalProfile decompose_modes(std::complex<double> m);

}  // namespace hom::optics
