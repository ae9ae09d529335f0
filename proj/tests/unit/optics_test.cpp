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
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "hom/errors.hpp"
#include "hom/fock.hpp"
#include "hom/pdc.hpp"

namespace hom::optics {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const FilterSpec kPump{710.0, 4.5};

double overlap_sq(double delay, double lc, double pol = 0.0, double mismatch = 0.0) {
  return std::norm(overlap_amplitude({delay, lc, pol, mismatch}));
}

// 1 / dl^2 = 1 / a^2 + 1 / b^2, written out independently of the library.
double inverse_quadrature(double a, double b) { return a * b / std::sqrt(a * a + b * b); }

TEST(CoherenceLength, TenNanometresAt1310) {
  const FilterSpec f{1310.0, 10.0};
  EXPECT_NEAR(coherence_length_um(f) / 75.0, 1.0, 0.02);
  EXPECT_NEAR(coherence_time_fs(f) / 250.0, 1.0, 0.02);
  EXPECT_NEAR(coherence_time_fs(f) * kSpeedOfLightUmPerFs, coherence_length_um(f), 1e-12);
}

TEST(CoherenceLength, ScalesAsWavelengthSquared) {
  EXPECT_NEAR(coherence_length_um({2620.0, 10.0}) / coherence_length_um({1310.0, 10.0}), 4.0, 1e-12);
  EXPECT_NEAR(coherence_length_um({1310.0, 5.0}) / coherence_length_um({1310.0, 10.0}), 2.0, 1e-12);
}

TEST(CoherenceLength, At1550) {
  EXPECT_NEAR(coherence_length_um({1550.0, 10.0}), 0.441 * 1550.0 * 1550.0 / 10.0 / 1000.0, 0.1);
  EXPECT_NEAR(coherence_length_um({1550.0, 10.0}), 106.0, 0.5);
}

TEST(CoherenceLength, RejectsInvalidFilter) {
  EXPECT_THROW(coherence_length_um({1310.0, 0.0}), ValidationError);
  EXPECT_THROW(coherence_length_um({-1310.0, 10.0}), ValidationError);
  EXPECT_THROW(coherence_length_um({1310.0, 2000.0}), ValidationError);
}

TEST(HeraldedBandwidth, HeraldAloneMapsToSignalWavelength) {
  const auto eff = heralded_bandwidth({1310.0, kInf}, {1550.0, 10.0}, kPump);
  EXPECT_NEAR(eff.fwhm_nm, 7.14, 0.01);
  EXPECT_NEAR(eff.fwhm_nm, 10.0 * (1310.0 / 1550.0) * (1310.0 / 1550.0), 1e-12);
  EXPECT_EQ(eff.center_nm, 1310.0);
}

TEST(HeraldedBandwidth, InfiniteHeraldLeavesSignalUnchanged) {
  const auto eff = heralded_bandwidth({1310.0, 10.0}, {1550.0, kInf}, kPump);
  EXPECT_EQ(eff.fwhm_nm, 10.0);
  EXPECT_EQ(eff.center_nm, 1310.0);
}

TEST(HeraldedBandwidth, CombinesInInverseQuadrature) {
  const auto eff = heralded_bandwidth({1310.0, 10.0}, {1550.0, 10.0}, kPump);
  const double mapped = 10.0 * std::pow(1310.0 / 1550.0, 2);
  EXPECT_NEAR(eff.fwhm_nm, inverse_quadrature(10.0, mapped), 1e-12);
  EXPECT_NEAR(eff.fwhm_nm, 5.8, 0.05);
}

TEST(HeraldedBandwidth, NeverWidens) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> width(0.5, 40.0);
  for (int i = 0; i < 500; ++i) {
    const double s = width(gen);
    const double h = width(gen);
    const auto eff = heralded_bandwidth({1310.0, s}, {1550.0, h}, kPump);
    EXPECT_LE(eff.fwhm_nm, std::min(s, h * std::pow(1310.0 / 1550.0, 2)) * (1.0 + 1e-15));
  }
}

TEST(HeraldedBandwidth, RejectsEnergyViolation) {
  EXPECT_THROW(heralded_bandwidth({1310.0, 10.0}, {1550.0, 10.0}, {800.0, 4.5}), ValidationError);
  EXPECT_THROW(heralded_bandwidth({1310.0, 10.0}, {1600.0, 10.0}, kPump), ValidationError);
}

TEST(Overlap, PerfectAlignment) { EXPECT_DOUBLE_EQ(overlap_sq(0.0, 75.0), 1.0); }

TEST(Overlap, HalfAtHalfDipWidth) {
  for (double lc : {10.0, 75.0, 106.0, 300.0}) {
    const double half = std::numbers::sqrt2 * lc / 2.0;
    EXPECT_NEAR(overlap_sq(half, lc), 0.5, 1e-12);
    EXPECT_NEAR(overlap_sq(-half, lc), 0.5, 1e-12);
    EXPECT_NEAR(dip_fwhm_um(lc), std::numbers::sqrt2 * lc, 1e-12);
  }
  EXPECT_NEAR(dip_fwhm_um(coherence_length_um({1310.0, 10.0})), 107.0, 0.02 * 107.0);
}

TEST(Overlap, DipShapeIsGaussianWithFwhmSqrtTwoLc) {
  for (double lc : {20.0, 75.0, 130.0}) {
    const double fwhm = std::numbers::sqrt2 * lc;
    const auto coinc = [&](double d) { return (1.0 - overlap_sq(d, lc)) / 2.0; };
    EXPECT_NEAR(coinc(0.0), 0.0, 1e-15);
    EXPECT_NEAR(coinc(fwhm / 2.0), 0.25, 1e-9);
    const double sigma = overlap_sigma_um(lc);
    EXPECT_NEAR(2.0 * std::sqrt(2.0 * std::log(2.0)) * sigma, fwhm, 1e-9);
    for (double d : {-2.0 * lc, -0.3 * lc, 0.7 * lc, 1.9 * lc}) {
      EXPECT_NEAR(std::log(overlap_sq(d, lc)), -d * d / (2.0 * sigma * sigma), 1e-9);
    }
  }
}

TEST(Overlap, OrthogonalPolarizations) {
  for (double d : {0.0, 30.0, 500.0}) EXPECT_LT(overlap_sq(d, 75.0, std::numbers::pi / 2.0), 1e-30);
}

TEST(Overlap, Monotone) {
  double prev = 2.0;
  for (double d = 0.0; d < 300.0; d += 5.0) {
    const double q = overlap_sq(d, 75.0);
    EXPECT_LT(q, prev);
    prev = q;
  }
  prev = 2.0;
  for (double a = 0.0; a <= std::numbers::pi / 2.0; a += 0.05) {
    const double q = overlap_sq(10.0, 75.0, a);
    EXPECT_LT(q, prev);
    prev = q;
  }
  prev = 2.0;
  for (double s = 0.0; s <= 1.0; s += 0.05) {
    const double q = overlap_sq(10.0, 75.0, 0.0, s);
    EXPECT_LT(q, prev);
    prev = q;
  }
}

TEST(Overlap, FactorsMultiply) {
  const double q = overlap_sq(40.0, 75.0, 0.3, 0.1);
  EXPECT_NEAR(q, std::pow(std::cos(0.3), 2) * 0.9 * overlap_sq(40.0, 75.0), 1e-15);
}

TEST(Overlap, RejectsInvalidContext) {
  EXPECT_THROW(overlap_amplitude({0.0, 75.0, 0.0, 1.5}), ValidationError);
  EXPECT_THROW(overlap_amplitude({0.0, 0.0, 0.0, 0.0}), ValidationError);
  EXPECT_THROW(overlap_amplitude({kInf, 75.0, 0.0, 0.0}), ValidationError);
}

TEST(DecomposeModes, Limits) {
  const auto same = decompose_modes(1.0);
  EXPECT_EQ(same.matched, std::complex<double>(1.0));
  EXPECT_EQ(same.orthogonal, std::complex<double>(0.0));
  const auto diff = decompose_modes(0.0);
  EXPECT_EQ(diff.matched, std::complex<double>(0.0));
  EXPECT_EQ(diff.orthogonal, std::complex<double>(1.0));
  EXPECT_THROW(decompose_modes(1.1), PreconditionError);
}

TEST(DecomposeModes, CoincidenceIsHalfTheDistinguishablePart) {
  using fock::Spatial;
  const std::vector<Spatial> outputs = {Spatial::c, Spatial::d};
  for (double m : {0.0, 0.2, 0.5, std::sqrt(0.5), 0.9, 1.0}) {
    const auto psi = pdc::pair_sector_state(1, 1, decompose_modes(m));
    const auto out = fock::apply_beamsplitter(psi);
    double coinc = 0.0;
    for (const auto& [pattern, p] : fock::mode_probabilities(out, fock::group_by_spatial(out.registry(), outputs))) {
      if (pattern[0] > 0 && pattern[1] > 0) coinc += p;
    }
    EXPECT_NEAR(coinc, (1.0 - m * m) / 2.0, 1e-12) << m;
  }
}

}  // namespace
}  // namespace hom::optics
