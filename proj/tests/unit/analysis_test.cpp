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

#include "hom/analysis.hpp"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "hom/errors.hpp"
#include "hom/runner.hpp"

namespace hom::analysis {
namespace {

const double kFwhmPerSigma = 2.0 * std::sqrt(2.0 * std::log(2.0));

std::vector<DipPoint> synthetic(const DipParams& p, double half_span, double step, bool with_errors = false,
                                double floor = 0.0) {
  std::vector<DipPoint> pts;
  for (double d = -half_span; d <= half_span + 1e-9; d += step) {
    const double r = dip_model(d, p) + floor;
    pts.push_back({d, r, with_errors ? std::sqrt(r) : 0.0});
  }
  return pts;
}

void expect_relative(double actual, double expected, double tol) {
  EXPECT_LE(std::abs(actual - expected), tol * std::abs(expected)) << actual << " vs " << expected;
}

TEST(DipModel, ShapeAndFwhmIdentity) {
  const DipParams p{100.0, 0.5, 40.0};
  EXPECT_DOUBLE_EQ(dip_model(0.0, p), 50.0);
  EXPECT_NEAR(dip_model(1e6, p), 100.0, 1e-12);
  for (double s : {1.0, 45.5, 60.3}) EXPECT_DOUBLE_EQ(fwhm_from_sigma(s), kFwhmPerSigma * s);
  EXPECT_NEAR(dip_model(fwhm_from_sigma(40.0) / 2.0, p), 75.0, 1e-12);
}

TEST(DipModel, GradientMatchesCentralDifferences) {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> S(1.0, 1e4), V(0.01, 1.0), sig(5.0, 300.0), t(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const DipParams p{S(gen), V(gen), sig(gen)};
    const double tau = t(gen) * p.sigma_tau_um;
    const auto g = dip_model_gradient(tau, p);
    const double h[3] = {1e-5 * p.S, 1e-5 * p.V, 1e-5 * p.sigma_tau_um};
    for (int k = 0; k < 3; ++k) {
      DipParams up = p, dn = p;
      double* u[3] = {&up.S, &up.V, &up.sigma_tau_um};
      double* w[3] = {&dn.S, &dn.V, &dn.sigma_tau_um};
      *u[k] += h[k];
      *w[k] -= h[k];
      const double fd = (dip_model(tau, up) - dip_model(tau, dn)) / (2.0 * h[k]);
      EXPECT_LE(std::abs(g[k] - fd), 1e-6 * std::abs(fd)) << "param " << k << " at point " << i;
    }
  }
}

TEST(FitDip, RecoversNoiselessCurve) {
  const DipParams truth{160.0, 0.28, 142.0 / kFwhmPerSigma};
  for (bool weighted : {false, true}) {
    const auto fit = fit_dip(synthetic(truth, 400.0, 10.0, weighted));
    EXPECT_TRUE(fit.converged);
    expect_relative(fit.S, 160.0, 1e-6);
    expect_relative(fit.V, 0.28, 1e-6);
    expect_relative(fit.fwhm_um, 142.0, 1e-6);
    EXPECT_DOUBLE_EQ(fit.fwhm_um, fwhm_from_sigma(fit.sigma_tau_um));
    EXPECT_LE(fit.iterations, 200);
  }
}

TEST(FitDip, RecoversRandomNoiselessCurves) {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> S(1.0, 1e4), V(0.05, 1.0), sig(20.0, 150.0);
  for (int i = 0; i < 200; ++i) {
    const DipParams truth{S(gen), V(gen), sig(gen)};
    const auto fit = fit_dip(synthetic(truth, 600.0, 10.0, i % 2 == 1));
    expect_relative(fit.S, truth.S, 1e-6);
    expect_relative(fit.V, truth.V, 1e-6);
    expect_relative(fit.sigma_tau_um, truth.sigma_tau_um, 1e-6);
  }
}

TEST(FitDip, ExplicitGuessConverges) {
  const DipParams truth{50.0, 0.6, 45.0};
  const auto fit = fit_dip(synthetic(truth, 300.0, 10.0), DipParams{40.0, 0.3, 80.0});
  expect_relative(fit.V, 0.6, 1e-6);
  expect_relative(fit.sigma_tau_um, 45.0, 1e-6);
}

TEST(FitDip, FlatCurvePinsVisibility) {
  std::vector<DipPoint> pts;
  for (int i = 0; i < 21; ++i) pts.push_back({-100.0 + 10.0 * i, 42.0, 0.0});
  const auto fit = fit_dip(pts);
  EXPECT_EQ(fit.V, 0.0);
  EXPECT_DOUBLE_EQ(fit.S, 42.0);
  EXPECT_FALSE(fit.warning.empty());
}

TEST(FitDip, Preconditions) {
  const DipParams truth{100.0, 0.5, 40.0};
  const std::vector<DipPoint> three = {{-10, 90, 0}, {0, 50, 0}, {10, 90, 0}};
  EXPECT_THROW(fit_dip(three), PreconditionError);
  // All points inside the half-depth region: no crossing.
  EXPECT_THROW(fit_dip(synthetic(truth, 20.0, 5.0)), PreconditionError);
  auto bad = synthetic(truth, 200.0, 10.0);
  bad[3].rate_hz = std::nan("");
  EXPECT_THROW(fit_dip(bad), PreconditionError);
}

TEST(FitDip, NoisyCurveReportsUncertainty) {
  const DipParams truth{160.0, 0.3, 50.0};
  auto pts = synthetic(truth, 300.0, 10.0, true);
  std::mt19937_64 gen(5);
  std::normal_distribution<double> noise;
  for (auto& p : pts) p.rate_hz += p.err_hz * noise(gen);
  const auto fit = fit_dip(pts);
  EXPECT_GT(fit.stderr_S(), 0.0);
  EXPECT_GT(fit.stderr_V(), 0.0);
  EXPECT_GT(fit.stderr_sigma(), 0.0);
  EXPECT_LT(std::abs(fit.V - truth.V), 4.0 * fit.stderr_V());
  EXPECT_LT(std::abs(fit.sigma_tau_um - truth.sigma_tau_um), 4.0 * fit.stderr_sigma());
}

TEST(Visibility, Cases) {
  const double p2 = 0.04 * 0.04;
  EXPECT_NEAR(visibility(1.5 * p2, p2), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(visibility(7.0, 7.0), 0.0);
  EXPECT_EQ(visibility(7.0, 0.0), 1.0);
  EXPECT_THROW(visibility(0.0, 0.0), PreconditionError);
  EXPECT_THROW(visibility(1.0, 2.0), PreconditionError);
}

TEST(NetFromRaw, IdentityWithoutAccidentals) {
  const auto raw = fit_dip(synthetic({160.0, 0.28, 60.0}, 300.0, 10.0));
  const auto net = net_from_raw(raw, 0.0);
  EXPECT_EQ(net.S, raw.S);
  EXPECT_EQ(net.V, raw.V);
  EXPECT_EQ(net.sigma_tau_um, raw.sigma_tau_um);
}

TEST(NetFromRaw, ConstantFloorFormula) {
  DipFit raw;
  raw.S = 0.075;
  raw.V = 0.77;
  raw.sigma_tau_um = 90.0;
  raw.fwhm_um = fwhm_from_sigma(90.0);
  const auto net = net_from_raw(raw, 0.015);
  EXPECT_NEAR(net.S, 0.060, 1e-15);
  EXPECT_NEAR(net.V, 0.9625, 1e-12);
  EXPECT_EQ(net.sigma_tau_um, 90.0);
  EXPECT_THROW(net_from_raw(raw, 0.075), PreconditionError);
  EXPECT_THROW(net_from_raw(raw, -1.0), PreconditionError);
}

TEST(NetFromRaw, CapsAtUnitVisibility) {
  DipFit raw;
  raw.S = 1.0;
  raw.V = 0.9;
  raw.sigma_tau_um = 10.0;
  const auto net = net_from_raw(raw, 0.5);
  EXPECT_EQ(net.V, 1.0);
  EXPECT_FALSE(net.warning.empty());
}

TEST(SubtractFloor, RecoversTrueCurveAndKeepsWidth) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> V(0.1, 0.95), sig(20.0, 120.0), frac(0.01, 0.5);
  for (int i = 0; i < 50; ++i) {
    const DipParams truth{160.0, V(gen), sig(gen)};
    const double floor = frac(gen) * truth.S;
    const auto raw_pts = synthetic(truth, 600.0, 10.0, false, floor);
    const auto raw = fit_dip(raw_pts);
    const auto net = fit_dip(subtract_floor(raw_pts, floor));
    expect_relative(net.V, truth.V, 1e-6);
    expect_relative(net.S, truth.S, 1e-6);
    EXPECT_LE(std::abs(net.sigma_tau_um - raw.sigma_tau_um), 1e-8 * raw.sigma_tau_um);
    EXPECT_LT(raw.V, net.V);
  }
}

TEST(SubtractFloor, FloorsAtZeroAndKeepsErrors) {
  const std::vector<DipPoint> pts = {{0.0, 1.0, 0.5}, {1.0, 5.0, 2.0}};
  const auto out = subtract_floor(pts, 2.0);
  EXPECT_EQ(out[0].rate_hz, 0.0);
  EXPECT_EQ(out[1].rate_hz, 3.0);
  EXPECT_EQ(out[1].err_hz, 2.0);
}

TEST(EndToEnd, MonteCarloFitAgreesWithAnalyticFit) {
  auto cfg = runner::lab_config(detect::SchemeKind::threefold);
  cfg.collection_efficiency = 1.0;
  cfg.threads = 1;
  const auto mc = fit_dip(runner::dip_curve_mc(cfg));
  const auto exact = fit_dip(runner::dip_curve_analytic(cfg));
  const double combined = std::hypot(mc.stderr_V(), exact.stderr_V());
  ASSERT_GT(combined, 0.0);
  EXPECT_LT(std::abs(mc.V - exact.V), 3.0 * combined) << mc.V << " vs " << exact.V;
}

}  // namespace
}  // namespace hom::analysis
