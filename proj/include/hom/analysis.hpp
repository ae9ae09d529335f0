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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hom/curve.hpp"

namespace hom::analysis {

/// Parameters of R(tau) = S (1 - V exp(-tau^2 / (2 sigma^2))).
struct DipParams {
  double S = 0.0;
  double V = 0.0;
  double sigma_tau_um = 0.0;
};

double dip_model(double delay_um, const DipParams& p);

/// d/dS, d/dV, d/dsigma of dip_model.
std::array<double, 3> dip_model_gradient(double delay_um, const DipParams& p);

/// FWHM of the Gaussian dip, 2 sqrt(2 ln 2) sigma.
double fwhm_from_sigma(double sigma_tau_um);

struct DipFit {
  double S = 0.0;
  double V = 0.0;
  double sigma_tau_um = 0.0;
  double fwhm_um = 0.0;
  /// Covariance of (S, V, sigma). Scaled by the reduced chi-square when
  /// the points carry no errors.
  Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();
  /// sqrt of the weighted residual sum of squares.
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string warning;

  DipParams params() const { return {S, V, sigma_tau_um}; }
  double stderr_S() const;
  double stderr_V() const;
  double stderr_sigma() const;
};

/// Outer-quartile mean for S, deepest point for V, half-depth crossing
/// for sigma.
DipParams initial_guess(std::span<const DipPoint> points);

/// Weighted least squares (1/err^2, or uniform when any error is zero)
/// by damped Gauss-Newton. Needs at least five points spanning the dip's
/// half-depth crossing. A flat curve returns V = 0 with a warning.
DipFit fit_dip(std::span<const DipPoint> points, std::optional<DipParams> guess = std::nullopt);
DipFit fit_dip(const DipCurve& curve, std::optional<DipParams> guess = std::nullopt);

/// (od - id) / od.
double visibility(double od_rate, double id_rate);

/// Rescales a raw fit for a constant accidental floor:
/// S' = S - acc, V' = V S / (S - acc).
DipFit net_from_raw(const DipFit& raw, double accidental);

/// Subtracts a constant floor from every rate, flooring at zero.
std::vector<DipPoint> subtract_floor(std::span<const DipPoint> points, double floor);

}  // namespace hom::analysis
