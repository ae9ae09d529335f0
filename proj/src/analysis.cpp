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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "hom/detect.hpp"
#include "hom/errors.hpp"

namespace hom::analysis {

namespace {

constexpr int kMaxIterations = 200;
constexpr double kStepTolerance = 1e-10;

struct Problem {
  std::span<const DipPoint> points;
  std::vector<double> weights;

  double cost(const DipParams& p) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double r = points[i].rate_hz - dip_model(points[i].delay_um, p);
      sum += weights[i] * r * r;
    }
    return sum;
  }
};

std::vector<double> make_weights(std::span<const DipPoint> points) {
  const bool weighted = std::all_of(points.begin(), points.end(), [](const DipPoint& p) { return p.err_hz > 0.0; });
  std::vector<double> w(points.size(), 1.0);
  if (weighted) {
    for (std::size_t i = 0; i < points.size(); ++i) w[i] = 1.0 / (points[i].err_hz * points[i].err_hz);
  }
  return w;
}

Eigen::Vector3d to_vector(const DipParams& p) { return {p.S, p.V, p.sigma_tau_um}; }

DipParams project(const Eigen::Vector3d& x, const DipParams& previous) {
  DipParams p{x[0], std::clamp(x[1], 0.0, 1.0), x[2]};
  if (!(p.S > 0.0)) p.S = 0.5 * previous.S;
  if (!(p.sigma_tau_um > 0.0)) p.sigma_tau_um = 0.5 * previous.sigma_tau_um;
  return p;
}

double stderr_of(const Eigen::Matrix3d& cov, int i) {
  const double v = cov(i, i);
  return v >= 0.0 ? std::sqrt(v) : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

double dip_model(double delay_um, const DipParams& p) {
  const double g = std::exp(-delay_um * delay_um / (2.0 * p.sigma_tau_um * p.sigma_tau_um));
  return p.S * (1.0 - p.V * g);
}

std::array<double, 3> dip_model_gradient(double delay_um, const DipParams& p) {
  const double s2 = p.sigma_tau_um * p.sigma_tau_um;
  const double g = std::exp(-delay_um * delay_um / (2.0 * s2));
  return {1.0 - p.V * g, -p.S * g, -p.S * p.V * g * delay_um * delay_um / (s2 * p.sigma_tau_um)};
}

double fwhm_from_sigma(double sigma_tau_um) { return 2.0 * std::sqrt(2.0 * std::numbers::ln2) * sigma_tau_um; }

double DipFit::stderr_S() const { return stderr_of(covariance, 0); }
double DipFit::stderr_V() const { return stderr_of(covariance, 1); }
double DipFit::stderr_sigma() const { return stderr_of(covariance, 2); }

DipParams initial_guess(std::span<const DipPoint> points) {
  if (points.empty()) throw PreconditionError("cannot guess dip parameters from an empty curve");
  std::vector<DipPoint> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), [](const DipPoint& x, const DipPoint& y) { return x.delay_um < y.delay_um; });

  std::vector<std::size_t> by_distance(sorted.size());
  std::iota(by_distance.begin(), by_distance.end(), 0);
  std::stable_sort(by_distance.begin(), by_distance.end(), [&](std::size_t i, std::size_t j) {
    return std::abs(sorted[i].delay_um) > std::abs(sorted[j].delay_um);
  });
  const std::size_t outer = std::max<std::size_t>(1, sorted.size() / 4);
  double s = 0.0;
  for (std::size_t k = 0; k < outer; ++k) s += sorted[by_distance[k]].rate_hz;
  s /= static_cast<double>(outer);

  const auto deepest = static_cast<std::size_t>(
      std::min_element(sorted.begin(), sorted.end(),
                       [](const DipPoint& x, const DipPoint& y) { return x.rate_hz < y.rate_hz; }) -
      sorted.begin());
  const double v = s > 0.0 ? std::clamp(1.0 - sorted[deepest].rate_hz / s, 0.0, 1.0) : 0.0;

  // Half-depth crossings either side of the deepest point, linearly
  // interpolated between neighbouring samples.
  const double level = s * (1.0 - 0.5 * v);
  auto crossing = [&](int dir) -> std::optional<double> {
    for (auto i = static_cast<std::ptrdiff_t>(deepest); i + dir >= 0 && i + dir < std::ssize(sorted); i += dir) {
      const DipPoint& in = sorted[static_cast<std::size_t>(i)];
      const DipPoint& out = sorted[static_cast<std::size_t>(i + dir)];
      if (out.rate_hz >= level) {
        const double span = out.rate_hz - in.rate_hz;
        const double f = span > 0.0 ? (level - in.rate_hz) / span : 0.5;
        return in.delay_um + f * (out.delay_um - in.delay_um);
      }
    }
    return std::nullopt;
  };
  const auto left = crossing(-1);
  const auto right = crossing(+1);
  double hwhm = 0.0;
  if (left && right) {
    hwhm = 0.5 * (*right - *left);
  } else if (left || right) {
    hwhm = std::abs((left ? *left : *right) - sorted[deepest].delay_um);
  }
  if (!(hwhm > 0.0)) hwhm = std::numeric_limits<double>::quiet_NaN();
  return {s, v, hwhm / std::sqrt(2.0 * std::numbers::ln2)};
}

DipFit fit_dip(std::span<const DipPoint> points, std::optional<DipParams> guess) {
  if (points.size() < 5) {
    throw PreconditionError(fmt::format("dip fit needs at least 5 points, got {}", points.size()));
  }
  for (const auto& pt : points) {
    if (!std::isfinite(pt.delay_um) || !std::isfinite(pt.rate_hz) || !(pt.err_hz >= 0.0)) {
      throw PreconditionError("curve contains non-finite values or negative errors");
    }
  }
  Problem problem{points, make_weights(points)};
  const double wsum = std::accumulate(problem.weights.begin(), problem.weights.end(), 0.0);
  double mean = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) mean += problem.weights[i] * points[i].rate_hz;
  mean /= wsum;

  const auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                            [](const DipPoint& x, const DipPoint& y) { return x.rate_hz < y.rate_hz; });
  const DipParams auto_guess = initial_guess(points);
  DipParams p = guess.value_or(auto_guess);

  if (hi->rate_hz - lo->rate_hz <= 1e-12 * std::max(std::abs(mean), 1e-300) || auto_guess.V == 0.0) {
    if (!(mean > 0.0)) throw PreconditionError("curve has no coincidences");
    DipFit flat;
    flat.S = mean;
    flat.V = 0.0;
    flat.sigma_tau_um = std::isfinite(p.sigma_tau_um) && p.sigma_tau_um > 0.0 ? p.sigma_tau_um : 0.0;
    flat.fwhm_um = fwhm_from_sigma(flat.sigma_tau_um);
    flat.residual = std::sqrt(problem.cost({mean, 0.0, 1.0}));
    flat.converged = true;
    flat.covariance.fill(std::numeric_limits<double>::quiet_NaN());
    flat.covariance(0, 0) = 1.0 / wsum;
    flat.warning = "flat curve: visibility pinned at 0";
    return flat;
  }
  if (!(p.S > 0.0)) throw PreconditionError("curve has no coincidences");
  if (!std::isfinite(auto_guess.sigma_tau_um) && !guess) {
    throw PreconditionError("points do not span the dip's half-depth crossing (need at least one FWHM)");
  }
  if (!(p.sigma_tau_um > 0.0) || !std::isfinite(p.sigma_tau_um)) {
    throw PreconditionError("initial guess needs a positive, finite sigma");
  }
  p.V = std::clamp(p.V, 0.0, 1.0);

  const std::size_t n = points.size();
  Eigen::MatrixXd jac(n, 3);
  Eigen::VectorXd resid(n);
  Eigen::Matrix3d normal;
  double cost = problem.cost(p);
  double damping = 1e-3;
  DipFit fit;

  auto linearize = [&](const DipParams& at) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto g = dip_model_gradient(points[i].delay_um, at);
      const double sw = std::sqrt(problem.weights[i]);
      jac.row(static_cast<Eigen::Index>(i)) << sw * g[0], sw * g[1], sw * g[2];
      resid[static_cast<Eigen::Index>(i)] = sw * (points[i].rate_hz - dip_model(points[i].delay_um, at));
    }
    normal = jac.transpose() * jac;
  };

  linearize(p);
  while (fit.iterations < kMaxIterations) {
    ++fit.iterations;
    const Eigen::Vector3d gradient = jac.transpose() * resid;
    Eigen::Matrix3d damped = normal;
    const double ridge = 1e-15 * normal.diagonal().maxCoeff();
    for (int k = 0; k < 3; ++k) damped(k, k) += damping * normal(k, k) + ridge;
    const Eigen::Vector3d step = damped.ldlt().solve(gradient);
    const DipParams trial = project(to_vector(p) + step, p);
    const double trial_cost = problem.cost(trial);

    const Eigen::Vector3d change = to_vector(trial) - to_vector(p);
    const Eigen::Vector3d scale = to_vector(p).cwiseAbs().cwiseMax(1e-300);
    const double rel_change = change.cwiseQuotient(scale).cwiseAbs().maxCoeff();

    if (trial_cost <= cost) {
      p = trial;
      cost = trial_cost;
      damping = std::max(damping * 0.1, 1e-12);
      linearize(p);
      if (rel_change < kStepTolerance) {
        fit.converged = true;
        break;
      }
    } else {
      damping *= 10.0;
      if (damping > 1e20 || rel_change < 1e-15) {
        // No downhill step left at this precision.
        fit.converged = rel_change < kStepTolerance;
        break;
      }
    }
  }

  fit.S = p.S;
  fit.V = p.V;
  fit.sigma_tau_um = p.sigma_tau_um;
  fit.fwhm_um = fwhm_from_sigma(p.sigma_tau_um);
  fit.residual = std::sqrt(cost);

  const auto [first, last] = std::minmax_element(
      points.begin(), points.end(), [](const DipPoint& x, const DipPoint& y) { return x.delay_um < y.delay_um; });
  if (last->delay_um - first->delay_um < fit.fwhm_um) {
    throw PreconditionError(fmt::format("points span {} um, less than the fitted FWHM of {} um",
                                        last->delay_um - first->delay_um, fit.fwhm_um));
  }

  Eigen::FullPivLU<Eigen::Matrix3d> lu(normal);
  if (lu.isInvertible()) {
    fit.covariance = lu.inverse();
    const bool weighted = std::all_of(points.begin(), points.end(), [](const DipPoint& q) { return q.err_hz > 0.0; });
    if (!weighted && n > 3) fit.covariance *= cost / static_cast<double>(n - 3);
  } else {
    fit.covariance.fill(std::numeric_limits<double>::quiet_NaN());
  }
  if (!fit.converged) {
    fit.warning = fmt::format("did not converge within {} iterations", fit.iterations);
  }
  return fit;
}

DipFit fit_dip(const DipCurve& curve, std::optional<DipParams> guess) { return fit_dip(curve.points, guess); }

double visibility(double od_rate, double id_rate) {
  if (!(od_rate > 0.0)) throw PreconditionError("outside-dip rate must be positive");
  if (!(id_rate >= 0.0 && id_rate <= od_rate)) {
    throw PreconditionError("inside-dip rate must lie in [0, outside-dip rate]");
  }
  return (od_rate - id_rate) / od_rate;
}

DipFit net_from_raw(const DipFit& raw, double accidental) {
  if (accidental < 0.0) throw PreconditionError("accidental rate must be non-negative");
  if (!(accidental < raw.S)) throw PreconditionError("accidental rate must be below the outside-dip rate");
  DipFit net = raw;
  const double s_net = raw.S - accidental;
  net.S = s_net;
  net.V = raw.V * raw.S / s_net;
  Eigen::Matrix3d jac = Eigen::Matrix3d::Identity();
  jac(1, 0) = -raw.V * accidental / (s_net * s_net);
  jac(1, 1) = raw.S / s_net;
  net.covariance = jac * raw.covariance * jac.transpose();
  if (net.V > 1.0) {
    net.V = 1.0;
    net.warning = "net visibility exceeded 1 and was capped";
  }
  return net;
}

std::vector<DipPoint> subtract_floor(std::span<const DipPoint> points, double floor) {
  std::vector<DipPoint> out(points.begin(), points.end());
  for (auto& pt : out) pt.rate_hz = detect::subtract_accidentals(pt.rate_hz, floor);
  return out;
}

}  // namespace hom::analysis
