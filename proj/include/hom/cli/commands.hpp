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
#include <filesystem>
#include <optional>
#include <ostream>

#include "hom/curve.hpp"

namespace hom::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;

/// Prints {P, V_threefold, V_fivefold_max} to six decimals. With an
/// overlap |m|^2 = q both visibilities scale by q.
int cmd_analytic(double pair_probability, std::optional<double> overlap_sq, std::ostream& out);

struct ScanOptions {
  std::filesystem::path config_path;
  CurveMode mode = CurveMode::analytic;
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
};

/// Runs a delay scan. Writes curve.csv (raw), curve_net.csv (accidental
/// floor removed), fit.json (net), fit_raw.json and manifest.json into
/// out_dir, and prints the net fit to `out`.
int cmd_scan(const ScanOptions& options, std::ostream& out);

/// Fits a curve CSV and prints the fit JSON.
int cmd_fit(const std::filesystem::path& csv_path, std::ostream& out);

}  // namespace hom::cli
