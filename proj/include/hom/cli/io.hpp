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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hom/analysis.hpp"
#include "hom/curve.hpp"

namespace hom::cli {

/// `delay_um,rate_hz,err_hz`, LF endings, C-locale numbers.
std::string curve_to_csv(const std::vector<DipPoint>& points);
std::vector<DipPoint> curve_from_csv(std::string_view text);

/// {S, V, sigma_tau_um, fwhm_um, residual, iterations, converged}, plus
/// `warning` when the fit raised one.
nlohmann::json fit_to_json(const analysis::DipFit& fit);

/// Lower-case hex SHA-256 of the bytes.
std::string content_digest(std::string_view bytes);

std::string utc_timestamp();

std::string read_file(const std::filesystem::path& path);

/// Writes via a temporary sibling and rename, so readers never observe a
/// partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace hom::cli
