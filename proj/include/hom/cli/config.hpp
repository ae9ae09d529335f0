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

#include <string>
#include <string_view>

#include <json.hpp>

#include "hom/runner.hpp"

namespace hom::cli {

/// Parses the JSON experiment config. Unknown keys are rejected so typos
/// surface as validation errors instead of silently falling back to
/// defaults. The returned config has been validated.
runner::ExperimentConfig parse_config(const nlohmann::json& doc);
runner::ExperimentConfig parse_config_text(std::string_view text);

/// JSON form accepted by parse_config.
nlohmann::json config_to_json(const runner::ExperimentConfig& cfg);

}  // namespace hom::cli
