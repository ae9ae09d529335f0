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

#include "hom/cli/config.hpp"

#include <initializer_list>
#include <set>

#include <fmt/format.h>

#include "hom/errors.hpp"

namespace hom::cli {

using nlohmann::json;

namespace {

const json& require_object(const json& doc, const std::string& where) {
  if (!doc.is_object()) throw ValidationError(where + " must be a JSON object");
  return doc;
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
  const std::set<std::string_view> known(allowed);
  for (const auto& [key, value] : obj.items()) {
    if (!known.contains(key)) throw ValidationError(fmt::format("{}: unknown key '{}'", where, key));
  }
}

double number(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(fmt::format("{}: missing '{}'", where, key));
  if (!it->is_number()) throw ValidationError(fmt::format("{}: '{}' must be a number", where, key));
  return it->get<double>();
}

double number_or(const json& obj, const char* key, double fallback, const std::string& where) {
  return obj.contains(key) ? number(obj, key, where) : fallback;
}

template <typename Int>
Int integer_or(const json& obj, const char* key, Int fallback, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_integer() || (std::is_unsigned_v<Int> && it->get<std::int64_t>() < 0)) {
    throw ValidationError(fmt::format("{}: '{}' must be a{} integer", where, key,
                                      std::is_unsigned_v<Int> ? " non-negative" : "n"));
  }
  return it->get<Int>();
}

pdc::SourceParams parse_source(const json& src, const std::string& where) {
  require_object(src, where);
  reject_unknown(src, {"zeta", "P", "small_zeta"}, where);
  const bool has_zeta = src.contains("zeta");
  const bool has_p = src.contains("P");
  if (has_zeta == has_p) throw ValidationError(where + ": give exactly one of 'zeta' or 'P'");
  auto params = has_zeta ? pdc::SourceParams::from_zeta(number(src, "zeta", where))
                         : pdc::SourceParams::from_pair_probability(number(src, "P", where));
  if (src.value("small_zeta", false)) params.check_small_zeta();
  return params;
}

}  // namespace

runner::ExperimentConfig parse_config(const json& doc) {
  require_object(doc, "config");
  reject_unknown(doc,
                 {"sources", "filters", "detectors", "scheme", "delays", "mc", "pulse_rate_hz",
                  "collection_efficiency", "truncation_pairs", "polarization_angle_rad", "spectral_mismatch",
                  "splitter_reflectivity", "response"},
                 "config");
  for (const char* key : {"sources", "filters", "detectors", "scheme", "delays"}) {
    if (!doc.contains(key)) throw ValidationError(fmt::format("config: missing '{}'", key));
  }

  runner::ExperimentConfig cfg;

  const json& sources = doc.at("sources");
  if (!sources.is_array() || sources.size() != 2) throw ValidationError("config: 'sources' must list two sources");
  cfg.source1 = parse_source(sources[0], "sources[0]");
  cfg.source2 = parse_source(sources[1], "sources[1]");

  const json& filters = require_object(doc.at("filters"), "filters");
  reject_unknown(filters, {"signal_nm", "signal_fwhm_nm", "herald_nm", "herald_fwhm_nm", "pump_nm", "pump_fwhm_nm"},
                 "filters");
  cfg.signal_filter = {number(filters, "signal_nm", "filters"), number(filters, "signal_fwhm_nm", "filters")};
  cfg.herald_filter = {number(filters, "herald_nm", "filters"), number(filters, "herald_fwhm_nm", "filters")};
  cfg.pump = {number_or(filters, "pump_nm", 710.0, "filters"), number(filters, "pump_fwhm_nm", "filters")};

  const json& detectors = doc.at("detectors");
  if (!detectors.is_array() || detectors.size() != detect::kDetectorCount) {
    throw ValidationError("config: 'detectors' must list four detectors (Ge-1310, InGaAs-1310, 1550-1, 1550-2)");
  }
  for (std::size_t i = 0; i < detect::kDetectorCount; ++i) {
    const std::string where = fmt::format("detectors[{}]", i);
    require_object(detectors[i], where);
    reject_unknown(detectors[i], {"eta", "dark_prob"}, where);
    cfg.detectors[i] = {number(detectors[i], "eta", where), number_or(detectors[i], "dark_prob", 0.0, where)};
  }

  if (!doc.at("scheme").is_string()) throw ValidationError("config: 'scheme' must be a string");
  cfg.scheme.kind = detect::scheme_from_string(doc.at("scheme").get<std::string>());

  const json& delays = require_object(doc.at("delays"), "delays");
  reject_unknown(delays, {"min_um", "max_um", "step_um"}, "delays");
  cfg.delays_um = runner::delay_grid(number(delays, "min_um", "delays"), number(delays, "max_um", "delays"),
                                     number(delays, "step_um", "delays"));

  if (doc.contains("mc")) {
    const json& mc = require_object(doc.at("mc"), "mc");
    reject_unknown(mc, {"pulses_per_point", "seed", "threads"}, "mc");
    cfg.pulses_per_point = integer_or<std::int64_t>(mc, "pulses_per_point", cfg.pulses_per_point, "mc");
    cfg.seed = integer_or<std::uint64_t>(mc, "seed", cfg.seed, "mc");
    cfg.threads = integer_or<unsigned>(mc, "threads", cfg.threads, "mc");
  }

  cfg.pulse_rate_hz = number_or(doc, "pulse_rate_hz", cfg.pulse_rate_hz, "config");
  cfg.collection_efficiency = number_or(doc, "collection_efficiency", cfg.collection_efficiency, "config");
  cfg.truncation_pairs = integer_or<int>(doc, "truncation_pairs", cfg.truncation_pairs, "config");
  cfg.polarization_angle_rad = number_or(doc, "polarization_angle_rad", cfg.polarization_angle_rad, "config");
  cfg.spectral_mismatch = number_or(doc, "spectral_mismatch", cfg.spectral_mismatch, "config");
  cfg.splitter_reflectivity = number_or(doc, "splitter_reflectivity", cfg.splitter_reflectivity, "config");
  if (doc.contains("response")) {
    const auto name = doc.at("response").is_string() ? doc.at("response").get<std::string>() : std::string{};
    if (name == "threshold") {
      cfg.response = runner::DetectionResponse::threshold;
    } else if (name == "small_eta") {
      cfg.response = runner::DetectionResponse::linear_small_eta;
    } else {
      throw ValidationError("config: 'response' must be \"threshold\" or \"small_eta\"");
    }
  }

  cfg.validate();
  return cfg;
}

runner::ExperimentConfig parse_config_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(fmt::format("config is not valid JSON: {}", e.what()));
  }
  return parse_config(doc);
}

json config_to_json(const runner::ExperimentConfig& cfg) {
  json detectors = json::array();
  for (const auto& det : cfg.detectors) detectors.push_back({{"eta", det.efficiency}, {"dark_prob", det.dark_prob}});
  const double min_um = cfg.delays_um.empty() ? 0.0 : cfg.delays_um.front();
  const double max_um = cfg.delays_um.empty() ? 0.0 : cfg.delays_um.back();
  const double step_um =
      cfg.delays_um.size() > 1 ? (max_um - min_um) / static_cast<double>(cfg.delays_um.size() - 1) : 1.0;
  return {
      {"sources", json::array({{{"zeta", cfg.source1.zeta()}}, {{"zeta", cfg.source2.zeta()}}})},
      {"filters",
       {{"signal_nm", cfg.signal_filter.center_nm},
        {"signal_fwhm_nm", cfg.signal_filter.fwhm_nm},
        {"herald_nm", cfg.herald_filter.center_nm},
        {"herald_fwhm_nm", cfg.herald_filter.fwhm_nm},
        {"pump_nm", cfg.pump.center_nm},
        {"pump_fwhm_nm", cfg.pump.fwhm_nm}}},
      {"detectors", detectors},
      {"scheme", detect::to_string(cfg.scheme.kind)},
      {"delays", {{"min_um", min_um}, {"max_um", max_um}, {"step_um", step_um}}},
      {"mc", {{"pulses_per_point", cfg.pulses_per_point}, {"seed", cfg.seed}, {"threads", cfg.threads}}},
      {"pulse_rate_hz", cfg.pulse_rate_hz},
      {"collection_efficiency", cfg.collection_efficiency},
      {"truncation_pairs", cfg.truncation_pairs},
      {"polarization_angle_rad", cfg.polarization_angle_rad},
      {"spectral_mismatch", cfg.spectral_mismatch},
      {"splitter_reflectivity", cfg.splitter_reflectivity},
      {"response", cfg.response == runner::DetectionResponse::threshold ? "threshold" : "small_eta"},
  };
}

}  // namespace hom::cli
