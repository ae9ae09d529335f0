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

#include "hom/cli/commands.hpp"

#include <exception>
#include <functional>

#include <fmt/format.h>
#include <json.hpp>

#include "hom/analysis.hpp"
#include "hom/cli/config.hpp"
#include "hom/cli/io.hpp"
#include "hom/errors.hpp"
#include "hom/runner.hpp"

#ifndef HOMSIM_VERSION
#define HOMSIM_VERSION "unknown"
#endif

namespace hom::cli {

using nlohmann::json;

namespace {

int guarded(std::ostream& out, const std::function<int()>& body) {
  try {
    return body();
  } catch (const hom::Error& e) {
    out << json{{"error", e.kind()}, {"message", e.what()}}.dump() << '\n';
  } catch (const std::exception& e) {
    out << json{{"error", "internal"}, {"message", e.what()}}.dump() << '\n';
  }
  return kExitFailure;
}

}  // namespace

int cmd_analytic(double pair_probability, std::optional<double> overlap_sq, std::ostream& out) {
  return guarded(out, [&] {
    const double q = overlap_sq.value_or(1.0);
    if (!(q >= 0.0 && q <= 1.0)) throw ValidationError("overlap |m|^2 must lie in [0, 1]");
    const double v3 = q * runner::analytic_visibility_threefold();
    const double v5 = q * runner::analytic_visibility_fivefold_max(pair_probability);
    out << fmt::format("{{\"P\": {}, \"m2\": {}, \"V_threefold\": {:.6f}, \"V_fivefold_max\": {:.6f}}}\n",
                       pair_probability, q, v3, v5);
    return kExitOk;
  });
}

int cmd_scan(const ScanOptions& options, std::ostream& out) {
  return guarded(out, [&] {
    const std::string started = utc_timestamp();
    const std::string text = read_file(options.config_path);
    auto cfg = parse_config_text(text);
    if (options.seed) cfg.seed = *options.seed;
    if (options.threads) cfg.threads = *options.threads;

    DipCurve curve = options.mode == CurveMode::analytic ? runner::dip_curve_analytic(cfg) : runner::dip_curve_mc(cfg);
    curve.config_digest = content_digest(text);

    const auto net_points = analysis::subtract_floor(curve.points, curve.accidental_hz);
    const auto raw_fit = analysis::fit_dip(curve.points);
    const auto net_fit = analysis::fit_dip(net_points);

    std::filesystem::create_directories(options.out_dir);
    const auto curve_csv = options.out_dir / "curve.csv";
    const auto curve_net_csv = options.out_dir / "curve_net.csv";
    const auto fit_path = options.out_dir / "fit.json";
    const auto fit_raw_path = options.out_dir / "fit_raw.json";
    const auto manifest_path = options.out_dir / "manifest.json";

    write_file_atomic(curve_csv, curve_to_csv(curve.points));
    write_file_atomic(curve_net_csv, curve_to_csv(net_points));
    const json net_json = fit_to_json(net_fit);
    write_file_atomic(fit_path, net_json.dump(2) + "\n");
    write_file_atomic(fit_raw_path, fit_to_json(raw_fit).dump(2) + "\n");

    const json manifest = {
        {"tool", "homsim"},
        {"version", HOMSIM_VERSION},
        {"config_path", options.config_path.string()},
        {"config_digest", curve.config_digest},
        {"seed", cfg.seed},
        {"mode", to_string(curve.mode)},
        {"scheme", detect::to_string(curve.scheme)},
        {"coherence_length_um", curve.coherence_length_um},
        {"accidental_hz", curve.accidental_hz},
        {"truncated_pulses", curve.truncated_pulses},
        {"started_utc", started},
        {"finished_utc", utc_timestamp()},
        {"outputs",
         {{"curve_csv", curve_csv.string()},
          {"curve_net_csv", curve_net_csv.string()},
          {"fit_json", fit_path.string()},
          {"fit_raw_json", fit_raw_path.string()}}},
    };
    write_file_atomic(manifest_path, manifest.dump(2) + "\n");

    out << net_json.dump() << '\n';
    return kExitOk;
  });
}

int cmd_fit(const std::filesystem::path& csv_path, std::ostream& out) {
  return guarded(out, [&] {
    const auto points = curve_from_csv(read_file(csv_path));
    out << fit_to_json(analysis::fit_dip(points)).dump() << '\n';
    return kExitOk;
  });
}

}  // namespace hom::cli
