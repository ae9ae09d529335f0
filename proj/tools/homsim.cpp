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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hom/cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"homsim: two-source Hong-Ou-Mandel dip simulator"};
  app.require_subcommand(1);

  auto* analytic = app.add_subcommand("analytic", "Closed-form threefold and fivefold visibilities");
  double pair_probability = 0.04;
  std::optional<double> overlap_sq;
  analytic->add_option("-P,--pair-probability", pair_probability, "Pair probability per pulse per source")
      ->required();
  analytic->add_option("--m2", overlap_sq, "Overlap |m|^2 at the dip centre (default 1)");

  auto* scan = app.add_subcommand("scan", "Simulate a delay scan, fit it and write CSV/JSON outputs");
  hom::cli::ScanOptions scan_opts;
  std::string mode = "analytic";
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  scan->add_option("config", scan_opts.config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  scan->add_option("--mode", mode, "analytic or mc")->check(CLI::IsMember({"analytic", "mc"}));
  scan->add_option("--out", scan_opts.out_dir, "Output directory");
  scan->add_option("--seed", seed, "Override the config seed");
  scan->add_option("--threads", threads, "Monte Carlo worker threads (0 = all cores)");

  auto* fit = app.add_subcommand("fit", "Fit a curve CSV (delay_um,rate_hz,err_hz)");
  std::string csv_path;
  fit->add_option("csv", csv_path, "Curve CSV")->required();

  CLI11_PARSE(app, argc, argv);

  if (*analytic) return hom::cli::cmd_analytic(pair_probability, overlap_sq, std::cout);
  if (*scan) {
    scan_opts.mode = mode == "mc" ? hom::CurveMode::mc : hom::CurveMode::analytic;
    scan_opts.seed = seed;
    scan_opts.threads = threads;
    return hom::cli::cmd_scan(scan_opts, std::cout);
  }
  return hom::cli::cmd_fit(csv_path, std::cout);
}
