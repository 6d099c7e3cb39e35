// Copyright 2026 the rislink authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exit codes: 0 success, 1 a validation check failed (or an internal error),
// 2 bad usage or configuration.

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cli_support.hpp"
#include "commands.hpp"
#include "rislink/scenario.hpp"
#include "validate.hpp"

int main(int argc, char** argv) {
  using namespace rislink;

  CLI::App app{"link statistics for RIS-assisted UAV relaying under channel "
               "aging"};
  app.set_version_flag("--version", std::string("rislink ") + cli::kVersion);
  app.require_subcommand(1);

  cli::CommonArgs common;
  std::vector<CLI::Option*> seed_opts;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scenario", common.scenario_path,
                    "scenario description file")
        ->required();
    seed_opts.push_back(sub->add_option(
        "--seed", common.seed,
        "master seed (RISLINK_SEED overrides the built-in default)"));
    sub->add_option("--samples", common.samples, "Monte Carlo draw count");
    sub->add_option("--out", common.out_dir, "output directory");
  };

  std::string hop;
  std::string mode = "exact";
  std::string grid;
  CLI::App* pdf = app.add_subcommand(
      "pdf", "hop SNR density: analytical law vs seeded Monte Carlo");
  add_common(pdf);
  pdf->add_option("--hop", hop, "g2a or a2g")->required();
  pdf->add_option("--mode", mode, "exact, large_n (a2g only) or asymptotic");
  pdf->add_option("--grid", grid,
                  "bin edges as start:stop:step or a comma list (default: "
                  "automatic 200 bins)");

  std::string levels = "1e-1,1e-2,1e-3,1e-4";
  std::string powers = "0:33:3";
  CLI::App* outage = app.add_subcommand(
      "outage", "planning thresholds and outage across power and level grids");
  add_common(outage);
  outage->add_option("--levels", levels, "target outage levels, in (0, 1)");
  outage->add_option("--powers", powers, "transmit powers in dBm");

  std::string speeds = "0:100:0.5";
  std::string elements = "400";
  std::string antennas = "4";
  double level = 1e-4;
  CLI::App* sweep = app.add_subcommand(
      "se-sweep", "spectral-efficiency ceiling versus UAV speed");
  add_common(sweep);
  sweep->add_option("--speeds", speeds, "UAV speeds in m/s");
  sweep->add_option("--elements", elements, "RIS element counts");
  sweep->add_option("--antennas", antennas, "base station antenna counts");
  sweep->add_option("--level", level, "target outage level");

  std::string suite = "all";
  double ks_threshold = 0.03;
  CLI::App* validate = app.add_subcommand(
      "validate", "self checks: specfun, dists, mc or all");
  add_common(validate);
  validate->add_option("--suite", suite, "check suite to run");
  validate->add_option(
      "--ks-threshold", ks_threshold,
      "agreement gate for the seeded law checks (the default leaves room "
      "for the large-N collapse bias)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // help and version are successes
  }

  try {
    bool seed_given = false;
    for (const CLI::Option* opt : seed_opts) {
      seed_given = seed_given || opt->count() > 0;
    }
    common.seed = cli::resolve_seed(seed_given, common.seed);

    if (pdf->parsed()) return cli::run_pdf(common, hop, mode, grid);
    if (outage->parsed()) return cli::run_outage(common, levels, powers);
    if (sweep->parsed()) {
      return cli::run_se_sweep(common, speeds, elements, antennas, level);
    }
    return cli::run_validate(common, suite, ks_threshold);
  } catch (const cli::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const scenario::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
