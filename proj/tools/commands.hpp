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

#ifndef RISLINK_TOOLS_COMMANDS_HPP
#define RISLINK_TOOLS_COMMANDS_HPP

#include <cstddef>
#include <cstdint>
#include <string>

#include "cli_support.hpp"

namespace rislink::cli {

struct CommonArgs {
  std::string scenario_path;
  std::string out_dir = ".";
  std::uint64_t seed = kDefaultSeed;
  std::size_t samples = 200000;
};

// Analytical density of one hop against a seeded Monte Carlo histogram.
// Writes pdf_<hop>_<mode>.csv, a plot stub and a manifest with the KS
// statistic. hop is g2a or a2g; mode is exact, large_n (a2g only) or
// asymptotic; grid_spec may be empty for an automatic 200-bin grid.
int run_pdf(const CommonArgs& c, const std::string& hop,
            const std::string& mode, const std::string& grid_spec);

// Outage-planning sweep over transmit power and target outage level.
// Writes outage.csv with the inverted threshold, the analytical bound at
// that threshold and the paired Monte Carlo estimate.
int run_outage(const CommonArgs& c, const std::string& levels_spec,
               const std::string& powers_spec);

// Spectral-efficiency ceiling versus UAV speed for each (N, M) combination.
// Pure planning math; no sampling. Writes se_sweep.csv.
int run_se_sweep(const CommonArgs& c, const std::string& speeds_spec,
                 const std::string& elements_spec,
                 const std::string& antennas_spec, double level);

}  // namespace rislink::cli

#endif  // RISLINK_TOOLS_COMMANDS_HPP
