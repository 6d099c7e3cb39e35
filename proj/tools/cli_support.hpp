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

#ifndef RISLINK_TOOLS_CLI_SUPPORT_HPP
#define RISLINK_TOOLS_CLI_SUPPORT_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Shared plumbing for the command layer: grid parsing, deterministic CSV
// assembly (shortest round-trip number formatting, '#' metadata line), and
// the JSON run manifest. Nothing here touches the numeric core.

namespace rislink::cli {

inline constexpr const char* kVersion = "v0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 12345;

// Bad command-line input; the entry point maps it to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "a:b:step" (inclusive, step > 0) or a comma-separated value list.
std::vector<double> parse_grid(const std::string& spec);
// Same grammar restricted to integers.
std::vector<int> parse_int_list(const std::string& spec);

// Shortest representation that parses back to the same double.
std::string format_double(double v);

// --seed beats the RISLINK_SEED environment override beats the default.
std::uint64_t resolve_seed(bool flag_given, std::uint64_t flag_value);

std::string utc_timestamp();

// Deterministic CSV body: one '#' metadata line, one header line, data rows.
class CsvBuilder {
 public:
  CsvBuilder(const std::string& config_hash, std::uint64_t master_seed,
             std::size_t samples, const std::string& command,
             const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);
  const std::string& body() const { return body_; }
  std::size_t rows() const { return rows_; }

 private:
  std::string body_;
  std::size_t n_cols_;
  std::size_t rows_ = 0;
};

// Creates out_dir if needed and writes content as-is.
void write_text_file(const std::string& out_dir, const std::string& name,
                     const std::string& content);

struct Manifest {
  std::string command;
  std::string scenario_path;
  std::string config_hash;
  std::uint64_t master_seed = 0;
  std::size_t samples = 0;
  int workers = 1;
  std::vector<std::string> outputs;  // file names relative to the out dir
  std::vector<std::string> warnings;
  std::vector<std::pair<std::string, double>> stats;
};

// Writes <out_dir>/<stem>_manifest.json; returns the file name.
std::string write_manifest(const std::string& out_dir, const std::string& stem,
                           const Manifest& m);

}  // namespace rislink::cli

#endif  // RISLINK_TOOLS_CLI_SUPPORT_HPP
