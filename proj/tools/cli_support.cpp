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

#include "cli_support.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace rislink::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(const std::string& field) {
  if (field.empty()) throw UsageError("empty number in grid specification");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (errno != 0 || end != field.c_str() + field.size() || !std::isfinite(v)) {
    throw UsageError("cannot parse '" + field + "' as a number");
  }
  return v;
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  if (spec.empty()) throw UsageError("empty grid specification");
  if (spec.find(':') != std::string::npos) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) {
      throw UsageError("range grids take the form start:stop:step, got '" +
                       spec + "'");
    }
    const double a = parse_double(parts[0]);
    const double b = parse_double(parts[1]);
    const double step = parse_double(parts[2]);
    if (!(step > 0.0)) throw UsageError("grid step must be positive");
    if (b < a) throw UsageError("grid stop must not precede its start");
    // The slack absorbs binary round-off so 0:100:0.5 lands exactly on 100.
    const double count = std::floor((b - a) / step + 1e-9);
    if (!(count < 10 * 1000 * 1000)) throw UsageError("grid has too many points");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count) + 1);
    for (long long i = 0; i <= static_cast<long long>(count); ++i) {
      out.push_back(a + static_cast<double>(i) * step);
    }
    return out;
  }
  std::vector<double> out;
  for (const auto& field : split(spec, ',')) out.push_back(parse_double(field));
  return out;
}

std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> out;
  for (const double v : parse_grid(spec)) {
    const double rounded = std::nearbyint(v);
    if (v != rounded || std::abs(v) > 1e9) {
      throw UsageError("expected an integer list, got '" + spec + "'");
    }
    out.push_back(static_cast<int>(rounded));
  }
  return out;
}

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::uint64_t resolve_seed(bool flag_given, std::uint64_t flag_value) {
  if (flag_given) return flag_value;
  const char* env = std::getenv("RISLINK_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || end == env || *end != '\0') {
    throw UsageError("RISLINK_SEED must be a decimal unsigned integer");
  }
  return static_cast<std::uint64_t>(v);
}

std::string utc_timestamp() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

CsvBuilder::CsvBuilder(const std::string& config_hash,
                       std::uint64_t master_seed, std::size_t samples,
                       const std::string& command,
                       const std::vector<std::string>& columns)
    : n_cols_(columns.size()) {
  body_ = "# config_hash=" + config_hash +
          " master_seed=" + std::to_string(master_seed) +
          " samples=" + std::to_string(samples) + " command=" + command + "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i > 0) body_ += ',';
    body_ += columns[i];
  }
  body_ += '\n';
}

void CsvBuilder::row(const std::vector<double>& values) {
  if (values.size() != n_cols_) {
    throw std::logic_error("csv row width does not match the header");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) body_ += ',';
    body_ += format_double(values[i]);
  }
  body_ += '\n';
  ++rows_;
}

void write_text_file(const std::string& out_dir, const std::string& name,
                     const std::string& content) {
  std::filesystem::create_directories(out_dir);
  const auto path = std::filesystem::path(out_dir) / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string write_manifest(const std::string& out_dir, const std::string& stem,
                           const Manifest& m) {
  nlohmann::json j;
  j["command"] = m.command;
  j["version"] = kVersion;
  j["scenario"] = m.scenario_path;
  j["config_hash"] = m.config_hash;
  j["master_seed"] = m.master_seed;
  j["samples"] = m.samples;
  j["workers"] = m.workers;
  j["timestamp_utc"] = utc_timestamp();
  j["outputs"] = m.outputs;
  j["warnings"] = m.warnings;
  nlohmann::json stats = nlohmann::json::object();
  for (const auto& [key, value] : m.stats) stats[key] = value;
  j["stats"] = stats;
  const std::string name = stem + "_manifest.json";
  write_text_file(out_dir, name, j.dump(2) + "\n");
  return name;
}

}  // namespace rislink::cli
