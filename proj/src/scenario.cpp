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

#include "rislink/scenario.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "rislink/specfun.hpp"

namespace rislink::scenario {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSpeedOfLight = 299792458.0;

[[noreturn]] void fail_line(int line, const std::string& msg) {
  throw ScenarioError("scenario config line " + std::to_string(line) + ": " +
                      msg);
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return std::string();
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Splits a comma-separated coefficient list; used by the inline "custom:"
// and "pinned:" model forms.
std::vector<double> parse_coeffs(const std::string& list,
                                 const std::string& what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    std::size_t comma = list.find(',', pos);
    std::string item =
        trim(comma == std::string::npos ? list.substr(pos)
                                        : list.substr(pos, comma - pos));
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size() ||
        (errno == ERANGE && std::fabs(v) == HUGE_VAL)) {
      throw ScenarioError("malformed coefficient '" + item + "' in " + what);
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

// Shortest representation that parses back to the identical double; this is
// what makes to_text()/load_scenario() an exact round trip.
std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_point(const Point3& p) {
  return format_double(p.x()) + " " + format_double(p.y()) + " " +
         format_double(p.z());
}

double parse_double_field(const std::string& value, int line,
                          const std::string& key) {
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size()) {
    fail_line(line, "field '" + key + "': cannot parse number '" + value + "'");
  }
  if (errno == ERANGE && std::fabs(v) == HUGE_VAL) {
    fail_line(line, "field '" + key + "': value out of range");
  }
  return v;
}

std::int64_t parse_int_field(const std::string& value, int line,
                             const std::string& key) {
  errno = 0;
  char* end = nullptr;
  long long v = std::strtoll(value.c_str(), &end, 10);
  if (value.empty() || end != value.c_str() + value.size() ||
      errno == ERANGE) {
    fail_line(line, "field '" + key + "': cannot parse integer '" + value +
                        "'");
  }
  return static_cast<std::int64_t>(v);
}

int parse_int32_field(const std::string& value, int line,
                      const std::string& key) {
  std::int64_t v = parse_int_field(value, line, key);
  if (v < std::numeric_limits<int>::min() ||
      v > std::numeric_limits<int>::max()) {
    fail_line(line, "field '" + key + "': value out of range");
  }
  return static_cast<int>(v);
}

bool parse_bool_field(const std::string& value, int line,
                      const std::string& key) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  fail_line(line, "field '" + key + "': expected true or false, got '" +
                      value + "'");
}

Point3 parse_point_field(const std::string& value, int line,
                         const std::string& key) {
  std::istringstream in(value);
  double x = 0.0, y = 0.0, z = 0.0;
  std::string rest;
  if (!(in >> x >> y >> z) || (in >> rest)) {
    fail_line(line, "field '" + key + "': expected three coordinates, got '" +
                        value + "'");
  }
  return Point3{x, y, z};
}

// Validates a model name early so a bad config fails at load time with a
// line number instead of deep inside resolve().
void check_los_name(const std::string& value, int line) {
  try {
    (void)named_los_model(value);
  } catch (const ScenarioError& e) {
    fail_line(line, e.what());
  }
}

void check_path_loss_name(const std::string& value, int line) {
  try {
    (void)named_path_loss_model(value);
  } catch (const ScenarioError& e) {
    fail_line(line, e.what());
  }
}

}  // namespace

PathLossModel named_path_loss_model(const std::string& name) {
  // Urban-microcell coefficient sets for ground and aerial terminals plus
  // free space. The height slope bh only matters for the aerial sets.
  if (name == "umi-los") return PathLossModel{32.4, 21.0, 0.0, 20.0};
  if (name == "umi-nlos") return PathLossModel{22.4, 35.3, 0.0, 21.3};
  if (name == "umi-av-los") return PathLossModel{30.9, 22.25, -0.5, 20.0};
  if (name == "umi-av-nlos") return PathLossModel{32.4, 43.2, -7.6, 20.0};
  if (name == "friis") return PathLossModel{32.45, 20.0, 0.0, 20.0};
  if (name.rfind("custom:", 0) == 0) {
    std::vector<double> c =
        parse_coeffs(name.substr(7), "path loss model '" + name + "'");
    if (c.size() != 4) {
      throw ScenarioError("path loss model '" + name +
                          "' needs custom:A,B,Bh,C");
    }
    return PathLossModel{c[0], c[1], c[2], c[3]};
  }
  throw ScenarioError("unknown path loss model '" + name + "'");
}

LosModel named_los_model(const std::string& name) {
  if (name == "umi") return LosModel{};
  if (name == "umi-av") {
    LosModel m;
    m.d1_log = 294.05;
    m.d1_off = -432.94;
    m.d1_min = 18.0;
    m.p1_log = 233.98;
    m.p1_off = -0.95;
    m.h_breakpoint = 22.5;
    return m;
  }
  if (name.rfind("pinned:", 0) == 0) {
    std::vector<double> c =
        parse_coeffs(name.substr(7), "LOS model '" + name + "'");
    if (c.size() != 1 || !(c[0] >= 0.0 && c[0] <= 1.0)) {
      throw ScenarioError("LOS model '" + name +
                          "' needs pinned:p with p in [0, 1]");
    }
    LosModel m;
    m.kind = LosModel::Kind::Pinned;
    m.pinned = c[0];
    return m;
  }
  if (name.rfind("custom:", 0) == 0) {
    std::vector<double> c =
        parse_coeffs(name.substr(7), "LOS model '" + name + "'");
    if (c.size() != 2 || !(c[0] >= 0.0) || !(c[1] > 0.0)) {
      throw ScenarioError("LOS model '" + name +
                          "' needs custom:d1,p1 with d1 >= 0 and p1 > 0");
    }
    LosModel m;
    m.d1_off = c[0];
    m.d1_min = c[0];
    m.p1_off = c[1];
    return m;
  }
  throw ScenarioError("unknown LOS model '" + name + "'");
}

ScenarioConfig load_scenario(const std::string& text) {
  ScenarioConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail_line(lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "geometry" && section != "radio" && section != "aging" &&
          section != "env" && section != "bs" && section != "ris") {
        fail_line(lineno, "unknown section [" + section + "]");
      }
      continue;
    }

    std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail_line(lineno, "expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail_line(lineno, "expected 'key = value'");
    if (section.empty()) {
      fail_line(lineno, "key '" + key + "' appears before any section header");
    }

    if (section == "geometry") {
      if (key == "bs") {
        cfg.geometry.bs = parse_point_field(value, lineno, key);
      } else if (key == "ris") {
        cfg.geometry.ris = parse_point_field(value, lineno, key);
      } else if (key == "uav") {
        cfg.geometry.uav = parse_point_field(value, lineno, key);
      } else if (key == "gue") {
        cfg.geometry.gue = parse_point_field(value, lineno, key);
      } else {
        fail_line(lineno, "unknown key '" + key + "' in section [geometry]");
      }
    } else if (section == "radio") {
      if (key == "carrier_freq_hz") {
        cfg.radio.carrier_freq_hz = parse_double_field(value, lineno, key);
      } else if (key == "bandwidth_hz") {
        cfg.radio.bandwidth_hz = parse_double_field(value, lineno, key);
      } else if (key == "noise_density_dbm_hz") {
        cfg.radio.noise_density_dbm_hz =
            parse_double_field(value, lineno, key);
      } else if (key == "noise_figure_db") {
        cfg.radio.noise_figure_db = parse_double_field(value, lineno, key);
      } else if (key == "tx_power_bs_dbm") {
        cfg.radio.tx_power_bs_dbm = parse_double_field(value, lineno, key);
      } else if (key == "tx_power_uav_dbm") {
        cfg.radio.tx_power_uav_dbm = parse_double_field(value, lineno, key);
      } else if (key == "sampling_period_s") {
        cfg.radio.sampling_period_s = parse_double_field(value, lineno, key);
      } else {
        fail_line(lineno, "unknown key '" + key + "' in section [radio]");
      }
    } else if (section == "aging") {
      if (key == "uav_speed_mps") {
        cfg.aging.uav_speed_mps = parse_double_field(value, lineno, key);
      } else if (key == "sample_index") {
        cfg.aging.sample_index = parse_int_field(value, lineno, key);
      } else if (key == "estimate_index") {
        cfg.aging.estimate_index = parse_int_field(value, lineno, key);
      } else if (key == "rho") {
        cfg.aging.has_rho_override = true;
        cfg.aging.rho_override = parse_double_field(value, lineno, key);
      } else {
        fail_line(lineno, "unknown key '" + key + "' in section [aging]");
      }
    } else if (section == "env") {
      if (key == "k0_db") {
        cfg.env.k0_db = parse_double_field(value, lineno, key);
      } else if (key == "kpi_db") {
        cfg.env.kpi_db = parse_double_field(value, lineno, key);
      } else if (key == "los_model_g2a") {
        check_los_name(value, lineno);
        cfg.env.los_model_g2a = value;
      } else if (key == "los_model_a2g") {
        check_los_name(value, lineno);
        cfg.env.los_model_a2g = value;
      } else if (key == "los_model_rd") {
        check_los_name(value, lineno);
        cfg.env.los_model_rd = value;
      } else if (key == "pathloss_los_g2a") {
        check_path_loss_name(value, lineno);
        cfg.env.pathloss_los_g2a = value;
      } else if (key == "pathloss_nlos_g2a") {
        check_path_loss_name(value, lineno);
        cfg.env.pathloss_nlos_g2a = value;
      } else if (key == "pathloss_los_a2g") {
        check_path_loss_name(value, lineno);
        cfg.env.pathloss_los_a2g = value;
      } else if (key == "pathloss_nlos_a2g") {
        check_path_loss_name(value, lineno);
        cfg.env.pathloss_nlos_a2g = value;
      } else if (key == "pathloss_los_rd") {
        check_path_loss_name(value, lineno);
        cfg.env.pathloss_los_rd = value;
      } else if (key == "pathloss_nlos_rd") {
        check_path_loss_name(value, lineno);
        cfg.env.pathloss_nlos_rd = value;
      } else {
        fail_line(lineno, "unknown key '" + key + "' in section [env]");
      }
    } else if (section == "bs") {
      if (key == "antennas") {
        cfg.bs.antennas = parse_int32_field(value, lineno, key);
      } else {
        fail_line(lineno, "unknown key '" + key + "' in section [bs]");
      }
    } else {  // ris
      if (key == "elements") {
        cfg.ris.elements = parse_int32_field(value, lineno, key);
      } else if (key == "rd_los") {
        cfg.ris.rd_los = parse_bool_field(value, lineno, key);
      } else if (key == "phase_bits") {
        cfg.ris.phase_bits = parse_int32_field(value, lineno, key);
      } else {
        fail_line(lineno, "unknown key '" + key + "' in section [ris]");
      }
    }
  }
  return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str());
}

std::string to_text(const ScenarioConfig& cfg) {
  std::string out;
  out += "[geometry]\n";
  out += "bs = " + format_point(cfg.geometry.bs) + "\n";
  out += "ris = " + format_point(cfg.geometry.ris) + "\n";
  out += "uav = " + format_point(cfg.geometry.uav) + "\n";
  out += "gue = " + format_point(cfg.geometry.gue) + "\n";
  out += "\n[radio]\n";
  out += "carrier_freq_hz = " + format_double(cfg.radio.carrier_freq_hz) +
         "\n";
  out += "bandwidth_hz = " + format_double(cfg.radio.bandwidth_hz) + "\n";
  out += "noise_density_dbm_hz = " +
         format_double(cfg.radio.noise_density_dbm_hz) + "\n";
  out += "noise_figure_db = " + format_double(cfg.radio.noise_figure_db) +
         "\n";
  out += "tx_power_bs_dbm = " + format_double(cfg.radio.tx_power_bs_dbm) +
         "\n";
  out += "tx_power_uav_dbm = " + format_double(cfg.radio.tx_power_uav_dbm) +
         "\n";
  out += "sampling_period_s = " + format_double(cfg.radio.sampling_period_s) +
         "\n";
  out += "\n[aging]\n";
  out += "uav_speed_mps = " + format_double(cfg.aging.uav_speed_mps) + "\n";
  out += "sample_index = " + std::to_string(cfg.aging.sample_index) + "\n";
  out += "estimate_index = " + std::to_string(cfg.aging.estimate_index) + "\n";
  if (cfg.aging.has_rho_override) {
    out += "rho = " + format_double(cfg.aging.rho_override) + "\n";
  }
  out += "\n[env]\n";
  out += "k0_db = " + format_double(cfg.env.k0_db) + "\n";
  out += "kpi_db = " + format_double(cfg.env.kpi_db) + "\n";
  out += "los_model_g2a = " + cfg.env.los_model_g2a + "\n";
  out += "los_model_a2g = " + cfg.env.los_model_a2g + "\n";
  out += "los_model_rd = " + cfg.env.los_model_rd + "\n";
  out += "pathloss_los_g2a = " + cfg.env.pathloss_los_g2a + "\n";
  out += "pathloss_nlos_g2a = " + cfg.env.pathloss_nlos_g2a + "\n";
  out += "pathloss_los_a2g = " + cfg.env.pathloss_los_a2g + "\n";
  out += "pathloss_nlos_a2g = " + cfg.env.pathloss_nlos_a2g + "\n";
  out += "pathloss_los_rd = " + cfg.env.pathloss_los_rd + "\n";
  out += "pathloss_nlos_rd = " + cfg.env.pathloss_nlos_rd + "\n";
  out += "\n[bs]\n";
  out += "antennas = " + std::to_string(cfg.bs.antennas) + "\n";
  out += "\n[ris]\n";
  out += "elements = " + std::to_string(cfg.ris.elements) + "\n";
  out += std::string("rd_los = ") + (cfg.ris.rd_los ? "true" : "false") +
         "\n";
  out += "phase_bits = " + std::to_string(cfg.ris.phase_bits) + "\n";
  return out;
}

std::string config_hash(const ScenarioConfig& cfg) {
  std::string text = to_text(cfg);
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

double elevation_angle(const Point3& a, const Point3& b) {
  double dx = b.x() - a.x();
  double dy = b.y() - a.y();
  double dz = b.z() - a.z();
  if (dx == 0.0 && dy == 0.0 && dz == 0.0) {
    throw ScenarioError("elevation angle of coincident points is undefined");
  }
  return std::atan2(dz, std::hypot(dx, dy));
}

double rician_k(double theta_rad, double k0_db, double kpi_db) {
  if (!(theta_rad >= 0.0 && theta_rad <= kPi / 2)) {
    throw ScenarioError("elevation angle must lie in [0, pi/2]");
  }
  double k0 = std::pow(10.0, k0_db / 10.0);
  double kpi = std::pow(10.0, kpi_db / 10.0);
  return k0 * std::exp((2.0 * theta_rad / kPi) * std::log(kpi / k0));
}

double temporal_correlation(double speed_mps, double carrier_freq_hz,
                            std::int64_t lag_samples,
                            double sampling_period_s) {
  if (!(speed_mps >= 0.0)) {
    throw ScenarioError("speed must be nonnegative");
  }
  if (!(carrier_freq_hz > 0.0) || !(sampling_period_s > 0.0)) {
    throw ScenarioError("carrier frequency and sampling period must be "
                        "positive");
  }
  double fd = speed_mps * carrier_freq_hz / kSpeedOfLight;
  double arg = 2.0 * kPi * fd * static_cast<double>(lag_samples) *
               sampling_period_s;
  return specfun::bessel_j0(arg);
}

double noise_power_dbm(double bandwidth_hz, double noise_density_dbm_hz,
                       double noise_figure_db) {
  if (!(bandwidth_hz > 0.0)) {
    throw ScenarioError("bandwidth must be positive");
  }
  return noise_density_dbm_hz + 10.0 * std::log10(bandwidth_hz) +
         noise_figure_db;
}

double path_loss_linear(const PathLossModel& m, double d3d_m, double h_ut_m,
                        double carrier_freq_hz) {
  if (!(d3d_m > 0.0)) throw ScenarioError("path loss needs a positive range");
  if (!(h_ut_m > 0.0)) {
    throw ScenarioError("path loss needs a positive terminal height");
  }
  if (!(carrier_freq_hz > 0.0)) {
    throw ScenarioError("path loss needs a positive carrier frequency");
  }
  double pl_db = m.a + (m.b + m.bh * std::log10(h_ut_m)) * std::log10(d3d_m) +
                 m.c * std::log10(carrier_freq_hz / 1e9);
  double gain = std::pow(10.0, -pl_db / 10.0);
  return gain > 1.0 ? 1.0 : gain;
}

double los_probability(const LosModel& m, double d2d_m, double h_ut_m) {
  if (m.kind == LosModel::Kind::Pinned) {
    if (!(m.pinned >= 0.0 && m.pinned <= 1.0)) {
      throw ScenarioError("pinned LOS probability must lie in [0, 1]");
    }
    return m.pinned;
  }
  if (!(d2d_m >= 0.0)) {
    throw ScenarioError("LOS probability needs a nonnegative ground distance");
  }
  double d1 = 0.0;
  double p1 = 0.0;
  if (m.h_breakpoint > 0.0 && !(h_ut_m > m.h_breakpoint)) {
    // Below the aerial breakpoint the ground-UE coefficients apply.
    d1 = 18.0;
    p1 = 36.0;
  } else {
    double lh = 0.0;
    if (m.d1_log != 0.0 || m.p1_log != 0.0) {
      if (!(h_ut_m > 0.0)) {
        throw ScenarioError(
            "height-dependent LOS model needs a positive terminal height");
      }
      lh = std::log10(h_ut_m);
    }
    d1 = std::max(m.d1_log * lh + m.d1_off, m.d1_min);
    p1 = m.p1_log * lh + m.p1_off;
  }
  if (!(p1 > 0.0)) {
    throw ScenarioError("LOS probability decay scale must be positive");
  }
  if (d2d_m <= d1) return 1.0;
  double ratio = d1 / d2d_m;
  return ratio + std::exp(-d2d_m / p1) * (1.0 - ratio);
}

double mean_snr(double tx_power_dbm, double path_gain_linear,
                double noise_power_dbm) {
  if (!(path_gain_linear >= 0.0)) {
    throw ScenarioError("path gain must be nonnegative");
  }
  return std::pow(10.0, (tx_power_dbm - noise_power_dbm) / 10.0) *
         path_gain_linear;
}

Resolved resolve(const ScenarioConfig& cfg) {
  if (cfg.bs.antennas < 1) {
    throw ScenarioError("bs.antennas must be at least 1");
  }
  if (cfg.ris.elements < 1) {
    throw ScenarioError("ris.elements must be at least 1");
  }
  if (cfg.ris.phase_bits < 0) {
    throw ScenarioError("ris.phase_bits must be nonnegative");
  }
  if (!(cfg.radio.carrier_freq_hz > 0.0) || !(cfg.radio.bandwidth_hz > 0.0) ||
      !(cfg.radio.sampling_period_s > 0.0)) {
    throw ScenarioError(
        "radio carrier frequency, bandwidth and sampling period must be "
        "positive");
  }
  if (!(cfg.aging.uav_speed_mps >= 0.0)) {
    throw ScenarioError("aging.uav_speed_mps must be nonnegative");
  }
  if (cfg.aging.estimate_index > cfg.aging.sample_index) {
    throw ScenarioError(
        "aging.estimate_index must not exceed aging.sample_index");
  }
  if (cfg.aging.has_rho_override &&
      !(std::fabs(cfg.aging.rho_override) <= 1.0)) {
    throw ScenarioError("aging.rho override must lie in [-1, 1]");
  }

  Resolved r;
  r.cfg = cfg;
  r.noise_uav_dbm =
      noise_power_dbm(cfg.radio.bandwidth_hz, cfg.radio.noise_density_dbm_hz,
                      cfg.radio.noise_figure_db);
  r.noise_gue_dbm = r.noise_uav_dbm;
  if (cfg.aging.has_rho_override) {
    r.rho = cfg.aging.rho_override;
  } else {
    r.rho = temporal_correlation(
        cfg.aging.uav_speed_mps, cfg.radio.carrier_freq_hz,
        cfg.aging.sample_index - cfg.aging.estimate_index,
        cfg.radio.sampling_period_s);
  }

  auto make_link = [&cfg](const Point3& from, const Point3& to, double h_ut,
                          const std::string& los_name,
                          const std::string& pl_los_name,
                          const std::string& pl_nlos_name) {
    LinkState s;
    s.d2d = std::hypot(to.x() - from.x(), to.y() - from.y());
    s.d3d = (to - from).norm();
    s.elevation_rad =
        std::min(std::fabs(elevation_angle(from, to)), kPi / 2);
    s.kappa_los = rician_k(s.elevation_rad, cfg.env.k0_db, cfg.env.kpi_db);
    s.p_los = los_probability(named_los_model(los_name), s.d2d, h_ut);
    s.gain_los = path_loss_linear(named_path_loss_model(pl_los_name), s.d3d,
                                  h_ut, cfg.radio.carrier_freq_hz);
    s.gain_nlos = path_loss_linear(named_path_loss_model(pl_nlos_name), s.d3d,
                                   h_ut, cfg.radio.carrier_freq_hz);
    return s;
  };

  const GeometryConfig& g = cfg.geometry;
  r.su = make_link(g.bs, g.uav, g.uav.z(), cfg.env.los_model_g2a,
                   cfg.env.pathloss_los_g2a, cfg.env.pathloss_nlos_g2a);
  r.ur = make_link(g.uav, g.ris, g.uav.z(), cfg.env.los_model_a2g,
                   cfg.env.pathloss_los_a2g, cfg.env.pathloss_nlos_a2g);
  r.rd = make_link(g.ris, g.gue, g.gue.z(), cfg.env.los_model_rd,
                   cfg.env.pathloss_los_rd, cfg.env.pathloss_nlos_rd);

  r.kappa_rd = cfg.ris.rd_los ? r.rd.kappa_los : 0.0;
  r.gain_rd = cfg.ris.rd_los ? r.rd.gain_los : r.rd.gain_nlos;

  r.gbar_su_los =
      mean_snr(cfg.radio.tx_power_bs_dbm, r.su.gain_los, r.noise_uav_dbm);
  r.gbar_su_nlos =
      mean_snr(cfg.radio.tx_power_bs_dbm, r.su.gain_nlos, r.noise_uav_dbm);
  r.gbar_a2g_los = mean_snr(cfg.radio.tx_power_uav_dbm,
                            r.ur.gain_los * r.gain_rd, r.noise_gue_dbm);
  r.gbar_a2g_nlos = mean_snr(cfg.radio.tx_power_uav_dbm,
                             r.ur.gain_nlos * r.gain_rd, r.noise_gue_dbm);
  return r;
}

}  // namespace rislink::scenario
