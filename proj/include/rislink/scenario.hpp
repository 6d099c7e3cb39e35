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

#ifndef RISLINK_SCENARIO_HPP
#define RISLINK_SCENARIO_HPP

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>
#include <string>

// Deployment geometry, radio bookkeeping and the propagation submodels
// (path loss, LOS probability, elevation-driven Rician K factor, Doppler
// decorrelation). A ScenarioConfig is a plain value loaded from a sectioned
// key-value text document; resolve() turns it into the per-link quantities
// the distribution and simulation layers consume.

namespace rislink::scenario {

using Point3 = Eigen::Vector3d;  // meters; z is height above ground

struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- propagation submodels -------------------------------------------------

// Log-distance path loss: PL_dB = A + (B + Bh log10(h_ut)) log10(d3d_m)
//                                 + C log10(fc_GHz).
// Linear gain 10^(-PL/10), clamped to at most 1.
struct PathLossModel {
  double a = 0.0;
  double b = 0.0;
  double bh = 0.0;  // height-dependent distance-slope term
  double c = 0.0;
};

// LOS probability, 3GPP-style: 1 for d2d <= d1, otherwise
// d1/d2d + exp(-d2d/p1) (1 - d1/d2d), with d1, p1 optionally log-height
// dependent. kind = Pinned bypasses the law with a constant.
struct LosModel {
  enum class Kind { Law, Pinned };
  Kind kind = Kind::Law;
  double pinned = 1.0;
  double d1_log = 0.0;  // d1 = max(d1_log*log10(h_ut) + d1_off, d1_min)
  double d1_off = 18.0;
  double d1_min = 18.0;
  double p1_log = 0.0;  // p1 = p1_log*log10(h_ut) + p1_off
  double p1_off = 36.0;
  // Above this aerial height the height-dependent coefficients apply; below,
  // the ground-UE fallback (d1=18, p1=36). Only meaningful for aerial sets.
  double h_breakpoint = 0.0;
};

// Named coefficient sets shipped with the library. Path loss: "umi-los",
// "umi-nlos", "umi-av-los", "umi-av-nlos", "friis", or an inline
// "custom:A,B,Bh,C". LOS probability: "umi", "umi-av", a fixed-coefficient
// "custom:d1,p1", or "pinned:p". Throws ScenarioError for unknown names.
PathLossModel named_path_loss_model(const std::string& name);
LosModel named_los_model(const std::string& name);

// ---- config ----------------------------------------------------------------

struct GeometryConfig {
  Point3 bs{0.0, 0.0, 10.0};
  Point3 ris{150.0, 0.0, 25.0};
  Point3 uav{100.0, 0.0, 300.0};
  Point3 gue{200.0, 0.0, 1.5};
};

struct RadioConfig {
  double carrier_freq_hz = 2e9;
  double bandwidth_hz = 1e7;
  double noise_density_dbm_hz = -174.0;
  double noise_figure_db = 5.0;
  double tx_power_bs_dbm = 0.0;
  double tx_power_uav_dbm = 0.0;
  double sampling_period_s = 1e-7;  // 1/bandwidth by default
};

struct AgingConfig {
  double uav_speed_mps = 0.0;
  std::int64_t sample_index = 7172;   // t
  std::int64_t estimate_index = 0;    // tau; correlation uses the lag t - tau
  bool has_rho_override = false;      // pin rho directly instead of J0(.)
  double rho_override = 1.0;
};

struct EnvConfig {
  double k0_db = 0.0;    // K factor at zero elevation
  double kpi_db = 10.0;  // K factor at zenith
  std::string los_model_g2a = "umi-av";
  std::string los_model_a2g = "umi-av";
  std::string los_model_rd = "umi";
  std::string pathloss_los_g2a = "umi-av-los";
  std::string pathloss_nlos_g2a = "umi-av-nlos";
  std::string pathloss_los_a2g = "umi-av-los";
  std::string pathloss_nlos_a2g = "umi-av-nlos";
  std::string pathloss_los_rd = "umi-los";
  std::string pathloss_nlos_rd = "umi-nlos";
};

struct BsConfig {
  int antennas = 4;  // M
};

struct RisConfig {
  int elements = 400;    // N
  bool rd_los = true;    // pinned LOS state of the RIS-to-ground link
  int phase_bits = 0;    // 0 = continuous phase control
};

struct ScenarioConfig {
  GeometryConfig geometry;
  RadioConfig radio;
  AgingConfig aging;
  EnvConfig env;
  BsConfig bs;
  RisConfig ris;
};

// Parse / serialize the sectioned key-value text form. load_scenario throws
// ScenarioError naming the offending line and field; load(to_text(cfg))
// reproduces cfg exactly.
ScenarioConfig load_scenario(const std::string& text);
ScenarioConfig load_scenario_file(const std::string& path);
std::string to_text(const ScenarioConfig& cfg);

// FNV-1a hash of the canonical serialized form, as a fixed-width hex string.
std::string config_hash(const ScenarioConfig& cfg);

// ---- elemental operations --------------------------------------------------

// Signed elevation of b as seen from a: atan2(b.z - a.z, horizontal distance),
// in [-pi/2, pi/2]. Coincident points are an error.
double elevation_angle(const Point3& a, const Point3& b);

// Exponential elevation interpolation between the K factors at 0 and pi/2,
// theta in [0, pi/2], returns the linear (not dB) K factor.
double rician_k(double theta_rad, double k0_db, double kpi_db);

// Doppler autocorrelation J0(2 pi fd n Ts) with fd = v fc / c.
double temporal_correlation(double speed_mps, double carrier_freq_hz,
                            std::int64_t lag_samples, double sampling_period_s);

// Thermal noise power in dBm over bandwidth_hz with the given noise figure.
double noise_power_dbm(double bandwidth_hz, double noise_density_dbm_hz,
                       double noise_figure_db);

double path_loss_linear(const PathLossModel& m, double d3d_m, double h_ut_m,
                        double carrier_freq_hz);
double los_probability(const LosModel& m, double d2d_m, double h_ut_m);

// Mean received SNR (linear) from transmit power, linear path gain(s) and
// noise power.
double mean_snr(double tx_power_dbm, double path_gain_linear,
                double noise_power_dbm);

// ---- resolution ------------------------------------------------------------

// Per-link resolved quantities. kappa_los comes from the elevation law;
// the NLOS state always has kappa = 0.
struct LinkState {
  double d2d = 0.0;
  double d3d = 0.0;
  double elevation_rad = 0.0;  // clamped to [0, pi/2]
  double kappa_los = 0.0;      // linear K factor under LOS
  double p_los = 1.0;
  double gain_los = 0.0;   // linear path gain
  double gain_nlos = 0.0;
};

struct Resolved {
  ScenarioConfig cfg;
  LinkState su;  // base station -> UAV       (first hop)
  LinkState ur;  // UAV -> RIS                (second hop, aged estimate)
  LinkState rd;  // RIS -> ground user        (LOS state pinned by config)
  double noise_uav_dbm = 0.0;
  double noise_gue_dbm = 0.0;
  double rho = 1.0;          // common Doppler correlation at lag t - tau
  double kappa_rd = 0.0;     // K factor of the pinned R-D state
  double gain_rd = 0.0;      // linear gain of the pinned R-D state
  // Mean per-hop SNRs by LOS state of the aged hop.
  double gbar_su_los = 0.0;
  double gbar_su_nlos = 0.0;
  double gbar_a2g_los = 0.0;   // P_U * l_UR(state) * l_RD / noise at user
  double gbar_a2g_nlos = 0.0;
};

Resolved resolve(const ScenarioConfig& cfg);

}  // namespace rislink::scenario

#endif  // RISLINK_SCENARIO_HPP
