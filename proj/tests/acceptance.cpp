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

// Acceptance gate for the shipped guarantees. Each numbered line exercises
// one release criterion end to end against the library (and, for the last
// one, the installed binary) and prints PASS or FAIL with the measured
// statistic. The process exits nonzero if any line fails. Runs in roughly
// ten minutes on one desktop core; the long poles are the million-draw
// distribution checks and the ten-million-draw outage check.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "rislink/dists.hpp"
#include "rislink/linkperf.hpp"
#include "rislink/mcsim.hpp"
#include "rislink/quadrature.hpp"
#include "rislink/scenario.hpp"
#include "rislink/specfun.hpp"
#include "support/oracles.hpp"

namespace {

namespace fs = std::filesystem;
using namespace rislink;

// One master seed for every stochastic criterion. The collapse criterion
// relies on it being shared across element counts: with one seed the draws
// for a larger array extend the draws for a smaller one, so the measured KS
// gaps differ only by the deterministic finite-N terms, not by resampling
// noise.
constexpr std::uint64_t kSeed = 12345;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

scenario::ScenarioConfig make_config(double rho, int antennas, int elements,
                                     double power_dbm) {
  scenario::ScenarioConfig cfg;
  cfg.aging.has_rho_override = true;
  cfg.aging.rho_override = rho;
  cfg.bs.antennas = antennas;
  cfg.ris.elements = elements;
  cfg.radio.tx_power_bs_dbm = power_dbm;
  cfg.radio.tx_power_uav_dbm = power_dbm;
  return cfg;
}

struct Line {
  bool pass = false;
  std::string detail;
};

// ---- 1: first-hop law --------------------------------------------------------

Line first_hop_law() {
  bool pass = true;
  std::string d;
  for (int m : {1, 2, 4}) {
    const auto r = scenario::resolve(make_config(0.5, m, 400, 0.0));
    const auto h = linkperf::hop_laws(r);
    const auto batch = mcsim::sample_g2a(mcsim::g2a_spec_from(r), 1000000,
                                         kSeed);
    const double x_hi =
        *std::max_element(batch.snr.begin(), batch.snr.end()) * 1.0000001;
    const quad::CdfGrid cdf(
        [&](double x) {
          return dists::g2a_pdf_mixture(h.g2a_los, h.g2a_nlos, h.g2a_w, x);
        },
        x_hi, 20000);
    const double ks = mcsim::ks_statistic(batch.snr, cdf);
    pass = pass && ks < 0.01;
    d += " KS(M=" + std::to_string(m) + ")=" + fmt(ks);
  }
  return {pass, "limit 0.01," + d};
}

// ---- 2: RIS-hop series law ---------------------------------------------------

Line ris_hop_series() {
  bool pass = true;
  std::string d;
  for (int n : {4, 16}) {
    const auto r = scenario::resolve(make_config(0.5, 4, n, 0.0));
    const auto h = linkperf::hop_laws(r);
    const auto batch = mcsim::sample_a2g(mcsim::a2g_spec_from(r), 1000000,
                                         kSeed);
    // The series is fed gain moments estimated on independent streams; the
    // closed-form moment bounds understate the spread at small N.
    const auto mom_los = mcsim::estimate_chi_moments(
        n, r.ur.kappa_los, r.kappa_rd, r.rho, 1000000, kSeed,
        mcsim::kStreamChi);
    const auto mom_nlos = mcsim::estimate_chi_moments(
        n, 0.0, r.kappa_rd, r.rho, 1000000, kSeed, mcsim::kStreamChi + 1);
    const dists::A2gSeries los(dists::make_a2g_params_from_moments(
        n, r.ur.kappa_los, r.ur.kappa_los, r.kappa_rd, r.rho,
        r.gbar_a2g_los, mom_los));
    const dists::A2gSeries nlos(dists::make_a2g_params_from_moments(
        n, 0.0, 0.0, r.kappa_rd, r.rho, r.gbar_a2g_nlos, mom_nlos));
    const double p = h.a2g_w.p_los;
    const double x_hi =
        *std::max_element(batch.snr.begin(), batch.snr.end()) * 1.0000001;
    const quad::CdfGrid cdf(
        [&](double x) {
          if (!(x > 0.0)) return 0.0;
          double v = 0.0;
          if (p > 0.0) v += p * los(x).value;
          if (p < 1.0) v += (1.0 - p) * nlos(x).value;
          return v;
        },
        x_hi, 8000);
    const double ks = mcsim::ks_statistic(batch.snr, cdf);
    pass = pass && ks < 0.02;
    d += " KS(N=" + std::to_string(n) + ")=" + fmt(ks);
  }
  return {pass, "limit 0.02," + d};
}

// ---- 3: large-array collapse ---------------------------------------------------

Line large_array_collapse() {
  bool pass = true;
  std::string d;
  std::vector<double> kss;
  for (int n : {64, 256, 400}) {
    const auto r = scenario::resolve(make_config(0.5, 4, n, 0.0));
    const auto h = linkperf::hop_laws(r);
    const auto batch = mcsim::sample_a2g(mcsim::a2g_spec_from(r), 1000000,
                                         kSeed);
    const auto law_los = dists::a2g_large_n_law(h.a2g_los);
    const auto law_nlos = dists::a2g_large_n_law(h.a2g_nlos);
    if (law_los.point_mass || law_nlos.point_mass) {
      return {false, "collapse law degenerated to a point mass"};
    }
    const double p = h.a2g_w.p_los;
    const double ks = mcsim::ks_statistic(batch.snr, [&](double x) {
      double v = 0.0;
      if (p > 0.0) v += p * dists::snccs_cdf(law_los.law, x);
      if (p < 1.0) v += (1.0 - p) * dists::snccs_cdf(law_nlos.law, x);
      return v;
    });
    kss.push_back(ks);
    pass = pass && ks < 0.02;
    d += " KS(N=" + std::to_string(n) + ")=" + fmt(ks);
  }
  for (std::size_t i = 1; i < kss.size(); ++i) {
    pass = pass && kss[i] <= kss[i - 1];
  }
  return {pass, "limit 0.02 and nonincreasing," + d};
}

// ---- 4: transform inversion ----------------------------------------------------

Line transform_inversion() {
  mcsim::Rng rng(kSeed, 41);
  double worst = 0.0;
  for (int set = 0; set < 5; ++set) {
    dists::G2aParams g;
    g.m_antennas = 1 + static_cast<int>(rng.uniform() * 8.0);
    if (g.m_antennas > 8) g.m_antennas = 8;
    g.kappa = 0.3 + 7.7 * rng.uniform();
    g.rho = 0.1 + 0.8 * rng.uniform();
    g.gbar = 0.5 + 19.5 * rng.uniform();
    const double mean =
        g.gbar * (g.m_antennas - (g.m_antennas - 1) * g.rho_bar_sq());
    for (int i = 1; i <= 20; ++i) {
      const double x = mean * 0.2 * i;
      const double inv = quad::inverse_laplace(
          [&](std::complex<double> s) { return dists::g2a_laplace_los(g, s); },
          x);
      const double ref = dists::g2a_pdf_los(g, x);
      const double rel =
          std::abs(inv - ref) / std::max({std::abs(ref), std::abs(inv),
                                          1e-300});
      worst = std::max(worst, rel);
    }
  }
  return {worst < 1e-5,
          "max_rel=" + fmt(worst) + " limit 1e-05, 5 parameter sets x 20 pts"};
}

// ---- 5: moment matching ---------------------------------------------------------

Line moment_matching() {
  mcsim::Rng rng(kSeed, 51);
  int solved = 0;
  int attempts = 0;
  double max_rel = 0.0;
  bool sane = true;
  while (solved < 10000 && attempts < 100000) {
    ++attempts;
    const double mu = 0.5 + 9.5 * rng.uniform();
    const double sigma2 = 1.0 + rng.uniform() * 0.25 * mu * mu;
    dists::SnccsParams p;
    try {
      p = dists::moment_match_snccs(mu, sigma2);
    } catch (const std::domain_error&) {
      continue;  // moments outside the representable family
    }
    ++solved;
    double lhs[3];
    double rhs[3];
    dists::snccs_system_lhs(p, lhs);
    dists::moment_match_rhs(mu, sigma2, rhs);
    for (int k = 0; k < 3; ++k) {
      max_rel = std::max(max_rel, std::abs(lhs[k] - rhs[k]) /
                                      std::max(1.0, std::abs(rhs[k])));
    }
    sane = sane && p.omega > 0.0 && p.k > 0.0 && p.lambda >= 0.0;
  }
  const dists::SnccsParams unit = dists::moment_match_snccs(0.0, 1.0);
  const bool edge = unit.omega == 1.0 && unit.k == 1.0 && unit.lambda == 0.0;
  const bool pass = solved == 10000 && max_rel < 1e-10 && sane && edge;
  return {pass, "max_rel_residual=" + fmt(max_rel) +
                    " limit 1e-10, solved=" + std::to_string(solved) +
                    ", unit moments map to (1,1,0): " +
                    (edge ? "yes" : "no")};
}

// ---- 6: outage planning ---------------------------------------------------------

Line outage_planning() {
  const auto r = scenario::resolve(make_config(0.5, 4, 400, 33.0));
  const auto h = linkperf::hop_laws(r);
  const std::size_t n = 10000000;
  const auto bg = mcsim::sample_g2a(mcsim::g2a_spec_from(r), n, kSeed);
  const auto ba = mcsim::sample_a2g(mcsim::a2g_spec_from(r), n, kSeed);
  bool pass = true;
  std::string d;
  for (double level : {1e-2, 1e-3}) {
    const auto th = linkperf::target_threshold(h, level);
    const auto est = mcsim::estimate_outage(bg, ba, th.gamma_hat);
    pass = pass && est.p >= level / 3.0 && est.p <= 3.0 * level;
    d += " op(L=" + fmt(level) + ")=" + fmt(est.p);
  }
  const auto th4 = linkperf::target_threshold(h, 1e-4);
  const auto est4 = mcsim::estimate_outage(bg, ba, th4.gamma_hat);
  d += "; reported only: op(L=0.0001)=" + fmt(est4.p) + " +/- " +
       fmt(est4.ci_half);
  return {pass, "gate [L/3,3L] on 1e7 paired draws," + d};
}

// ---- 7: speed sweep --------------------------------------------------------------

Line speed_sweep() {
  const auto se_of = [](double v, int elements, int antennas) {
    scenario::ScenarioConfig cfg;
    cfg.radio.tx_power_bs_dbm = 33.0;
    cfg.radio.tx_power_uav_dbm = 33.0;
    cfg.aging.uav_speed_mps = v;
    cfg.ris.elements = elements;
    cfg.bs.antennas = antennas;
    const auto r = scenario::resolve(cfg);
    return linkperf::max_target_se(linkperf::hop_laws(r), 1e-4).se_max;
  };
  std::vector<double> se;
  se.reserve(201);
  for (int i = 0; i <= 200; ++i) se.push_back(se_of(0.5 * i, 400, 4));

  const std::size_t imax =
      std::max_element(se.begin(), se.end()) - se.begin();
  const bool hover = imax == 0 && se[0] > se[1];
  bool ripple = false;
  for (std::size_t i = 1; i + 1 < se.size(); ++i) {
    if (se[i + 1] > se[i] + 1e-12) ripple = true;
  }
  const double base = se[160];  // v = 80 on the half-step grid
  const double dn = std::abs(se_of(80.0, 800, 4) - base);
  const double dm = std::abs(se_of(80.0, 400, 8) - base);
  const bool saturated =
      dn <= 0.01 * (base + 1e-12) && dm <= 0.01 * (base + 1e-12);
  return {hover && ripple && saturated,
          "se(v=0)=" + fmt(se[0]) + " se(v=80)=" + fmt(base) +
              " dSE(N x2)=" + fmt(dn) + " dSE(M x2)=" + fmt(dm) +
              " hover_max=" + (hover ? "yes" : "no") +
              " ripples=" + (ripple ? "yes" : "no")};
}

// ---- 8: hardening index -----------------------------------------------------------

Line hardening() {
  const double alpha = 0.785;
  const bool exact_zero =
      linkperf::hardening_index(400, 1.0, alpha) == 0.0 &&
      linkperf::hardening_index(16, 1.0, 0.9) == 0.0;
  const std::vector<int> ladder = {1, 2, 4, 8, 16, 32, 64, 128, 256, 512,
                                   1024};
  std::vector<double> eta;
  for (int n : ladder) eta.push_back(linkperf::hardening_index(n, 0.9, alpha));
  bool decreasing = true;
  for (std::size_t i = 1; i < eta.size(); ++i) {
    decreasing = decreasing && eta[i] < eta[i - 1];
  }
  // The boundary array size: below it the index still exceeds 5 percent.
  bool below = eta[3] >= 0.05;  // N = 8
  for (std::size_t i = 4; i < eta.size(); ++i) {
    below = below && eta[i] < 0.05;  // N = 16 onward
  }
  return {exact_zero && decreasing && below,
          "eta(rho=1)=0 exact: " + std::string(exact_zero ? "yes" : "no") +
              ", eta(8)=" + fmt(eta[3]) + " eta(16)=" + fmt(eta[4]) +
              " eta(1024)=" + fmt(eta.back()) +
              " (rho=0.9, alpha=0.785), boundary N0=16"};
}

// ---- 9: special-function oracles ---------------------------------------------------

Line specfun_oracles() {
  mcsim::Rng rng(kSeed, 91);
  const auto log_uniform = [&](double lo, double hi) {
    return std::exp(std::log(lo) +
                    rng.uniform() * (std::log(hi) - std::log(lo)));
  };
  // Relative gap with a unit absolute floor, the comparison the oracle suite
  // documents (pure ratios are ill-posed at the zeros of oscillatory or
  // log-valued kernels).
  double worst = 0.0;
  const auto gap = [](double a, double b) {
    if (std::isnan(a) || std::isnan(b)) return 1.0;
    if (std::isinf(a) || std::isinf(b)) return a == b ? 0.0 : 1.0;
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
  };
  std::string d;
  bool pass = true;
  const auto sweep = [&](const char* name, int points,
                         const std::function<double()>& one) {
    double w = 0.0;
    for (int i = 0; i < points; ++i) w = std::max(w, one());
    pass = pass && w <= 1e-10;
    worst = std::max(worst, w);
    d += std::string(" ") + name + "=" + fmt(w);
  };

  sweep("j0", 10000, [&] {
    const double x = 55.0 * rng.uniform();
    return gap(specfun::bessel_j0(x), oracles::j0_integral(x));
  });
  sweep("log_i", 10000, [&] {
    const double nu = -0.9 + 64.0 * rng.uniform();
    const double x = log_uniform(1e-8, 650.0);
    return gap(specfun::log_bessel_i(nu, x), oracles::log_bessel_i(nu, x));
  });
  sweep("log_k", 10000, [&] {
    const double nu = 180.0 * rng.uniform();
    const double x = log_uniform(0.004, 700.0);
    return gap(specfun::log_bessel_k(nu, x), oracles::log_bessel_k(nu, x));
  });
  sweep("log_gamma", 10000, [&] {
    const double x = log_uniform(1e-3, 171.0);
    return gap(specfun::log_gamma(x), oracles::log_gamma(x));
  });
  sweep("gamma_p", 10000, [&] {
    const double a = log_uniform(0.3, 40.0);
    const double x = log_uniform(0.01, 70.0);
    return gap(specfun::gamma_p(a, x), oracles::gamma_p(a, x));
  });
  sweep("gamma_q", 10000, [&] {
    const double a = log_uniform(0.3, 40.0);
    const double x = log_uniform(0.01, 70.0);
    return gap(specfun::gamma_q(a, x), oracles::gamma_q(a, x));
  });
  sweep("marcum_q", 10000, [&] {
    const int m = 1 + static_cast<int>(rng.next_u64() % 9);
    const double a = 6.0 * rng.uniform();
    const double b = 11.0 * rng.uniform();
    return gap(specfun::marcum_q(m, a, b), oracles::marcum_q_bessel(m, a, b));
  });
  sweep("laguerre", 10000, [&] {
    const double x = -400.0 * rng.uniform();
    return gap(specfun::laguerre_half(x), oracles::laguerre_half(x));
  });
  sweep("gauss_q", 10000, [&] {
    const double x = -6.0 + 13.5 * rng.uniform();
    return gap(specfun::gaussian_q(x), oracles::gaussian_q(x));
  });
  // The inverse is validated through the forward quadrature oracle: feeding
  // its output back must reproduce the probability.
  sweep("gauss_q_inv", 10000, [&] {
    const double q = 0.5 * std::pow(10.0, -9.3 * rng.uniform());
    const double p = rng.uniform() < 0.5 ? q : 1.0 - q;
    return gap(oracles::gaussian_q(specfun::gaussian_q_inv(p)), p);
  });
  return {pass, "limit 1e-10 (unit-floored rel), worst=" + fmt(worst) + "," +
                    d};
}

// ---- 10: command-line determinism ---------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Line cli_determinism() {
  const fs::path root =
      fs::temp_directory_path() /
      ("rislink_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path scenario_path = root / "scenario.txt";
  {
    std::ofstream out(scenario_path);
    out << "[aging]\nrho = 0.5\n";
  }
  const std::string base = std::string(RISLINK_CLI_PATH);
  const struct {
    const char* args;
    const char* csv;
  } cases[] = {
      {"pdf --hop g2a --samples 20000 --seed 7", "pdf_g2a_exact.csv"},
      {"outage --levels 1e-1 --powers 0:30:15 --samples 20000 --seed 7",
       "outage.csv"},
      {"se-sweep --speeds 0:100:10 --seed 7", "se_sweep.csv"},
  };
  bool pass = true;
  std::string d;
  int idx = 0;
  for (const auto& c : cases) {
    const fs::path out_a = root / ("a" + std::to_string(idx));
    const fs::path out_b = root / ("b" + std::to_string(idx));
    ++idx;
    bool ran = true;
    for (const fs::path& out : {out_a, out_b}) {
      const std::string cmd = base + " " + c.args + " --scenario " +
                              scenario_path.string() + " --out " +
                              out.string() + " >/dev/null 2>/dev/null";
      const int status = std::system(cmd.c_str());
      ran = ran && status != -1 && WIFEXITED(status) &&
            WEXITSTATUS(status) == 0;
    }
    const bool same =
        ran && !slurp(out_a / c.csv).empty() &&
        slurp(out_a / c.csv) == slurp(out_b / c.csv);
    pass = pass && same;
    d += std::string(" ") + c.csv + "=" + (same ? "same" : "DIFFERS");
  }
  fs::remove_all(root);
  return {pass, "rerun byte-compare," + d};
}

}  // namespace

int main() {
  std::printf("rislink acceptance gate (master seed %llu)\n",
              static_cast<unsigned long long>(kSeed));
  int passed = 0;
  int total = 0;
  const auto run = [&](const char* name, const std::function<Line()>& fn) {
    ++total;
    const auto t0 = std::chrono::steady_clock::now();
    Line line;
    try {
      line = fn();
    } catch (const std::exception& e) {
      line = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("  [%s] %02d %-58s %s  [%.1fs]\n",
                line.pass ? "PASS" : "FAIL", total, name,
                line.detail.c_str(), secs);
    std::fflush(stdout);
    if (line.pass) ++passed;
  };

  run("first-hop SNR law matches seeded draws per antenna count",
      first_hop_law);
  run("RIS-hop SNR law matches seeded draws through the series",
      ris_hop_series);
  run("large-array collapse law tightens as elements grow",
      large_array_collapse);
  run("transform inversion reproduces the first-hop density",
      transform_inversion);
  run("gain moment matching solves its defining system", moment_matching);
  run("outage thresholds hit the requested level", outage_planning);
  run("speed sweep: hovering is optimal, high speed saturates",
      speed_sweep);
  run("hardening index vanishes frozen and decays with elements", hardening);
  run("special-function kernels match their brute-force oracles",
      specfun_oracles);
  run("command-line reruns are byte-identical", cli_determinism);

  std::printf("acceptance: %d/%d criteria passed\n", passed, total);
  return passed == total ? 0 : 1;
}
