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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rislink/dists.hpp"
#include "rislink/linkperf.hpp"
#include "rislink/mcsim.hpp"
#include "rislink/quadrature.hpp"
#include "rislink/scenario.hpp"

namespace rislink::cli {

namespace {

struct Loaded {
  scenario::ScenarioConfig cfg;
  std::string hash;
};

Loaded load(const CommonArgs& c) {
  Loaded l;
  l.cfg = scenario::load_scenario_file(c.scenario_path);
  l.hash = scenario::config_hash(l.cfg);
  return l;
}

void require_samples(const CommonArgs& c) {
  if (c.samples < 100) throw UsageError("--samples must be at least 100");
}

// Minimal matplotlib overlay of every y column against x_col. Kept out of
// the toolkit proper so the binary carries no plotting dependency.
std::string plot_stub(const std::string& csv_name, const std::string& x_col,
                      const std::vector<std::string>& y_cols, bool log_y) {
  std::string names;
  for (const auto& y : y_cols) names += "\"" + y + "\", ";
  std::string s;
  s += "#!/usr/bin/env python3\n";
  s += "\"\"\"Quick-look plot for " + csv_name + ".\"\"\"\n";
  s += "import csv\n";
  s += "import sys\n";
  s += "\n";
  s += "path = sys.argv[1] if len(sys.argv) > 1 else \"" + csv_name + "\"\n";
  s += "with open(path, newline=\"\") as fh:\n";
  s += "    rows = [r for r in csv.reader(fh) if r and not r[0].startswith(\"#\")]\n";
  s += "data = [[float(v) for v in r] for r in rows[1:]]\n";
  s += "cols = {name: [row[i] for row in data] for i, name in enumerate(rows[0])}\n";
  s += "try:\n";
  s += "    import matplotlib.pyplot as plt\n";
  s += "except ImportError:\n";
  s += "    sys.exit(\"matplotlib is required to draw the figure\")\n";
  s += "for name in [" + names + "]:\n";
  s += "    plt.plot(cols[\"" + x_col + "\"], cols[name], label=name)\n";
  if (log_y) s += "plt.yscale(\"log\")\n";
  s += "plt.xlabel(\"" + x_col + "\")\n";
  s += "plt.legend()\n";
  s += "plt.show()\n";
  return s;
}

void warn(std::vector<std::string>& warnings, const std::string& message) {
  warnings.push_back(message);
  std::cerr << "warning: " << message << "\n";
}

}  // namespace

int run_pdf(const CommonArgs& c, const std::string& hop,
            const std::string& mode, const std::string& grid_spec) {
  const bool is_g2a = hop == "g2a";
  if (!is_g2a && hop != "a2g") {
    throw UsageError("unknown hop '" + hop + "' (expected g2a or a2g)");
  }
  if (mode != "exact" && mode != "large_n" && mode != "asymptotic") {
    throw UsageError("unknown mode '" + mode +
                     "' (expected exact, large_n or asymptotic)");
  }
  if (is_g2a && mode == "large_n") {
    throw UsageError("mode large_n applies to the a2g hop only");
  }
  require_samples(c);

  const Loaded l = load(c);
  const scenario::Resolved r = scenario::resolve(l.cfg);
  const linkperf::HopLaws h = linkperf::hop_laws(r);
  std::vector<std::string> warnings;

  const mcsim::SampleBatch batch =
      is_g2a ? mcsim::sample_g2a(mcsim::g2a_spec_from(r), c.samples, c.seed)
             : mcsim::sample_a2g(mcsim::a2g_spec_from(r), c.samples, c.seed);

  // Analytical density plus, where it is cheaper than integrating the
  // density, a direct CDF for the manifest KS statistic.
  std::function<double(double)> pdf;
  std::function<double(double)> cdf;
  std::optional<dists::A2gSeries> los_series;
  std::optional<dists::A2gSeries> nlos_series;
  dists::LargeNLaw law_los;
  dists::LargeNLaw law_nlos;
  const double p = is_g2a ? h.g2a_w.p_los : h.a2g_w.p_los;

  if (is_g2a) {
    if (mode == "exact") {
      pdf = [&h](double x) {
        return dists::g2a_pdf_mixture(h.g2a_los, h.g2a_nlos, h.g2a_w, x);
      };
    } else {
      const double slope =
          p * dists::g2a_pdf_los_asymptotic(h.g2a_los) +
          (1.0 - p) * dists::g2a_pdf_nlos_asymptotic(h.g2a_nlos);
      if (!(slope > 0.0)) {
        warn(warnings,
             "the small-x plateau vanishes for this scenario; the asymptote "
             "is the trivial zero bound");
      }
      pdf = [slope](double x) {
        return slope > 0.0 && x <= 1.0 / slope ? slope : 0.0;
      };
      cdf = [&h](double x) {
        return dists::g2a_cdf_upper(h.g2a_los, h.g2a_nlos, h.g2a_w, x);
      };
    }
  } else {
    if (mode == "exact") {
      // The closed-form gain moments are lower bounds that understate the
      // spread at small N, so the series is fed moments estimated on an
      // independent stream instead.
      try {
        const int n_el = l.cfg.ris.elements;
        const std::size_t m_draws = std::max<std::size_t>(c.samples, 50000);
        const dists::ChiMoments mom_los = mcsim::estimate_chi_moments(
            n_el, r.ur.kappa_los, r.kappa_rd, r.rho, m_draws, c.seed,
            mcsim::kStreamChi);
        const dists::ChiMoments mom_nlos = mcsim::estimate_chi_moments(
            n_el, 0.0, r.kappa_rd, r.rho, m_draws, c.seed,
            mcsim::kStreamChi + 1);
        los_series.emplace(dists::make_a2g_params_from_moments(
            n_el, r.ur.kappa_los, r.ur.kappa_los, r.kappa_rd, r.rho,
            r.gbar_a2g_los, mom_los));
        nlos_series.emplace(dists::make_a2g_params_from_moments(
            n_el, 0.0, 0.0, r.kappa_rd, r.rho, r.gbar_a2g_nlos, mom_nlos));
      } catch (const std::domain_error& e) {
        throw UsageError(
            std::string("the exact series law is unavailable for this "
                        "scenario: ") +
            e.what());
      }
      pdf = [&los_series, &nlos_series, p](double x) {
        if (!(x > 0.0)) return 0.0;  // the product law places no mass at 0
        double v = 0.0;
        if (p > 0.0) v += p * (*los_series)(x).value;
        if (p < 1.0) v += (1.0 - p) * (*nlos_series)(x).value;
        return v;
      };
    } else if (mode == "large_n") {
      try {
        law_los = dists::a2g_large_n_law(h.a2g_los);
        law_nlos = dists::a2g_large_n_law(h.a2g_nlos);
      } catch (const std::domain_error& e) {
        throw UsageError(
            std::string("the large-N law is unavailable for this scenario: ") +
            e.what());
      }
      if (law_los.point_mass || law_nlos.point_mass) {
        throw UsageError(
            "the large-N law is a point mass at |rho| = 1; there is no "
            "density to plot");
      }
      if (l.cfg.ris.elements < 16) {
        warn(warnings, "large_n mode with N = " +
                           std::to_string(l.cfg.ris.elements) +
                           " elements; the collapse is derived for large "
                           "arrays (N >= 16)");
      }
      pdf = [&law_los, &law_nlos, p](double x) {
        double v = 0.0;
        if (p > 0.0) v += p * dists::snccs_pdf(law_los.law, x);
        if (p < 1.0) v += (1.0 - p) * dists::snccs_pdf(law_nlos.law, x);
        return v;
      };
      cdf = [&law_los, &law_nlos, p](double x) {
        double v = 0.0;
        if (p > 0.0) v += p * dists::snccs_cdf(law_los.law, x);
        if (p < 1.0) v += (1.0 - p) * dists::snccs_cdf(law_nlos.law, x);
        return v;
      };
    } else {
      // The collapsed normal-approximation bound has an SNCCS shape as well;
      // its NLOS component keeps the full non-centrality (no alpha), so it
      // is assembled here rather than through a2g_large_n_law.
      const auto bound_law = [](const dists::A2gParams& a,
                                double alpha_eff) -> dists::SnccsParams {
        const double n = static_cast<double>(a.n_elements);
        const double rb2 = a.rho_bar_sq();
        if (rb2 <= 0.0) {
          throw UsageError(
              "the collapsed bound is a point mass at |rho| = 1; there is "
              "no density to plot");
        }
        dists::SnccsParams q;
        q.omega = rb2 * a.gbar * n;
        q.k = 1.0;
        q.lambda = n * a.rho_ur * a.rho_ur * alpha_eff * alpha_eff / rb2;
        return q;
      };
      law_los.law = bound_law(h.a2g_los, h.a2g_los.alpha);
      law_nlos.law = bound_law(h.a2g_nlos, 1.0);
      pdf = [&law_los, &law_nlos, p](double x) {
        double v = 0.0;
        if (p > 0.0) v += p * dists::snccs_pdf(law_los.law, x);
        if (p < 1.0) v += (1.0 - p) * dists::snccs_pdf(law_nlos.law, x);
        return v;
      };
      cdf = [&h](double x) {
        return dists::a2g_cdf_upper(h.a2g_los, h.a2g_nlos, h.a2g_w, x);
      };
    }
  }

  // Bin edges: user grid, or an automatic 200-bin grid spanning the bulk of
  // the sampled mass.
  std::vector<double> edges;
  if (grid_spec.empty()) {
    std::vector<double> sorted = batch.snr;
    std::sort(sorted.begin(), sorted.end());
    const double q999 =
        sorted[static_cast<std::size_t>(0.999 * (sorted.size() - 1))];
    const double hi = q999 > 0.0 ? 1.25 * q999 : 1.0;
    edges.reserve(201);
    for (int i = 0; i <= 200; ++i) edges.push_back(hi * i / 200.0);
  } else {
    edges = parse_grid(grid_spec);
  }
  if (edges.size() < 2) throw UsageError("the pdf grid needs at least two points");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i] > edges[i - 1])) {
      throw UsageError("the pdf grid must be strictly increasing");
    }
  }
  if (edges.front() < 0.0) throw UsageError("SNR grid points must be >= 0");

  // Histogram with per-bin Poisson confidence bands.
  std::vector<std::size_t> counts(edges.size() - 1, 0);
  for (const double v : batch.snr) {
    if (v < edges.front() || v >= edges.back()) continue;
    const auto it = std::upper_bound(edges.begin(), edges.end(), v);
    counts[static_cast<std::size_t>(it - edges.begin()) - 1] += 1;
  }

  if (mode == "exact" && !is_g2a) {
    // One probe at the median: warns when the truncated series has not
    // converged there (large N at the default block budget).
    std::vector<double> sorted = batch.snr;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2,
                     sorted.end());
    const double med = sorted[sorted.size() / 2];
    if (!(*los_series)(med).converged) {
      warn(warnings,
           "the product-law series did not converge within its block budget "
           "at the sample median; prefer mode large_n for this element "
           "count");
    }
  }

  const std::string stem = "pdf_" + hop + "_" + mode;
  CsvBuilder csv(l.hash, c.seed, c.samples, "pdf",
                 {"x", "analytical_pdf", "mc_pdf", "mc_ci_low", "mc_ci_high"});
  const double n_total = static_cast<double>(batch.snr.size());
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double width = edges[i + 1] - edges[i];
    const double x_mid = 0.5 * (edges[i] + edges[i + 1]);
    const double cnt = static_cast<double>(counts[i]);
    const double dens = cnt / (n_total * width);
    const double half = 1.96 * std::sqrt(cnt) / (n_total * width);
    csv.row({x_mid, pdf(x_mid), dens, std::max(0.0, dens - half),
             dens + half});
  }

  // KS of the raw draws against the analytical law. When no direct CDF is
  // available the density is integrated on a fine grid.
  const double max_sample =
      *std::max_element(batch.snr.begin(), batch.snr.end());
  double ks = 0.0;
  if (cdf) {
    ks = mcsim::ks_statistic(batch.snr, cdf);
  } else {
    const quad::CdfGrid grid_cdf(pdf, max_sample * 1.0000001, 8000);
    ks = mcsim::ks_statistic(
        batch.snr, [&grid_cdf](double x) { return grid_cdf(x); });
  }

  const std::string csv_name = stem + ".csv";
  const std::string plot_name = "plot_" + stem + ".py";
  write_text_file(c.out_dir, csv_name, csv.body());
  write_text_file(c.out_dir, plot_name,
                  plot_stub(csv_name, "x",
                            {"analytical_pdf", "mc_pdf"}, false));

  Manifest m;
  m.command = "pdf";
  m.scenario_path = c.scenario_path;
  m.config_hash = l.hash;
  m.master_seed = c.seed;
  m.samples = c.samples;
  m.workers = mcsim::worker_count();
  m.outputs = {csv_name, plot_name};
  m.warnings = warnings;
  m.stats = {{"ks", ks}, {"max_sample_snr", max_sample}};
  const std::string manifest_name = write_manifest(c.out_dir, stem, m);

  std::cout << "pdf: wrote " << csv_name << " (" << csv.rows()
            << " rows), ks=" << format_double(ks) << ", manifest "
            << manifest_name << "\n";
  return 0;
}

int run_outage(const CommonArgs& c, const std::string& levels_spec,
               const std::string& powers_spec) {
  const std::vector<double> levels = parse_grid(levels_spec);
  const std::vector<double> powers = parse_grid(powers_spec);
  for (const double level : levels) {
    if (!(level > 0.0) || !(level < 1.0)) {
      throw UsageError("outage levels must lie strictly inside (0, 1)");
    }
  }
  require_samples(c);

  const Loaded l = load(c);
  CsvBuilder csv(l.hash, c.seed, c.samples, "outage",
                 {"P_dbm", "L", "gamma_hat_th", "op_analytical", "op_mc",
                  "se_max"});
  // The same master seed is reused across power points deliberately: each
  // power resolves to a different channel scale, and reusing the seed keeps
  // the sweep's noise common across the grid.
  for (const double p_dbm : powers) {
    scenario::ScenarioConfig cfg = l.cfg;
    cfg.radio.tx_power_bs_dbm = p_dbm;
    cfg.radio.tx_power_uav_dbm = p_dbm;
    const scenario::Resolved r = scenario::resolve(cfg);
    const linkperf::HopLaws h = linkperf::hop_laws(r);
    const mcsim::SampleBatch g2a =
        mcsim::sample_g2a(mcsim::g2a_spec_from(r), c.samples, c.seed);
    const mcsim::SampleBatch a2g =
        mcsim::sample_a2g(mcsim::a2g_spec_from(r), c.samples, c.seed);
    for (const double level : levels) {
      const linkperf::SeCeiling se = linkperf::max_target_se(h, level);
      const double op_an = linkperf::e2e_outage_upper(h, se.th.gamma_hat);
      const double op_mc =
          mcsim::estimate_outage(g2a, a2g, se.th.gamma_hat).p;
      csv.row({p_dbm, level, se.th.gamma_hat, op_an, op_mc, se.se_max});
    }
  }

  const std::string csv_name = "outage.csv";
  const std::string plot_name = "plot_outage.py";
  write_text_file(c.out_dir, csv_name, csv.body());
  write_text_file(c.out_dir, plot_name,
                  plot_stub(csv_name, "P_dbm", {"op_analytical", "op_mc"},
                            true));

  Manifest m;
  m.command = "outage";
  m.scenario_path = c.scenario_path;
  m.config_hash = l.hash;
  m.master_seed = c.seed;
  m.samples = c.samples;
  m.workers = mcsim::worker_count();
  m.outputs = {csv_name, plot_name};
  m.stats = {{"rows", static_cast<double>(csv.rows())}};
  const std::string manifest_name = write_manifest(c.out_dir, "outage", m);

  std::cout << "outage: wrote " << csv_name << " (" << csv.rows()
            << " rows), manifest " << manifest_name << "\n";
  return 0;
}

int run_se_sweep(const CommonArgs& c, const std::string& speeds_spec,
                 const std::string& elements_spec,
                 const std::string& antennas_spec, double level) {
  const std::vector<double> speeds = parse_grid(speeds_spec);
  for (const double v : speeds) {
    if (v < 0.0) throw UsageError("UAV speeds must be nonnegative");
  }
  const std::vector<int> elements = parse_int_list(elements_spec);
  const std::vector<int> antennas = parse_int_list(antennas_spec);
  for (const int n : elements) {
    if (n < 1) throw UsageError("element counts must be >= 1");
  }
  for (const int m_count : antennas) {
    if (m_count < 1) throw UsageError("antenna counts must be >= 1");
  }
  if (!(level > 0.0) || !(level < 1.0)) {
    throw UsageError("the outage level must lie strictly inside (0, 1)");
  }

  const Loaded l = load(c);
  CsvBuilder csv(l.hash, c.seed, c.samples, "se-sweep",
                 {"v_mps", "N", "M", "se_max", "se_ref_g2a"});
  for (const double v : speeds) {
    for (const int n : elements) {
      for (const int m_count : antennas) {
        scenario::ScenarioConfig cfg = l.cfg;
        cfg.aging.uav_speed_mps = v;
        cfg.ris.elements = n;
        cfg.bs.antennas = m_count;
        const scenario::Resolved r = scenario::resolve(cfg);
        const linkperf::SeCeiling se =
            linkperf::max_target_se(linkperf::hop_laws(r), level);
        csv.row({v, static_cast<double>(n), static_cast<double>(m_count),
                 se.se_max, se.se_g2a_ref});
      }
    }
  }

  const std::string csv_name = "se_sweep.csv";
  const std::string plot_name = "plot_se_sweep.py";
  write_text_file(c.out_dir, csv_name, csv.body());
  write_text_file(c.out_dir, plot_name,
                  plot_stub(csv_name, "v_mps", {"se_max", "se_ref_g2a"},
                            false));

  Manifest m;
  m.command = "se-sweep";
  m.scenario_path = c.scenario_path;
  m.config_hash = l.hash;
  m.master_seed = c.seed;
  m.samples = c.samples;
  m.workers = mcsim::worker_count();
  m.outputs = {csv_name, plot_name};
  m.stats = {{"rows", static_cast<double>(csv.rows())},
             {"level", level}};
  const std::string manifest_name = write_manifest(c.out_dir, "se_sweep", m);

  std::cout << "se-sweep: wrote " << csv_name << " (" << csv.rows()
            << " rows), manifest " << manifest_name << "\n";
  return 0;
}

}  // namespace rislink::cli
