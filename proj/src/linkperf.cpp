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

#include "rislink/linkperf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rislink/specfun.hpp"

namespace rislink::linkperf {

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

// Inverse of the linear small-x bound of one first-hop state. Written in the
// factored form so |rho| = 1 stays meaningful through IEEE arithmetic: the
// diversity factor (rho_bar^2)^(1-M) diverges for M > 1 (the bound has no
// linear term left to invert) and is exactly 1 for M = 1.
double g2a_state_inverse(const dists::G2aParams& g, double level) {
  const double rb2 = g.rho_bar_sq();
  const double c = g.kappa * rb2 + 1.0;
  const double m = static_cast<double>(g.m_antennas);
  return level * g.gbar * std::pow(c / (g.kappa + 1.0), m) *
         std::exp(m * g.kappa * g.rho * g.rho / c) * std::pow(rb2, 1.0 - m);
}

// Per-state RIS-hop threshold: the normal-approximation quantile of the
// collapsed equivalent-gain law. The expanded form rho_bar*a_l + alpha*rho*
// sqrt(N) avoids 0 * inf at |rho| = 1, where the threshold collapses to the
// point-mass location gbar * N^2 * alpha^2.
double a2g_state_threshold(const dists::A2gParams& a, double alpha_eff,
                           double a_l, bool* degenerate) {
  const double n = static_cast<double>(a.n_elements);
  const double rho = std::abs(a.rho_ur);
  const double rho_bar = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  const double root = rho_bar * a_l + alpha_eff * rho * std::sqrt(n);
  if (root <= 0.0) {
    *degenerate = true;
    return 0.0;
  }
  return a.gbar * n * root * root;
}

// Analytical bundle for one LOS state of the RIS hop. The full factory also
// moment-matches the equivalent-gain law, which is singular at |rho| = 1 and
// unrepresentable when the gain is almost central (rho near 0, or alpha > 1
// with the uncalibrated prefactor); the planning formulas only read the
// geometry fields and alpha, so those cases degrade to a bundle without the
// matched law instead of failing.
dists::A2gParams a2g_bundle(int n, double kappa_ur, double kappa_rd,
                            double rho, double gbar,
                            dists::AlphaPrefactor pf) {
  if (std::abs(rho) < 1.0) {
    try {
      return dists::make_a2g_params(n, kappa_ur, kappa_ur, kappa_rd, rho,
                                    gbar, pf);
    } catch (const std::domain_error&) {
    }
  }
  dists::A2gParams a;
  a.n_elements = n;
  a.kappa_ur = kappa_ur;
  a.kappa_ur_est = kappa_ur;
  a.kappa_rd = kappa_rd;
  a.rho_ur = rho;
  a.gbar = gbar;
  a.prefactor = pf;
  a.alpha = dists::alpha_chi(kappa_ur, kappa_rd, pf);
  return a;
}

// Largest x with bound(x) <= level for a continuous nondecreasing bound with
// bound(0) = 0. Doubles the bracket first; a bound that never reaches the
// level inside the finite range reports an unbounded threshold.
template <class Bound>
double invert_bound(const Bound& bound, double level) {
  double hi = 1.0;
  while (bound(hi) < level) {
    hi *= 2.0;
    if (!(hi < 1e300)) return std::numeric_limits<double>::infinity();
  }
  double lo = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (bound(mid) < level ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace

double e2e_outage(double p_hop1, double p_hop2) {
  check_probability(p_hop1, "e2e_outage: p_hop1");
  check_probability(p_hop2, "e2e_outage: p_hop2");
  return 1.0 - (1.0 - p_hop1) * (1.0 - p_hop2);
}

HopLaws hop_laws(const scenario::Resolved& r, dists::AlphaPrefactor pf) {
  HopLaws h;
  h.g2a_los = {r.cfg.bs.antennas, r.su.kappa_los, r.rho, r.gbar_su_los};
  h.g2a_nlos = {r.cfg.bs.antennas, 0.0, r.rho, r.gbar_su_nlos};
  h.g2a_w = {r.su.p_los};

  const int n = r.cfg.ris.elements;
  h.a2g_los =
      a2g_bundle(n, r.ur.kappa_los, r.kappa_rd, r.rho, r.gbar_a2g_los, pf);
  h.a2g_nlos = a2g_bundle(n, 0.0, r.kappa_rd, r.rho, r.gbar_a2g_nlos, pf);
  h.a2g_w = {r.ur.p_los};
  return h;
}

double e2e_outage_upper(const HopLaws& h, double x) {
  const double fg = dists::g2a_cdf_upper(h.g2a_los, h.g2a_nlos, h.g2a_w, x);
  const double fa = dists::a2g_cdf_upper(h.a2g_los, h.a2g_nlos, h.a2g_w, x);
  return e2e_outage(fg, fa);
}

ThresholdBreakdown target_threshold(const HopLaws& h, double level,
                                    InversionMode mode) {
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("target_threshold: level must lie in (0, 1)");
  check_probability(h.g2a_w.p_los, "target_threshold: g2a p_los");
  check_probability(h.a2g_w.p_los, "target_threshold: a2g p_los");
  if (!(std::abs(h.a2g_los.rho_ur) <= 1.0) ||
      !(std::abs(h.g2a_los.rho) <= 1.0))
    throw std::invalid_argument("target_threshold: |rho| must be <= 1");

  ThresholdBreakdown th;
  th.a_l = specfun::gaussian_q_inv(1.0 - level) / M_SQRT2;
  const double rho = std::abs(h.a2g_los.rho_ur);
  th.b_n = static_cast<double>(h.a2g_los.n_elements) * rho * rho /
           (1.0 - rho * rho);

  if (mode == InversionMode::Bisect) {
    th.gamma_g2a = invert_bound(
        [&](double x) {
          return dists::g2a_cdf_upper(h.g2a_los, h.g2a_nlos, h.g2a_w, x);
        },
        level);
    th.gamma_a2g = invert_bound(
        [&](double x) {
          return dists::a2g_cdf_upper(h.a2g_los, h.a2g_nlos, h.a2g_w, x);
        },
        level);
  } else {
    double g = 0.0;
    if (h.g2a_w.p_los > 0.0)
      g += h.g2a_w.p_los * g2a_state_inverse(h.g2a_los, level);
    if (h.g2a_w.p_los < 1.0)
      g += (1.0 - h.g2a_w.p_los) * g2a_state_inverse(h.g2a_nlos, level);
    th.gamma_g2a = g;

    double a = 0.0;
    if (h.a2g_w.p_los > 0.0)
      a += h.a2g_w.p_los * a2g_state_threshold(h.a2g_los, h.a2g_los.alpha,
                                               th.a_l, &th.a2g_degenerate);
    if (h.a2g_w.p_los < 1.0)
      a += (1.0 - h.a2g_w.p_los) *
           a2g_state_threshold(h.a2g_nlos, 1.0, th.a_l, &th.a2g_degenerate);
    th.gamma_a2g = a;
  }
  th.gamma_hat = std::min(th.gamma_g2a, th.gamma_a2g);
  return th;
}

SeCeiling max_target_se(const HopLaws& h, double level, InversionMode mode) {
  SeCeiling out;
  out.th = target_threshold(h, level, mode);
  out.se_max = 0.5 * std::log2(1.0 + out.th.gamma_hat);
  out.se_g2a_ref = 0.5 * std::log2(1.0 + out.th.gamma_g2a);
  return out;
}

double hardening_index(int n_elements, double rho, double alpha) {
  if (n_elements < 1)
    throw std::invalid_argument("hardening_index: n_elements must be >= 1");
  if (!(std::abs(rho) <= 1.0))
    throw std::invalid_argument("hardening_index: |rho| must be <= 1");
  if (!(alpha >= 0.0))
    throw std::invalid_argument("hardening_index: alpha must be nonnegative");
  const double rb2 = 1.0 - rho * rho;
  if (rb2 <= 0.0) return 0.0;
  const double c = static_cast<double>(n_elements) * rho * rho * alpha * alpha;
  return (rb2 + 2.0 * rb2 * c) / ((rb2 + c) * (rb2 + c));
}

}  // namespace rislink::linkperf
