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

#ifndef RISLINK_LINKPERF_HPP
#define RISLINK_LINKPERF_HPP

#include "rislink/dists.hpp"
#include "rislink/scenario.hpp"

// End-to-end planning formulas for the decode-and-forward relay: outage
// composition, the small-outage threshold inversion, the spectral-efficiency
// ceiling it implies, and the channel-hardening index of the RIS hop.

namespace rislink::linkperf {

// Decode-and-forward outage from per-hop outage probabilities.
double e2e_outage(double p_hop1, double p_hop2);

// Analytical per-hop parameter bundles derived from a resolved scenario.
struct HopLaws {
  dists::G2aParams g2a_los;
  dists::G2aParams g2a_nlos;
  dists::MixtureWeights g2a_w;
  dists::A2gParams a2g_los;
  dists::A2gParams a2g_nlos;
  dists::MixtureWeights a2g_w;
};
HopLaws hop_laws(const scenario::Resolved& r,
                 dists::AlphaPrefactor pf = dists::AlphaPrefactor::Calibrated);

// Small-x upper bound of the end-to-end outage at threshold x.
double e2e_outage_upper(const HopLaws& h, double x);

enum class InversionMode {
  ClosedForm,  // per-state inversion, LOS-probability weighted (as published)
  Bisect,      // numerically invert the mixture bounds
};

struct ThresholdBreakdown {
  double gamma_g2a = 0.0;  // first-hop branch
  double gamma_a2g = 0.0;  // RIS-hop branch
  double gamma_hat = 0.0;  // min of the two
  double a_l = 0.0;        // Qinv(1-L)/sqrt(2)
  double b_n = 0.0;        // N rho^2 / (1 - rho^2); +inf at |rho| = 1
  bool a2g_degenerate = false;  // normal inverse fell below zero
};

// Largest SNR threshold whose end-to-end outage bound stays below L.
ThresholdBreakdown target_threshold(const HopLaws& h, double level,
                                    InversionMode mode = InversionMode::ClosedForm);

struct SeCeiling {
  double se_max = 0.0;      // 1/2 log2(1 + gamma_hat)
  double se_g2a_ref = 0.0;  // first-hop-only reference ceiling
  ThresholdBreakdown th;
};
SeCeiling max_target_se(const HopLaws& h, double level,
                        InversionMode mode = InversionMode::ClosedForm);

// Relative variance of the RIS-hop equivalent gain: 0 = fully hardened.
// Exactly 0 at |rho| = 1; 1 at rho = 0.
double hardening_index(int n_elements, double rho, double alpha);

}  // namespace rislink::linkperf

#endif  // RISLINK_LINKPERF_HPP
