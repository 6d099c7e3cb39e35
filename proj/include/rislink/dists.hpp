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

#ifndef RISLINK_DISTS_HPP
#define RISLINK_DISTS_HPP

#include <complex>
#include <vector>

// Exact SNR distributions for both hops of the aged-CSI RIS relay link:
// the squared-non-central-chi-square family, the multi-antenna first-hop
// law and its non-LOS / small-argument companions, and the RIS-hop product
// law with its large-array collapse. All densities are evaluated in log
// space internally so extreme mean-SNR scales stay finite.

namespace rislink::dists {

// ---- squared non-central chi-square family ---------------------------------
// Laplace transform (1 + omega s)^{-k} exp(-lambda omega s / (1 + omega s)):
// scale omega > 0, shape k > 0, non-centrality lambda >= 0. lambda = 0
// degenerates to Gamma(k, omega).
struct SnccsParams {
  double omega = 1.0;
  double k = 1.0;
  double lambda = 0.0;
};

double snccs_pdf(const SnccsParams& p, double x);
double snccs_cdf(const SnccsParams& p, double x);
double snccs_mean(const SnccsParams& p);
// The three left-hand sides of the matching system: omega(k+lambda),
// omega^2(k+2 lambda), omega^3(k+3 lambda).
void snccs_system_lhs(const SnccsParams& p, double out[3]);

// Closed-form parameter recovery from the mean mu and effective variance
// sigma2 of the underlying complex gain (sigma2 >= 1, mu >= 0). The returned
// triple satisfies the three-equation system to round-off; inconsistent
// moment triples (negative discriminant beyond round-off) throw.
SnccsParams moment_match_snccs(double mu, double sigma2);
void moment_match_rhs(double mu, double sigma2, double out[3]);

// ---- first hop (multi-antenna, aged MRT) ------------------------------------

struct G2aParams {
  int m_antennas = 1;    // M >= 1
  double kappa = 0.0;    // Rician K factor (linear)
  double rho = 1.0;      // aging correlation, |rho| <= 1
  double gbar = 1.0;     // mean per-antenna SNR

  double rho_bar_sq() const { return 1.0 - rho * rho; }
  double delta1() const { return gbar * rho_bar_sq(); }
  double delta2() const {
    return gbar * (kappa * rho_bar_sq() + 1.0) / (kappa + 1.0);
  }
  double delta3() const;                  // delta1*delta2/(delta2-delta1)
  double xi_u() const {                   // M kappa rho^2 (kappa+1) / gbar
    return m_antennas * kappa * rho * rho * (kappa + 1.0) / gbar;
  }
};

struct MixtureWeights {
  double p_los = 1.0;  // in [0, 1]
};

// Exact LOS-state density (finite Bessel-I sum) and its kappa = 0 companion
// (an Erlang mixture that integrates to 1 exactly). x >= 0.
double g2a_pdf_los(const G2aParams& g, double x);
double g2a_pdf_nlos(const G2aParams& g, double x);
double g2a_pdf_mixture(const G2aParams& los, const G2aParams& nlos,
                       const MixtureWeights& w, double x);

// Density value at the origin (the small-x plateau) per state, and the
// linear CDF upper bound built from the plateau mixture, clamped to [0,1].
double g2a_pdf_los_asymptotic(const G2aParams& g);
double g2a_pdf_nlos_asymptotic(const G2aParams& g);
double g2a_cdf_upper(const G2aParams& los, const G2aParams& nlos,
                     const MixtureWeights& w, double x);

// Laplace transform of the LOS-state SNR density; templated on the scalar so
// the same expression serves real evaluation and complex contour inversion.
template <class S>
S g2a_laplace_los(const G2aParams& g, S s);

extern template double g2a_laplace_los<double>(const G2aParams&, double);
extern template std::complex<double> g2a_laplace_los<std::complex<double>>(
    const G2aParams&, std::complex<double>);

// ---- RIS hop ----------------------------------------------------------------

enum class AlphaPrefactor {
  Calibrated,  // pi/4: consistent with unit-power Rician envelope means
  AsPrinted,   // pi/2: the published constant, kept for comparison
};

// Mean-product factor alpha of the cascaded estimate/ground envelopes and
// its complement beta = 1 - alpha^2.
double alpha_chi(double kappa_ur_est, double kappa_rd,
                 AlphaPrefactor pf = AlphaPrefactor::Calibrated);

struct ChiMoments {
  double mu = 0.0;      // >= 0
  double sigma2 = 1.0;  // >= 1
};

// Jensen-style lower bounds on the equivalent-gain moments at finite N.
ChiMoments chi_moment_bounds(double rho_ur, int n_elements, double alpha);

struct A2gParams {
  int n_elements = 1;        // N >= 1
  double kappa_ur = 0.0;     // U-R channel K factor
  double kappa_ur_est = 0.0; // estimate-side K factor (defaults to kappa_ur)
  double kappa_rd = 0.0;     // R-D K factor
  double rho_ur = 1.0;       // aging correlation of the U-R hop
  double gbar = 1.0;         // mean cascaded SNR scale
  AlphaPrefactor prefactor = AlphaPrefactor::Calibrated;

  // Derived (filled by the factories below).
  double alpha = 1.0;
  double mu_chi = 0.0;
  double sigma2_chi = 1.0;
  SnccsParams chi_law;  // matched (omega_r, k_r, lambda_r)
  double xi_r = 0.0;    // 4(kappa_rd+1)/(rho_bar^2 gbar omega_r)

  double rho_bar_sq() const { return 1.0 - rho_ur * rho_ur; }
};

// Build A2gParams with the chi law matched to the Jensen moment bounds, or
// to externally supplied (for example Monte Carlo) moments. |rho_ur| < 1.
A2gParams make_a2g_params(int n_elements, double kappa_ur, double kappa_ur_est,
                          double kappa_rd, double rho_ur, double gbar,
                          AlphaPrefactor pf = AlphaPrefactor::Calibrated);
A2gParams make_a2g_params_from_moments(int n_elements, double kappa_ur,
                                       double kappa_ur_est, double kappa_rd,
                                       double rho_ur, double gbar,
                                       const ChiMoments& moments);

struct SeriesResult {
  double value = 0.0;
  int blocks = 0;       // outer summation blocks consumed
  bool converged = true;
};

struct SeriesOptions {
  int max_blocks = 135;
  double tail_tol = 1e-10;
};

// Exact product-law density as the double Poisson-weighted Bessel-K series.
// Evaluation stops once three consecutive outer blocks contribute less than
// tail_tol of the running mass, or at max_blocks with converged = false.
SeriesResult a2g_pdf_los_series(const A2gParams& a, double x,
                                const SeriesOptions& opt = {});
SeriesResult a2g_pdf_mixture(const A2gParams& los, const A2gParams& nlos,
                             const MixtureWeights& w, double x,
                             const SeriesOptions& opt = {});

// Reusable evaluator for dense grids (precomputes the per-parameter tables;
// evaluation cost is then one Bessel-K recursion sweep per x).
class A2gSeries {
 public:
  A2gSeries(const A2gParams& a, const SeriesOptions& opt = {});
  SeriesResult operator()(double x) const;

 private:
  A2gParams a_;
  SeriesOptions opt_;
  double log_pois_rd_0_, log_pois_chi_0_;  // log weights at j = 0
  std::vector<double> log_w_rd_;    // log Poisson weights, N kappa_rd mean
  std::vector<double> log_w_chi_;   // log Poisson weights, lambda_r mean
  std::vector<double> lg_n_;        // log Gamma(N + j)
  std::vector<double> lg_k_;        // log Gamma(k_r + m - j)
};

// Large-N collapse of the RIS hop to a single SNCCS law. Degenerate at
// |rho| = 1 (deterministic limit), reported via the flag.
struct LargeNLaw {
  bool point_mass = false;
  double location = 0.0;
  SnccsParams law;
};
LargeNLaw a2g_large_n_law(const A2gParams& a);
double a2g_pdf_large_n(const A2gParams& a, double x);

// Normal-approximation CDF upper bound of the RIS hop (LOS term keeps the
// alpha^2 non-centrality deflation, the NLOS term drops it, as published).
// Clamped to [0, 1]. The bound direction is empirical, not asserted.
double a2g_cdf_upper(const A2gParams& los, const A2gParams& nlos,
                     const MixtureWeights& w, double x);

}  // namespace rislink::dists

#endif  // RISLINK_DISTS_HPP
