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

#include "rislink/dists.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rislink/specfun.hpp"

namespace rislink::dists {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// 0 * log(0) = 0 convention; keeps zero-weight terms out of log-space sums
// without special casing every factor.
double xlogy(double a, double b) { return a == 0.0 ? 0.0 : a * std::log(b); }

double log_choose(int n, int m) {
  return specfun::log_gamma(n + 1.0) - specfun::log_gamma(m + 1.0) -
         specfun::log_gamma(n - m + 1.0);
}

void check_snccs(const SnccsParams& p) {
  if (!(p.omega > 0.0))
    throw std::domain_error("snccs: omega must be positive");
  if (!(p.k > 0.0)) throw std::domain_error("snccs: k must be positive");
  if (!(p.lambda >= 0.0))
    throw std::domain_error("snccs: lambda must be nonnegative");
}

void check_g2a(const G2aParams& g) {
  if (g.m_antennas < 1)
    throw std::domain_error("first hop: m_antennas must be >= 1");
  if (!(g.kappa >= 0.0))
    throw std::domain_error("first hop: kappa must be nonnegative");
  if (!(std::abs(g.rho) <= 1.0))
    throw std::domain_error("first hop: |rho| must be <= 1");
  if (!(g.gbar > 0.0))
    throw std::domain_error("first hop: gbar must be positive");
}

void check_weights(const MixtureWeights& w) {
  if (!(w.p_los >= 0.0) || !(w.p_los <= 1.0))
    throw std::domain_error("mixture: p_los must lie in [0, 1]");
}

}  // namespace

// ---- squared non-central chi-square family ----------------------------------

double snccs_pdf(const SnccsParams& p, double x) {
  check_snccs(p);
  if (!(x >= 0.0))
    throw std::invalid_argument("snccs_pdf: x must be nonnegative");
  if (x == 0.0) {
    if (p.k > 1.0) return 0.0;
    if (p.k == 1.0) return std::exp(-p.lambda) / p.omega;
    return std::numeric_limits<double>::infinity();
  }
  if (p.lambda == 0.0) {
    return std::exp((p.k - 1.0) * std::log(x) - x / p.omega -
                    specfun::log_gamma(p.k) - p.k * std::log(p.omega));
  }
  const double arg = 2.0 * std::sqrt(p.lambda * x / p.omega);
  return std::exp(-std::log(p.omega) - x / p.omega - p.lambda +
                  0.5 * (p.k - 1.0) *
                      (std::log(x) - std::log(p.omega) - std::log(p.lambda)) +
                  specfun::log_bessel_i(p.k - 1.0, arg));
}

double snccs_cdf(const SnccsParams& p, double x) {
  check_snccs(p);
  if (!(x >= 0.0))
    throw std::invalid_argument("snccs_cdf: x must be nonnegative");
  if (x == 0.0) return 0.0;
  const double y = x / p.omega;
  if (p.lambda == 0.0) return specfun::gamma_p(p.k, y);

  // Poisson-weighted incomplete-gamma window around the noncentrality bulk.
  // Anchoring the incomplete gamma at the top of the window and walking down
  // turns the shape recurrence into pure additions of nonnegative lumps.
  const long half =
      static_cast<long>(std::ceil(9.0 * std::sqrt(p.lambda) + 40.0));
  const long jhi = static_cast<long>(std::ceil(p.lambda)) + half;
  const long jlo =
      std::max(0L, static_cast<long>(std::floor(p.lambda)) - half);

  double pj = specfun::gamma_p(p.k + static_cast<double>(jhi), y);
  double wj = std::exp(jhi * std::log(p.lambda) - p.lambda -
                       specfun::log_gamma(jhi + 1.0));
  double acc = wj * pj;
  double wsum = wj;
  // Increment taking P(k + j + 1) to P(k + j), evaluated first at j = jhi - 1.
  double dj = std::exp((p.k + jhi - 1.0) * std::log(y) - y -
                       specfun::log_gamma(p.k + static_cast<double>(jhi)));
  for (long j = jhi - 1; j >= jlo; --j) {
    pj = std::min(1.0, pj + dj);
    wj *= (j + 1.0) / p.lambda;
    acc += wj * pj;
    wsum += wj;
    dj *= (p.k + j) / y;
  }
  // Renormalize by the covered Poisson mass so the far tail saturates at
  // exactly one instead of at one minus the window truncation.
  if (wsum > 0.0) acc /= wsum;
  return std::min(1.0, std::max(0.0, acc));
}

double snccs_mean(const SnccsParams& p) {
  check_snccs(p);
  return p.omega * (p.k + p.lambda);
}

void snccs_system_lhs(const SnccsParams& p, double out[3]) {
  check_snccs(p);
  out[0] = p.omega * (p.k + p.lambda);
  out[1] = p.omega * p.omega * (p.k + 2.0 * p.lambda);
  out[2] = p.omega * p.omega * p.omega * (p.k + 3.0 * p.lambda);
}

void moment_match_rhs(double mu, double sigma2, double out[3]) {
  const double c = sigma2 - 0.5;
  const double m2 = mu * mu;
  out[0] = sigma2 + m2;
  out[1] = 2.0 * c * c + 4.0 * m2 * c + 0.5;
  out[2] = 4.0 * c * c * c + 12.0 * m2 * c * c + 0.5;
}

SnccsParams moment_match_snccs(double mu, double sigma2) {
  if (!(mu >= 0.0) || !(sigma2 >= 1.0))
    throw std::domain_error(
        "moment_match_snccs: need mu >= 0 and sigma2 >= 1");
  double r[3];
  moment_match_rhs(mu, sigma2, r);
  const double disc = r[1] * r[1] - r[0] * r[2];
  if (disc < -1e-12 * r[1] * r[1])
    throw std::domain_error(
        "moment_match_snccs: inconsistent moments (negative discriminant)");
  const double omega = (r[1] - std::sqrt(std::max(0.0, disc))) / r[0];
  if (!(omega > 0.0))
    throw std::domain_error("moment_match_snccs: nonpositive scale");
  const double k = (2.0 * r[0] - r[1] / omega) / omega;
  if (!(k > 0.0))
    throw std::domain_error("moment_match_snccs: nonpositive shape");
  double lambda = (r[1] / omega - r[0]) / omega;
  if (lambda < 0.0) {
    if (lambda < -1e-10 * (k + 1.0))
      throw std::domain_error(
          "moment_match_snccs: negative noncentrality beyond round-off");
    lambda = 0.0;
  }
  return {omega, k, lambda};
}

// ---- first hop ---------------------------------------------------------------

double G2aParams::delta3() const {
  // delta2 - delta1 simplifies to gbar rho^2 / (kappa + 1); dividing by the
  // simplified form avoids the cancellation of the naive difference.
  return delta1() * delta2() * (kappa + 1.0) / (gbar * rho * rho);
}

double g2a_pdf_nlos(const G2aParams& g, double x) {
  check_g2a(g);
  if (!(x >= 0.0))
    throw std::invalid_argument("g2a_pdf_nlos: x must be nonnegative");
  const int mm = g.m_antennas;
  const double rb2 = g.rho_bar_sq();
  const double r2 = g.rho * g.rho;
  double lmax = kNegInf;
  double acc = 0.0;
  for (int m = 0; m < mm; ++m) {
    const double lt = log_choose(mm - 1, m) + xlogy(m, rb2) +
                      xlogy(mm - 1 - m, r2) + xlogy(mm - m - 1, x) -
                      x / g.gbar -
                      specfun::log_gamma(static_cast<double>(mm - m)) -
                      (mm - m) * std::log(g.gbar);
    if (lt == kNegInf) continue;
    if (lt > lmax) {
      acc = acc * std::exp(lmax - lt) + 1.0;
      lmax = lt;
    } else {
      acc += std::exp(lt - lmax);
    }
  }
  return lmax == kNegInf ? 0.0 : std::exp(lmax) * acc;
}

double g2a_pdf_los(const G2aParams& g, double x) {
  check_g2a(g);
  if (!(x >= 0.0))
    throw std::invalid_argument("g2a_pdf_los: x must be nonnegative");
  const int mm = g.m_antennas;
  const double rb2 = g.rho_bar_sq();
  if (rb2 <= 0.0) {
    // Perfect correlation: matched filtering on the true channel.
    return snccs_pdf(
        {g.gbar / (g.kappa + 1.0), static_cast<double>(mm), mm * g.kappa}, x);
  }
  if (g.kappa == 0.0 || g.rho == 0.0) {
    // No retained specular component: the law coincides with the scattered
    // state (and collapses further to one exponential at rho = 0).
    return g2a_pdf_nlos(g, x);
  }
  if (x == 0.0) return g2a_pdf_los_asymptotic(g);

  const double c = g.kappa * rb2 + 1.0;
  const double xi = g.xi_u();
  const double lpre = -(mm * g.kappa * g.rho * g.rho) / c -
                      (g.kappa + 1.0) * x / (g.gbar * c) +
                      mm * (std::log(g.kappa + 1.0) - std::log(c) -
                            std::log(g.gbar));
  const double arg = 2.0 * std::sqrt(xi * x) / c;
  const double lxr = std::log(x) - std::log(xi);
  double lmax = kNegInf;
  double acc = 0.0;
  for (int m = 0; m < mm; ++m) {
    const int nu = mm - m - 1;
    const double lt = log_choose(mm - 1, m) +
                      m * std::log(g.gbar * rb2) +
                      nu * std::log(g.rho * g.rho) + 0.5 * nu * lxr +
                      specfun::log_bessel_i(nu, arg);
    if (lt > lmax) {
      acc = acc * std::exp(lmax - lt) + 1.0;
      lmax = lt;
    } else {
      acc += std::exp(lt - lmax);
    }
  }
  return std::exp(lpre + lmax) * acc;
}

double g2a_pdf_los_asymptotic(const G2aParams& g) {
  check_g2a(g);
  const int mm = g.m_antennas;
  const double rb2 = g.rho_bar_sq();
  if (rb2 <= 0.0) {
    // Matched-filter limit: a Gamma(M) law, nonzero at the origin only for
    // a single antenna.
    if (mm > 1) return 0.0;
    return std::exp(-g.kappa) * (g.kappa + 1.0) / g.gbar;
  }
  const double c = g.kappa * rb2 + 1.0;
  return std::exp(-(mm * g.kappa * g.rho * g.rho) / c +
                  mm * (std::log(g.kappa + 1.0) - std::log(c)) +
                  xlogy(mm - 1, rb2)) /
         g.gbar;
}

double g2a_pdf_nlos_asymptotic(const G2aParams& g) {
  check_g2a(g);
  return std::exp(xlogy(g.m_antennas - 1, g.rho_bar_sq())) / g.gbar;
}

double g2a_pdf_mixture(const G2aParams& los, const G2aParams& nlos,
                       const MixtureWeights& w, double x) {
  check_weights(w);
  double v = 0.0;
  if (w.p_los > 0.0) v += w.p_los * g2a_pdf_los(los, x);
  if (w.p_los < 1.0) v += (1.0 - w.p_los) * g2a_pdf_nlos(nlos, x);
  return v;
}

double g2a_cdf_upper(const G2aParams& los, const G2aParams& nlos,
                     const MixtureWeights& w, double x) {
  check_weights(w);
  if (!(x >= 0.0))
    throw std::invalid_argument("g2a_cdf_upper: x must be nonnegative");
  double slope = 0.0;
  if (w.p_los > 0.0) slope += w.p_los * g2a_pdf_los_asymptotic(los);
  if (w.p_los < 1.0) slope += (1.0 - w.p_los) * g2a_pdf_nlos_asymptotic(nlos);
  return std::min(1.0, slope * x);
}

template <class S>
S g2a_laplace_los(const G2aParams& g, S s) {
  check_g2a(g);
  const double mk = static_cast<double>(g.m_antennas) * g.kappa;
  const S a = S(1.0) + S(g.delta1()) * s;
  const S b = S(1.0) + S(g.delta2()) * s;
  using std::exp;
  using std::pow;
  return pow(a, g.m_antennas - 1) / pow(b, g.m_antennas) *
         exp(S(mk) * (a / b - S(1.0)));
}

template double g2a_laplace_los<double>(const G2aParams&, double);
template std::complex<double> g2a_laplace_los<std::complex<double>>(
    const G2aParams&, std::complex<double>);

// ---- RIS hop -----------------------------------------------------------------

double alpha_chi(double kappa_ur_est, double kappa_rd, AlphaPrefactor pf) {
  if (!(kappa_ur_est >= 0.0) || !(kappa_rd >= 0.0))
    throw std::domain_error("alpha_chi: K factors must be nonnegative");
  const double pre =
      pf == AlphaPrefactor::Calibrated ? M_PI / 4.0 : M_PI / 2.0;
  return pre * specfun::laguerre_half(-kappa_ur_est) *
         specfun::laguerre_half(-kappa_rd) /
         std::sqrt((kappa_ur_est + 1.0) * (kappa_rd + 1.0));
}

ChiMoments chi_moment_bounds(double rho_ur, int n_elements, double alpha) {
  if (n_elements < 1)
    throw std::domain_error("chi_moment_bounds: n_elements must be >= 1");
  if (!(std::abs(rho_ur) < 1.0))
    throw std::domain_error(
        "chi_moment_bounds: |rho| = 1 is the deterministic limit; the moment "
        "bounds are singular there");
  if (!(alpha > 0.0))
    throw std::domain_error("chi_moment_bounds: alpha must be positive");
  const double r2 = rho_ur * rho_ur;
  const double rb2 = 1.0 - r2;
  ChiMoments m;
  m.mu = std::abs(rho_ur) * std::sqrt(static_cast<double>(n_elements) / rb2) *
         alpha;
  m.sigma2 = 1.0 + r2 / rb2 * n_elements * (1.0 - alpha * alpha);
  return m;
}

namespace {

void check_a2g_inputs(int n, double kur, double ke, double krd, double rho,
                      double gbar) {
  if (n < 1) throw std::domain_error("a2g: n_elements must be >= 1");
  if (!(kur >= 0.0) || !(ke >= 0.0) || !(krd >= 0.0))
    throw std::domain_error("a2g: K factors must be nonnegative");
  if (!(std::abs(rho) < 1.0))
    throw std::domain_error("a2g: |rho_ur| must be < 1");
  if (!(gbar > 0.0)) throw std::domain_error("a2g: gbar must be positive");
}

A2gParams finish_a2g(A2gParams a, const ChiMoments& m) {
  a.mu_chi = m.mu;
  a.sigma2_chi = m.sigma2;
  a.chi_law = moment_match_snccs(m.mu, m.sigma2);
  a.xi_r = 4.0 * (a.kappa_rd + 1.0) /
           (a.rho_bar_sq() * a.gbar * a.chi_law.omega);
  return a;
}

}  // namespace

A2gParams make_a2g_params(int n_elements, double kappa_ur, double kappa_ur_est,
                          double kappa_rd, double rho_ur, double gbar,
                          AlphaPrefactor pf) {
  check_a2g_inputs(n_elements, kappa_ur, kappa_ur_est, kappa_rd, rho_ur, gbar);
  A2gParams a;
  a.n_elements = n_elements;
  a.kappa_ur = kappa_ur;
  a.kappa_ur_est = kappa_ur_est;
  a.kappa_rd = kappa_rd;
  a.rho_ur = rho_ur;
  a.gbar = gbar;
  a.prefactor = pf;
  a.alpha = alpha_chi(kappa_ur_est, kappa_rd, pf);
  return finish_a2g(a, chi_moment_bounds(rho_ur, n_elements, a.alpha));
}

A2gParams make_a2g_params_from_moments(int n_elements, double kappa_ur,
                                       double kappa_ur_est, double kappa_rd,
                                       double rho_ur, double gbar,
                                       const ChiMoments& moments) {
  check_a2g_inputs(n_elements, kappa_ur, kappa_ur_est, kappa_rd, rho_ur, gbar);
  A2gParams a;
  a.n_elements = n_elements;
  a.kappa_ur = kappa_ur;
  a.kappa_ur_est = kappa_ur_est;
  a.kappa_rd = kappa_rd;
  a.rho_ur = rho_ur;
  a.gbar = gbar;
  a.alpha = alpha_chi(kappa_ur_est, kappa_rd, a.prefactor);
  return finish_a2g(a, moments);
}

A2gSeries::A2gSeries(const A2gParams& a, const SeriesOptions& opt)
    : a_(a), opt_(opt) {
  if (a_.n_elements < 1)
    throw std::domain_error("a2g series: n_elements must be >= 1");
  if (!(a_.chi_law.omega > 0.0) || !(a_.chi_law.k > 0.0) ||
      !(a_.chi_law.lambda >= 0.0))
    throw std::domain_error("a2g series: chi law is not matched");
  if (!(a_.xi_r > 0.0))
    throw std::domain_error("a2g series: xi_r must be positive");
  if (opt_.max_blocks < 1)
    throw std::domain_error("a2g series: max_blocks must be >= 1");
  if (!(opt_.tail_tol > 0.0))
    throw std::domain_error("a2g series: tail_tol must be positive");

  const int p = opt_.max_blocks;
  const double mean_rd = static_cast<double>(a_.n_elements) * a_.kappa_rd;
  const double lam = a_.chi_law.lambda;
  log_w_rd_.resize(p);
  log_w_chi_.resize(p);
  lg_n_.resize(p);
  lg_k_.resize(p);
  for (int j = 0; j < p; ++j) {
    log_w_rd_[j] = mean_rd == 0.0
                       ? (j == 0 ? 0.0 : kNegInf)
                       : j * std::log(mean_rd) - mean_rd -
                             specfun::log_gamma(j + 1.0);
    log_w_chi_[j] = lam == 0.0 ? (j == 0 ? 0.0 : kNegInf)
                               : j * std::log(lam) - lam -
                                     specfun::log_gamma(j + 1.0);
    lg_n_[j] = specfun::log_gamma(static_cast<double>(a_.n_elements) + j);
    lg_k_[j] = specfun::log_gamma(a_.chi_law.k + j);
  }
  log_pois_rd_0_ = log_w_rd_[0];
  log_pois_chi_0_ = log_w_chi_[0];
}

SeriesResult A2gSeries::operator()(double x) const {
  if (!(x > 0.0))
    throw std::invalid_argument("a2g series: x must be positive");
  const int p = opt_.max_blocks;
  const int span = p - 1;
  const double n = static_cast<double>(a_.n_elements);
  const double kr = a_.chi_law.k;
  const double nu0 = n - kr;
  const double s = std::sqrt(a_.xi_r * x);
  const double lxi = std::log(a_.xi_r);
  const double lx = std::log(x);

  // One scaled upward Bessel-K recursion sweep covers every order the block
  // loop can touch: nu0 + q for q in [-span, span]. Negative orders reflect
  // onto positive ones, giving a second ascending ladder.
  std::vector<double> lk(2 * span + 1);
  const auto fill_up = [&](double base, int pos, int step, int count) {
    if (count <= 0) return;
    double l0 = specfun::log_bessel_k(base, s);
    lk[pos] = l0;
    if (count == 1) return;
    double l1 = specfun::log_bessel_k(base + 1.0, s);
    lk[pos + step] = l1;
    double off = l1;
    double vprev = std::exp(l0 - l1);
    double v = 1.0;
    for (int i = 2; i < count; ++i) {
      const double nu = base + (i - 1);
      const double vnext = vprev + (2.0 * nu / s) * v;
      vprev = v;
      v = vnext;
      if (v > 1e280) {
        const double r = v;
        vprev /= r;
        v = 1.0;
        off += std::log(r);
      }
      lk[pos + i * step] = off + std::log(v);
    }
  };
  int q0 = static_cast<int>(std::ceil(static_cast<double>(span) - nu0));
  q0 = std::max(0, std::min(2 * span + 1, q0));
  fill_up(nu0 + (q0 - span), q0, 1, 2 * span + 1 - q0);
  fill_up(-(nu0 + (q0 - 1 - span)), q0 - 1, -1, q0);

  double lmax = kNegInf;
  double acc = 0.0;
  int consec = 0;
  int blocks = p;
  bool converged = false;
  for (int m = 0; m < p; ++m) {
    const double sh = 0.5 * (n + kr + m);
    const double lcommon =
        sh * lxi - (n + kr + m - 1.0) * M_LN2 + (sh - 1.0) * lx;
    double bmax = kNegInf;
    double bacc = 0.0;
    for (int j = 0; j <= m; ++j) {
      double lt = log_w_rd_[j] + log_w_chi_[m - j];
      if (lt == kNegInf) continue;
      lt += lcommon - lg_n_[j] - lg_k_[m - j] + lk[span + (2 * j - m)];
      if (lt > bmax) {
        bacc = bacc * std::exp(bmax - lt) + 1.0;
        bmax = lt;
      } else {
        bacc += std::exp(lt - bmax);
      }
    }
    double rel = 0.0;
    if (bmax != kNegInf) {
      if (bmax > lmax) {
        acc = acc * std::exp(lmax - bmax) + bacc;
        lmax = bmax;
      } else {
        acc += bacc * std::exp(bmax - lmax);
      }
      rel = acc > 0.0 ? bacc * std::exp(bmax - lmax) / acc : 1.0;
    }
    if (rel < opt_.tail_tol) {
      if (++consec >= 3) {
        blocks = m + 1;
        converged = true;
        break;
      }
    } else {
      consec = 0;
    }
  }
  SeriesResult r;
  r.value = lmax == kNegInf ? 0.0 : std::exp(lmax + std::log(acc));
  r.blocks = blocks;
  r.converged = converged;
  return r;
}

SeriesResult a2g_pdf_los_series(const A2gParams& a, double x,
                                const SeriesOptions& opt) {
  return A2gSeries(a, opt)(x);
}

SeriesResult a2g_pdf_mixture(const A2gParams& los, const A2gParams& nlos,
                             const MixtureWeights& w, double x,
                             const SeriesOptions& opt) {
  check_weights(w);
  SeriesResult r;
  r.converged = true;
  if (w.p_los > 0.0) {
    const SeriesResult s = a2g_pdf_los_series(los, x, opt);
    r.value += w.p_los * s.value;
    r.blocks = std::max(r.blocks, s.blocks);
    r.converged = r.converged && s.converged;
  }
  if (w.p_los < 1.0) {
    const SeriesResult s = a2g_pdf_los_series(nlos, x, opt);
    r.value += (1.0 - w.p_los) * s.value;
    r.blocks = std::max(r.blocks, s.blocks);
    r.converged = r.converged && s.converged;
  }
  return r;
}

LargeNLaw a2g_large_n_law(const A2gParams& a) {
  if (a.n_elements < 1)
    throw std::domain_error("a2g_large_n_law: n_elements must be >= 1");
  if (!(a.gbar > 0.0))
    throw std::domain_error("a2g_large_n_law: gbar must be positive");
  if (!(std::abs(a.rho_ur) <= 1.0))
    throw std::domain_error("a2g_large_n_law: |rho_ur| must be <= 1");
  if (!(a.alpha > 0.0))
    throw std::domain_error("a2g_large_n_law: alpha must be positive");
  const double n = static_cast<double>(a.n_elements);
  const double rb2 = a.rho_bar_sq();
  LargeNLaw law;
  if (rb2 <= 0.0) {
    law.point_mass = true;
    law.location = a.gbar * n * n * a.alpha * a.alpha;
    return law;
  }
  law.law.omega = rb2 * a.gbar * n;
  law.law.k = 1.0;
  law.law.lambda = n * a.rho_ur * a.rho_ur * a.alpha * a.alpha / rb2;
  return law;
}

double a2g_pdf_large_n(const A2gParams& a, double x) {
  const LargeNLaw law = a2g_large_n_law(a);
  if (law.point_mass)
    throw std::domain_error(
        "a2g_pdf_large_n: the |rho| = 1 law is a point mass and has no "
        "density");
  return snccs_pdf(law.law, x);
}

namespace {

// Per-state CDF of the collapsed law; the LOS state keeps the alpha^2
// noncentrality deflation while the scattered state uses alpha = 1.
double large_n_state_cdf(const A2gParams& a, double alpha_eff, double x) {
  const double n = static_cast<double>(a.n_elements);
  const double rb2 = a.rho_bar_sq();
  if (rb2 <= 0.0)
    return x >= a.gbar * n * n * alpha_eff * alpha_eff ? 1.0 : 0.0;
  const SnccsParams q{rb2 * a.gbar * n, 1.0,
                      n * a.rho_ur * a.rho_ur * alpha_eff * alpha_eff / rb2};
  return snccs_cdf(q, x);
}

}  // namespace

double a2g_cdf_upper(const A2gParams& los, const A2gParams& nlos,
                     const MixtureWeights& w, double x) {
  check_weights(w);
  if (!(x >= 0.0))
    throw std::invalid_argument("a2g_cdf_upper: x must be nonnegative");
  double v = 0.0;
  if (w.p_los > 0.0) v += w.p_los * large_n_state_cdf(los, los.alpha, x);
  if (w.p_los < 1.0) v += (1.0 - w.p_los) * large_n_state_cdf(nlos, 1.0, x);
  return std::min(1.0, std::max(0.0, v));
}

}  // namespace rislink::dists
