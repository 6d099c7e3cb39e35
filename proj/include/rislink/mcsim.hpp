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

#ifndef RISLINK_MCSIM_HPP
#define RISLINK_MCSIM_HPP

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rislink/dists.hpp"
#include "rislink/scenario.hpp"

// Monte Carlo oracle for the link SNR laws. Sampling follows the signal
// model literally: Rician draws, white-innovation aging, maximum-ratio
// combining on the first hop, per-element phase alignment on the RIS hop.
//
// Reproducibility contract: every sample i derives its own generator from
// (master_seed, stream_id, i), so results do not depend on the worker
// partition, and growing the element count extends a sample's draw sequence
// without reshuffling it. The integer and uniform streams are bit-exact
// across platforms; normal variates additionally depend on libm rounding.

namespace rislink::mcsim {

// xoshiro256++ seeded through splitmix64. Deliberately not std::mt19937:
// the standard normal_distribution is implementation-defined, which would
// break cross-platform reproducibility of recorded batches.
class Rng {
 public:
  Rng(std::uint64_t master_seed, std::uint64_t stream_id,
      std::uint64_t sample_index = 0);
  std::uint64_t next_u64();
  double uniform();        // in (0, 1], 53-bit
  double normal();         // Marsaglia polar, one value per call (cached pair)
  std::complex<double> cnormal();  // CN(0, 1)

 private:
  std::uint64_t s_[4];
  double cached_ = 0.0;
  bool has_cached_ = false;
};

enum class Hop { G2A, A2G };

struct SampleBatch {
  std::vector<double> snr;
  std::vector<std::uint8_t> los;  // per-draw LOS state of the aged hop
  Hop hop = Hop::G2A;
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

// Stream ids used by the command layer; anything is valid.
inline constexpr std::uint64_t kStreamG2a = 1;
inline constexpr std::uint64_t kStreamA2g = 2;
inline constexpr std::uint64_t kStreamChi = 3;

// ---- hop specifications ------------------------------------------------------

struct G2aSimSpec {
  int m = 1;
  double rho = 1.0;
  double p_los = 1.0;
  double kappa_los = 0.0;
  double gbar_los = 1.0;
  double gbar_nlos = 1.0;
};

struct A2gSimSpec {
  int n = 1;
  double rho = 1.0;
  double p_los = 1.0;
  double kappa_ur_los = 0.0;  // NLOS state has kappa_ur = 0
  double kappa_rd = 0.0;      // pinned R-D state
  double gbar_los = 1.0;
  double gbar_nlos = 1.0;
  int phase_bits = 0;         // 0 = continuous alignment
};

G2aSimSpec g2a_spec_from(const scenario::Resolved& r);
A2gSimSpec a2g_spec_from(const scenario::Resolved& r);

// ---- channel-level draws (single sample) -------------------------------------

// Rician vector with unit element power and flat LOS steering.
Eigen::VectorXcd sample_rician_vector(double kappa, int dim, Rng& rng);
// White-innovation aging: rho h + sqrt(1-rho^2) z.
Eigen::VectorXcd age_vector(const Eigen::VectorXcd& h_ref, double rho, Rng& rng);

// ---- batch sampling ----------------------------------------------------------

SampleBatch sample_g2a(const G2aSimSpec& spec, std::size_t n_samples,
                       std::uint64_t master_seed,
                       std::uint64_t stream_id = kStreamG2a);
SampleBatch sample_a2g(const A2gSimSpec& spec, std::size_t n_samples,
                       std::uint64_t master_seed,
                       std::uint64_t stream_id = kStreamA2g);
// Lemma-form sampler (norm times non-central gain); distributionally equal
// to sample_a2g with continuous phases. Used for equivalence testing.
SampleBatch sample_a2g_quadform(const A2gSimSpec& spec, std::size_t n_samples,
                                std::uint64_t master_seed,
                                std::uint64_t stream_id = kStreamA2g);

// MC estimate of the equivalent-gain moments (mean of chi, effective
// variance 1 + var of the conditional mean) for a fixed LOS state.
dists::ChiMoments estimate_chi_moments(int n_elements, double kappa_ur_est,
                                       double kappa_rd, double rho,
                                       std::size_t n_samples,
                                       std::uint64_t master_seed,
                                       std::uint64_t stream_id = kStreamChi);

// ---- statistics ----------------------------------------------------------------

class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples);
  double operator()(double x) const;
  const std::vector<double>& sorted() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

// One-sample Kolmogorov-Smirnov statistic against a CDF callable, and the
// two-sample statistic between batches.
double ks_statistic(const std::vector<double>& samples,
                    const std::function<double(double)>& cdf);
double ks_two_sample(std::vector<double> a, std::vector<double> b);

struct OutageEstimate {
  double p = 0.0;
  double ci_half = 0.0;  // Wilson 95% half-width
  std::size_t n = 0;
};

// Fraction of paired draws whose min SNR falls below the threshold.
OutageEstimate estimate_outage(const SampleBatch& g2a, const SampleBatch& a2g,
                               double gamma_th);

double mean(const std::vector<double>& v);
double variance(const std::vector<double>& v);

// ---- batch export ---------------------------------------------------------------

// CSV body (sample_index, hop, los_state, snr_linear) plus a JSON sidecar
// carrying seed, stream, sample count and the worker-partition plan. The CSV
// body is byte-stable for a fixed (seed, stream, n).
void write_batch_csv(const SampleBatch& batch, const std::string& csv_path,
                     const std::string& sidecar_path,
                     const std::string& config_hash);

// Worker count: RISLINK_WORKERS env override, else hardware concurrency.
int worker_count();

}  // namespace rislink::mcsim

#endif  // RISLINK_MCSIM_HPP
