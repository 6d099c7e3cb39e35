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

#include "rislink/mcsim.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include <nlohmann/json.hpp>

namespace rislink::mcsim {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 output function applied to a single step from state z. Used
// both to hash the (master, stream, index) triple and to expand the hashed
// seed into the four xoshiro words.
std::uint64_t mix64(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl64(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

struct RicianShape {
  double a;  // deterministic specular amplitude
  double s;  // scatter scale
};

RicianShape rician_shape(double kappa) {
  return {std::sqrt(kappa / (kappa + 1.0)), std::sqrt(1.0 / (kappa + 1.0))};
}

std::complex<double> rician_draw(const RicianShape& sh, Rng& rng) {
  return sh.a + sh.s * rng.cnormal();
}

void check_common(double rho, double p_los, std::size_t n_samples) {
  if (!(std::abs(rho) <= 1.0))
    throw std::invalid_argument("aging correlation must satisfy |rho| <= 1");
  if (!(p_los >= 0.0 && p_los <= 1.0))
    throw std::invalid_argument("LOS probability must lie in [0, 1]");
  if (n_samples < 1)
    throw std::invalid_argument("sample count must be at least 1");
}

void check_positive_gain(double gbar_los, double gbar_nlos) {
  if (!(gbar_los > 0.0) || !(gbar_nlos > 0.0))
    throw std::invalid_argument("mean SNRs must be positive");
}

void check_kappa(double kappa) {
  if (!(kappa >= 0.0))
    throw std::invalid_argument("Rician K factor must be nonnegative");
}

std::vector<std::pair<std::size_t, std::size_t>> plan_partition(
    std::size_t n, int workers) {
  std::vector<std::pair<std::size_t, std::size_t>> plan;
  const std::size_t w = static_cast<std::size_t>(std::max(workers, 1));
  const std::size_t base = n / w;
  const std::size_t extra = n % w;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < w && begin < n; ++i) {
    const std::size_t len = base + (i < extra ? 1 : 0);
    plan.emplace_back(begin, begin + len);
    begin += len;
  }
  return plan;
}

// Runs per_sample(i) for i in [0, n). Each sample derives its own generator,
// so any partition produces identical per-index results; threads only spread
// the work.
template <typename Fn>
void for_each_sample(std::size_t n, const Fn& per_sample) {
  int workers = worker_count();
  if (n < 4096) workers = 1;
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) per_sample(i);
    return;
  }
  const auto plan = plan_partition(n, workers);
  std::vector<std::thread> pool;
  pool.reserve(plan.size());
  for (const auto& [begin, end] : plan) {
    pool.emplace_back([&per_sample, begin, end] {
      for (std::size_t i = begin; i < end; ++i) per_sample(i);
    });
  }
  for (auto& t : pool) t.join();
}

void append_double(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

}  // namespace

// ---- generator ---------------------------------------------------------------

Rng::Rng(std::uint64_t master_seed, std::uint64_t stream_id,
         std::uint64_t sample_index) {
  std::uint64_t seed = master_seed;
  seed = mix64(seed ^ mix64(stream_id));
  seed = mix64(seed ^ mix64(sample_index));
  for (auto& word : s_) {
    seed += kGolden;
    std::uint64_t z = seed;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    word = z ^ (z >> 31);
  }
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = kGolden;
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl64(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl64(s_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  cached_ = v * f;
  has_cached_ = true;
  return u * f;
}

std::complex<double> Rng::cnormal() {
  const double re = normal() * M_SQRT1_2;
  const double im = normal() * M_SQRT1_2;
  return {re, im};
}

// ---- spec factories ------------------------------------------------------------

G2aSimSpec g2a_spec_from(const scenario::Resolved& r) {
  G2aSimSpec spec;
  spec.m = r.cfg.bs.antennas;
  spec.rho = r.rho;
  spec.p_los = r.su.p_los;
  spec.kappa_los = r.su.kappa_los;
  spec.gbar_los = r.gbar_su_los;
  spec.gbar_nlos = r.gbar_su_nlos;
  return spec;
}

A2gSimSpec a2g_spec_from(const scenario::Resolved& r) {
  A2gSimSpec spec;
  spec.n = r.cfg.ris.elements;
  spec.rho = r.rho;
  spec.p_los = r.ur.p_los;
  spec.kappa_ur_los = r.ur.kappa_los;
  spec.kappa_rd = r.kappa_rd;
  spec.gbar_los = r.gbar_a2g_los;
  spec.gbar_nlos = r.gbar_a2g_nlos;
  spec.phase_bits = r.cfg.ris.phase_bits;
  return spec;
}

// ---- channel-level draws --------------------------------------------------------

Eigen::VectorXcd sample_rician_vector(double kappa, int dim, Rng& rng) {
  check_kappa(kappa);
  if (dim < 1) throw std::invalid_argument("dimension must be at least 1");
  const RicianShape sh = rician_shape(kappa);
  Eigen::VectorXcd h(dim);
  for (int k = 0; k < dim; ++k) h[k] = rician_draw(sh, rng);
  return h;
}

Eigen::VectorXcd age_vector(const Eigen::VectorXcd& h_ref, double rho,
                            Rng& rng) {
  if (!(std::abs(rho) <= 1.0))
    throw std::invalid_argument("aging correlation must satisfy |rho| <= 1");
  const double rb = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  Eigen::VectorXcd out(h_ref.size());
  for (Eigen::Index k = 0; k < h_ref.size(); ++k)
    out[k] = rho * h_ref[k] + rb * rng.cnormal();
  return out;
}

// ---- batch sampling -------------------------------------------------------------

SampleBatch sample_g2a(const G2aSimSpec& spec, std::size_t n_samples,
                       std::uint64_t master_seed, std::uint64_t stream_id) {
  if (spec.m < 1)
    throw std::invalid_argument("antenna count must be at least 1");
  check_common(spec.rho, spec.p_los, n_samples);
  check_kappa(spec.kappa_los);
  check_positive_gain(spec.gbar_los, spec.gbar_nlos);

  SampleBatch batch;
  batch.hop = Hop::G2A;
  batch.master_seed = master_seed;
  batch.stream_id = stream_id;
  batch.snr.resize(n_samples);
  batch.los.resize(n_samples);

  const double rho = spec.rho;
  const double rb = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  const RicianShape sh_los = rician_shape(spec.kappa_los);
  const RicianShape sh_nlos = rician_shape(0.0);

  for_each_sample(n_samples, [&](std::size_t i) {
    Rng rng(master_seed, stream_id, i);
    const bool los = rng.uniform() <= spec.p_los;
    const RicianShape& sh = los ? sh_los : sh_nlos;
    const double gbar = los ? spec.gbar_los : spec.gbar_nlos;
    std::complex<double> dot = 0.0;
    double nrm2 = 0.0;
    // Per-element interleaving keeps the draw sequence a prefix-stable
    // function of the element index.
    for (int m = 0; m < spec.m; ++m) {
      const std::complex<double> hhat = rician_draw(sh, rng);
      const std::complex<double> h = rho * hhat + rb * rng.cnormal();
      dot += h * std::conj(hhat);
      nrm2 += std::norm(hhat);
    }
    batch.snr[i] = gbar * std::norm(dot) / nrm2;
    batch.los[i] = los ? 1 : 0;
  });
  return batch;
}

namespace {

void check_a2g_spec(const A2gSimSpec& spec, std::size_t n_samples) {
  if (spec.n < 1)
    throw std::invalid_argument("element count must be at least 1");
  if (spec.phase_bits < 0)
    throw std::invalid_argument("phase_bits must be nonnegative");
  check_common(spec.rho, spec.p_los, n_samples);
  check_kappa(spec.kappa_ur_los);
  check_kappa(spec.kappa_rd);
  check_positive_gain(spec.gbar_los, spec.gbar_nlos);
}

}  // namespace

SampleBatch sample_a2g(const A2gSimSpec& spec, std::size_t n_samples,
                       std::uint64_t master_seed, std::uint64_t stream_id) {
  check_a2g_spec(spec, n_samples);

  SampleBatch batch;
  batch.hop = Hop::A2G;
  batch.master_seed = master_seed;
  batch.stream_id = stream_id;
  batch.snr.resize(n_samples);
  batch.los.resize(n_samples);

  const double rho = spec.rho;
  const double rb = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  const RicianShape sh_ur_los = rician_shape(spec.kappa_ur_los);
  const RicianShape sh_ur_nlos = rician_shape(0.0);
  const RicianShape sh_rd = rician_shape(spec.kappa_rd);
  const int q_levels = spec.phase_bits > 0 ? (1 << spec.phase_bits) : 0;
  const double q_step = q_levels > 0 ? 2.0 * M_PI / q_levels : 0.0;

  for_each_sample(n_samples, [&](std::size_t i) {
    Rng rng(master_seed, stream_id, i);
    const bool los = rng.uniform() <= spec.p_los;
    const RicianShape& sh_ur = los ? sh_ur_los : sh_ur_nlos;
    const double gbar = los ? spec.gbar_los : spec.gbar_nlos;
    std::complex<double> acc = 0.0;
    for (int k = 0; k < spec.n; ++k) {
      const std::complex<double> ghat = rician_draw(sh_ur, rng);
      const std::complex<double> g = rician_draw(sh_rd, rng);
      const std::complex<double> h = rho * ghat + rb * rng.cnormal();
      double theta = -std::arg(g) - std::arg(ghat);
      if (q_levels > 0) theta = q_step * std::nearbyint(theta / q_step);
      acc += g * std::polar(1.0, theta) * h;
    }
    batch.snr[i] = gbar * std::norm(acc);
    batch.los[i] = los ? 1 : 0;
  });
  return batch;
}

SampleBatch sample_a2g_quadform(const A2gSimSpec& spec, std::size_t n_samples,
                                std::uint64_t master_seed,
                                std::uint64_t stream_id) {
  check_a2g_spec(spec, n_samples);

  SampleBatch batch;
  batch.hop = Hop::A2G;
  batch.master_seed = master_seed;
  batch.stream_id = stream_id;
  batch.snr.resize(n_samples);
  batch.los.resize(n_samples);

  const double rho = spec.rho;
  const double rb = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  const RicianShape sh_ur_los = rician_shape(spec.kappa_ur_los);
  const RicianShape sh_ur_nlos = rician_shape(0.0);
  const RicianShape sh_rd = rician_shape(spec.kappa_rd);

  for_each_sample(n_samples, [&](std::size_t i) {
    Rng rng(master_seed, stream_id, i);
    const bool los = rng.uniform() <= spec.p_los;
    const RicianShape& sh_ur = los ? sh_ur_los : sh_ur_nlos;
    const double gbar = los ? spec.gbar_los : spec.gbar_nlos;
    double prod = 0.0;
    double nrm2 = 0.0;
    for (int k = 0; k < spec.n; ++k) {
      const std::complex<double> ghat = rician_draw(sh_ur, rng);
      const std::complex<double> g = rician_draw(sh_rd, rng);
      prod += std::abs(g) * std::abs(ghat);
      nrm2 += std::norm(g);
    }
    // Aligned specular part plus a norm-scaled fresh Gaussian: the residual
    // of the aging innovation after the phase rotation.
    const std::complex<double> amp =
        rho * prod + rb * std::sqrt(nrm2) * rng.cnormal();
    batch.snr[i] = gbar * std::norm(amp);
    batch.los[i] = los ? 1 : 0;
  });
  return batch;
}

dists::ChiMoments estimate_chi_moments(int n_elements, double kappa_ur_est,
                                       double kappa_rd, double rho,
                                       std::size_t n_samples,
                                       std::uint64_t master_seed,
                                       std::uint64_t stream_id) {
  if (n_elements < 1)
    throw std::invalid_argument("element count must be at least 1");
  if (n_samples < 1)
    throw std::invalid_argument("sample count must be at least 1");
  check_kappa(kappa_ur_est);
  check_kappa(kappa_rd);
  const double r = std::abs(rho);
  if (!(r < 1.0))
    throw std::domain_error(
        "gain moments require |rho| < 1: the residual scale vanishes");

  const double rb = std::sqrt(1.0 - r * r);
  const RicianShape sh_ur = rician_shape(kappa_ur_est);
  const RicianShape sh_rd = rician_shape(kappa_rd);

  // Conditional means are kept per-sample and reduced sequentially so the
  // result is independent of the worker partition down to the last bit.
  std::vector<double> t(n_samples);
  for_each_sample(n_samples, [&](std::size_t i) {
    Rng rng(master_seed, stream_id, i);
    double prod = 0.0;
    double nrm2 = 0.0;
    for (int k = 0; k < n_elements; ++k) {
      const std::complex<double> ghat = rician_draw(sh_ur, rng);
      const std::complex<double> g = rician_draw(sh_rd, rng);
      prod += std::abs(g) * std::abs(ghat);
      nrm2 += std::norm(g);
    }
    t[i] = (r / rb) * prod / std::sqrt(nrm2);
  });

  dists::ChiMoments out;
  out.mu = mean(t);
  out.sigma2 = 1.0 + (n_samples > 1 ? variance(t) : 0.0);
  return out;
}

// ---- statistics -----------------------------------------------------------------

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples)
    : sorted_(std::move(samples)) {
  if (sorted_.empty())
    throw std::invalid_argument("empirical CDF needs at least one sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) /
         static_cast<double>(sorted_.size());
}

double ks_statistic(const std::vector<double>& samples,
                    const std::function<double(double)>& cdf) {
  if (samples.empty())
    throw std::invalid_argument("KS statistic needs at least one sample");
  std::vector<double> xs = samples;
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    sup = std::max(sup, f - static_cast<double>(i) / n);
    sup = std::max(sup, static_cast<double>(i + 1) / n - f);
  }
  return sup;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("KS statistic needs nonempty batches");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double sup = 0.0;
  while (i < a.size() || j < b.size()) {
    double v;
    if (i < a.size() && (j == b.size() || a[i] <= b[j]))
      v = a[i];
    else
      v = b[j];
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    sup = std::max(sup, std::abs(static_cast<double>(i) / na -
                                 static_cast<double>(j) / nb));
  }
  return sup;
}

OutageEstimate estimate_outage(const SampleBatch& g2a, const SampleBatch& a2g,
                               double gamma_th) {
  if (g2a.snr.empty() || g2a.snr.size() != a2g.snr.size())
    throw std::invalid_argument(
        "outage estimation needs equal-length nonempty paired batches");
  const std::size_t n = g2a.snr.size();
  std::size_t below = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (std::min(g2a.snr[i], a2g.snr[i]) < gamma_th) ++below;

  OutageEstimate out;
  out.n = n;
  out.p = static_cast<double>(below) / static_cast<double>(n);
  const double z = 1.959963984540054;  // two-sided 95%
  const double nn = static_cast<double>(n);
  const double denom = 1.0 + z * z / nn;
  out.ci_half = z *
                std::sqrt(out.p * (1.0 - out.p) / nn +
                          z * z / (4.0 * nn * nn)) /
                denom;
  return out;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("mean of an empty batch");
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

double variance(const std::vector<double>& v) {
  if (v.size() < 2)
    throw std::invalid_argument("variance needs at least two samples");
  const double m = mean(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return acc / static_cast<double>(v.size() - 1);
}

// ---- batch export ---------------------------------------------------------------

void write_batch_csv(const SampleBatch& batch, const std::string& csv_path,
                     const std::string& sidecar_path,
                     const std::string& config_hash) {
  if (batch.snr.size() != batch.los.size())
    throw std::invalid_argument("batch SNR and LOS columns disagree");
  const char* hop_name = batch.hop == Hop::G2A ? "G2A" : "A2G";

  std::string text;
  text.reserve(batch.snr.size() * 32 + 128);
  text += "# config_hash=";
  text += config_hash;
  text += " master_seed=";
  text += std::to_string(batch.master_seed);
  text += " stream_id=";
  text += std::to_string(batch.stream_id);
  text += " n=";
  text += std::to_string(batch.snr.size());
  text += "\nsample_index,hop,los_state,snr_linear\n";
  for (std::size_t i = 0; i < batch.snr.size(); ++i) {
    text += std::to_string(i);
    text += ',';
    text += hop_name;
    text += ',';
    text += batch.los[i] ? '1' : '0';
    text += ',';
    append_double(text, batch.snr[i]);
    text += '\n';
  }
  std::ofstream csv(csv_path, std::ios::binary | std::ios::trunc);
  if (!csv.good())
    throw std::runtime_error("cannot open CSV path: " + csv_path);
  csv << text;

  nlohmann::json side;
  side["config_hash"] = config_hash;
  side["hop"] = hop_name;
  side["master_seed"] = batch.master_seed;
  side["stream_id"] = batch.stream_id;
  side["n_samples"] = batch.snr.size();
  const int workers = worker_count();
  side["workers"] = workers;
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& [begin, end] : plan_partition(batch.snr.size(), workers)) {
    parts.push_back({{"begin", begin}, {"end", end}});
  }
  side["partition"] = parts;
  std::ofstream sc(sidecar_path, std::ios::binary | std::ios::trunc);
  if (!sc.good())
    throw std::runtime_error("cannot open sidecar path: " + sidecar_path);
  sc << side.dump(2) << '\n';
}

int worker_count() {
  if (const char* env = std::getenv("RISLINK_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024)
      return static_cast<int>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace rislink::mcsim
