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

#include "rislink/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rislink::quad {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double simpson_rec(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double whole, double tol,
                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  // The second test is a relative noise floor: once the defect sits at the
  // rounding level of the panel sums, further splitting cannot improve it.
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol ||
      std::fabs(delta) <= 1e-13 * (std::fabs(left) + std::fabs(right))) {
    return left + right + delta / 15.0;
  }
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

double inverse_laplace(
    const std::function<std::complex<double>(std::complex<double>)>& F,
    double t, int nodes) {
  if (!(t > 0.0)) {
    throw std::domain_error("inverse_laplace: t must be > 0");
  }
  if (nodes < 4) throw std::domain_error("inverse_laplace: too few nodes");
  // Fixed Talbot contour: s(theta) = r theta (cot theta + i) with
  // r = 2 nodes / (5 t); the theta = 0 node degenerates to s = r.
  const double r = 2.0 * nodes / (5.0 * t);
  double sum = 0.5 * std::exp(r * t) * F(std::complex<double>(r, 0.0)).real();
  for (int k = 1; k < nodes; ++k) {
    const double theta = k * kPi / nodes;
    const double cot = std::cos(theta) / std::sin(theta);
    const std::complex<double> s(r * theta * cot, r * theta);
    const double sigma = theta + (theta * cot - 1.0) * cot;
    const std::complex<double> weight(1.0, sigma);
    sum += (std::exp(s * t) * F(s) * weight).real();
  }
  return sum * r / nodes;
}

CdfGrid::CdfGrid(const std::function<double(double)>& pdf, double x_hi,
                 int cells) {
  if (!(x_hi > 0.0) || cells < 1) {
    throw std::domain_error("CdfGrid: need x_hi > 0 and cells >= 1");
  }
  step_ = x_hi / cells;
  cum_.resize(size_t(cells) + 1);
  cum_[0] = 0.0;
  double left = pdf(0.0);
  for (int i = 0; i < cells; ++i) {
    const double x0 = i * step_;
    const double mid = pdf(x0 + 0.5 * step_);
    const double right = pdf(x0 + step_);
    const double inc = step_ / 6.0 * (left + 4.0 * mid + right);
    cum_[size_t(i) + 1] = cum_[size_t(i)] + std::max(0.0, inc);
    left = right;
  }
}

double CdfGrid::operator()(double x) const {
  if (x <= 0.0) return 0.0;
  const double cells = double(cum_.size() - 1);
  const double pos = x / step_;
  if (pos >= cells) return std::min(1.0, cum_.back());
  const size_t i = size_t(pos);
  const double frac = pos - double(i);
  const double v = cum_[i] + (cum_[i + 1] - cum_[i]) * frac;
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace rislink::quad
