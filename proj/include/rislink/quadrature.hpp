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

#ifndef RISLINK_QUADRATURE_HPP
#define RISLINK_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <vector>

namespace rislink::quad {

// Adaptive Simpson integration of f over [a, b] to absolute tolerance tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-10, int max_depth = 40);

// Numerical inverse Laplace transform by the fixed Talbot contour.
// F must be analytic to the right of its singularities (all on the negative
// real axis for the transforms used here). nodes = 32 reaches roughly 1e-10
// relative accuracy for smooth densities before rounding dominates.
double inverse_laplace(
    const std::function<std::complex<double>(std::complex<double>)>& F,
    double t, int nodes = 32);

// Piecewise-linear CDF built by cumulative Simpson integration of a density
// over [0, x_hi] on a uniform grid. eval() clamps to [0, 1] and returns the
// accumulated total at x >= x_hi.
class CdfGrid {
 public:
  CdfGrid(const std::function<double(double)>& pdf, double x_hi, int cells);
  double operator()(double x) const;
  double total() const { return cum_.back(); }

 private:
  double step_;
  std::vector<double> cum_;
};

}  // namespace rislink::quad

#endif  // RISLINK_QUADRATURE_HPP
