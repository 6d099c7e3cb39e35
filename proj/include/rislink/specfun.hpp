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

#ifndef RISLINK_SPECFUN_HPP
#define RISLINK_SPECFUN_HPP

// Scalar special-function kernels used by the link-statistics layers.
// Everything here is plain double precision; functions throw
// std::domain_error on arguments outside the stated domain.

namespace rislink::specfun {

// Bessel function of the first kind, order zero. Defined for all real x.
double bessel_j0(double x);

// Modified Bessel function of the first kind, real order nu > -1, x >= 0.
// bessel_i overflows to +inf for large x; use the scaled or log form there.
double bessel_i(double nu, double x);
double bessel_i_scaled(double nu, double x);  // e^{-x} I_nu(x), finite for all x
double log_bessel_i(double nu, double x);

// Modified Bessel function of the second kind, real order (symmetric in nu),
// x > 0. bessel_k underflows for large x and overflows for tiny x at large
// order; the log form is exact in both regimes and is what the distribution
// series consume.
double bessel_k(double nu, double x);
double bessel_k_scaled(double nu, double x);  // e^{x} K_nu(x)
double log_bessel_k(double nu, double x);

// log Gamma(x) for x > 0.
double log_gamma(double x);

// Regularized incomplete gamma functions, a > 0, x >= 0. P + Q = 1.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Generalized Marcum Q of real order m >= 1 with a, b >= 0, and its exact
// complement (the non-central chi-square CDF with 2m degrees of freedom and
// non-centrality a^2, evaluated at b^2). Both sides are accumulated from the
// same Poisson-weighted incomplete-gamma window so marcum_q + marcum_p = 1
// holds to machine precision.
double marcum_q(double m, double a, double b);
double marcum_p(double m, double a, double b);

// Laguerre polynomial of degree 1/2 at x <= 0 (the Rician mean-envelope
// kernel). laguerre_half(0) = 1; grows like 2 sqrt(-x/pi) as x -> -inf.
double laguerre_half(double x);

// Gaussian right tail Q(x) and its inverse on p in (0, 1).
double gaussian_q(double x);
double gaussian_q_inv(double p);

}  // namespace rislink::specfun

#endif  // RISLINK_SPECFUN_HPP
