// SPDX-License-Identifier: Apache-2.0
//
// otfslab - OTFS/OFDM link-level simulation and BER analysis over Nakagami-m fading
// Copyright (C) 2026 The otfslab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <functional>

namespace otfs::specfun {

/// ln Gamma(x) for x > 0.
double ln_gamma(double x);

/// Regularized incomplete Gamma functions P(s, x) and Q(s, x) = 1 - P(s, x).
/// Real shape s > 0 is supported; evaluation uses the power series below
/// x < s + 1 and a Lentz continued fraction above, with the prefactor
/// x^s e^{-x} / Gamma(s) accumulated in the log domain.
double regularized_lower_gamma(double s, double x);
double regularized_upper_gamma(double s, double x);

/// Non-regularized forms: gamma(s, x) and Gamma(s, x).
double lower_incomplete_gamma(double s, double x);
double upper_incomplete_gamma(double s, double x);

/// Gaussian tail probability Q(x) = P[N(0,1) > x].
double q_function(double x);

/// n!! for n >= -1, with (-1)!! = 0!! = 1. Throws DomainError when the
/// result does not fit in 64 bits.
std::uint64_t double_factorial(int n);

/// Tolerances for the adaptive Gauss-Kronrod integrator.
struct QuadratureSpec {
    double absolute_tolerance = 1e-14;
    double relative_tolerance = 1e-12;
    int max_subdivisions = 4000;

    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
};

using Integrand = std::function<double(double)>;

/// Adaptive G7/K15 quadrature of f over the finite interval [a, b].
/// Throws NumericError (carrying the best estimate and bound) when the
/// tolerance is not met within max_subdivisions.
QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec = {});

/// Integral of f over [0, inf). The substitution y = scale * t^2 removes an
/// integrable y^{-1/2} endpoint singularity before t is mapped onto [0, 1).
/// `scale` should be of the order of the integrand's decay length.
QuadratureResult integrate_semi_infinite(const Integrand& f, const QuadratureSpec& spec = {}, double scale = 1.0);

/// Integral of f over [a, inf) for a smooth integrand (no endpoint singularity).
QuadratureResult integrate_tail(const Integrand& f, double a, const QuadratureSpec& spec = {}, double scale = 1.0);

/// Meijer G^{3,1}_{2,3}(x | 1-m, 1 ; 0, 1-m, 1/2) for x > 0, m > 0.
///
/// Reference path: the Mellin-convolution representation
///   G = sqrt(pi) x^{1-m} \int_0^inf u^{m-1} erfc(sqrt(u)) / (u + x) du,
/// integrated numerically.
double meijer_g_2313(double x, double m);

/// Residue-series evaluation of the same function. Defined only when the
/// lower parameters {0, 1-m, 1/2} do not differ by integers, i.e. when 2m is
/// not an integer; throws DomainError otherwise. Loses accuracy for large x
/// through cancellation, so it is meant as a cross-check for x <~ 10.
double meijer_g_2313_series(double x, double m);

} // namespace otfs::specfun
