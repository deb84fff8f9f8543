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

#include "otfslab/errors.hpp"
#include "otfslab/specfun.hpp"

#include <cmath>
#include <numbers>

namespace otfs::specfun {

namespace {

void check_meijer_args(double x, double m) {
    if (!std::isfinite(x) || !std::isfinite(m)) {
        throw DomainError("Meijer-G arguments must be finite");
    }
    if (x <= 0.0 || m <= 0.0) {
        throw DomainError("Meijer-G requires x > 0 and m > 0");
    }
}

// Integral over [0, inf) split at `knee` so the 1/(t^2 + x) peak near the
// origin is resolved separately from the erfc tail.
double split_integral(const Integrand& f, double knee, const QuadratureSpec& spec) {
    if (knee <= 0.0 || knee > 6.0) {
        return integrate_tail(f, 0.0, spec, 1.0).value;
    }
    const double head = integrate(f, 0.0, knee, spec).value;
    const double tail = integrate_tail(f, knee, spec, 1.0).value;
    return head + tail;
}

} // namespace

double meijer_g_2313(double x, double m) {
    check_meijer_args(x, m);
    QuadratureSpec spec;
    spec.absolute_tolerance = 1e-300;
    spec.relative_tolerance = 1e-13;
    spec.max_subdivisions = 20000;

    const double sqrt_pi = std::sqrt(std::numbers::pi);
    const double log_prefactor = (1.0 - m) * std::log(x);
    double integral = 0.0;
    if (m >= 0.5) {
        // u = t^2
        auto f = [x, m](double t) {
            if (t == 0.0) {
                return m == 0.5 ? 1.0 / x : 0.0;
            }
            return std::pow(t, 2.0 * m - 1.0) * std::erfc(t) / (t * t + x);
        };
        integral = 2.0 * split_integral(f, std::sqrt(x), spec);
    } else {
        // u = v^{1/m}; the Jacobian cancels u^{m-1} exactly.
        const double inv_m = 1.0 / m;
        auto f = [x, inv_m](double v) {
            return std::erfc(std::pow(v, 0.5 * inv_m)) / (std::pow(v, inv_m) + x);
        };
        integral = inv_m * split_integral(f, std::pow(x, m), spec);
    }
    return sqrt_pi * std::exp(log_prefactor) * integral;
}

double meijer_g_2313_series(double x, double m) {
    check_meijer_args(x, m);
    const double two_m = 2.0 * m;
    if (std::abs(two_m - std::round(two_m)) < 1e-12) {
        throw DomainError("series path is undefined when 2m is an integer");
    }
    constexpr double pi = std::numbers::pi;
    constexpr int max_terms = 100000;
    constexpr double eps = 1e-17;

    // 2F2(1, 1-m; 2-m, 3/2-m; x)
    double hyper = 1.0;
    double term = 1.0;
    for (int n = 0; n < max_terms; ++n) {
        term *= x * (1.0 - m + n) / ((2.0 - m + n) * (1.5 - m + n));
        hyper += term;
        if (std::abs(term) < eps * std::abs(hyper) && n > x) {
            break;
        }
    }

    // sum_n x^n / ((2n + 1) n!)
    double odd = 1.0;
    double power = 1.0;
    for (int n = 1; n < max_terms; ++n) {
        power *= x / n;
        const double t = power / (2.0 * n + 1.0);
        odd += t;
        if (t < eps * odd && n > x) {
            break;
        }
    }

    const double residue_zero = std::sqrt(pi) * pi / std::sin(pi * m);
    const double residue_shift = std::tgamma(m - 0.5) / (m - 1.0) * std::pow(x, 1.0 - m) * hyper;
    const double residue_half = -2.0 * pi / std::cos(pi * m) * std::sqrt(x) * odd;
    return residue_zero + residue_shift + residue_half;
}

} // namespace otfs::specfun
