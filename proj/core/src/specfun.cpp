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

#include "otfslab/specfun.hpp"

#include "otfslab/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

#if defined(__GLIBC__)
extern "C" double lgamma_r(double, int*);
#endif

namespace otfs::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIterations = 100000;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw DomainError(std::string(what) + " must be finite");
    }
}

// ln of x^s e^{-x} / Gamma(s)
double log_prefactor(double s, double x) { return s * std::log(x) - x - ln_gamma(s); }

double lower_series(double s, double x) {
    double ap = s;
    double term = 1.0 / s;
    double sum = term;
    for (int n = 0; n < kMaxIterations; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) {
            return sum * std::exp(log_prefactor(s, x));
        }
    }
    throw NumericError("incomplete gamma series did not converge", sum * std::exp(log_prefactor(s, x)),
                       std::abs(term));
}

double upper_continued_fraction(double s, double x) {
    constexpr double tiny = std::numeric_limits<double>::min() / kEps;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIterations; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) {
            d = tiny;
        }
        c = b + an / c;
        if (std::abs(c) < tiny) {
            c = tiny;
        }
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) {
            return h * std::exp(log_prefactor(s, x));
        }
    }
    throw NumericError("incomplete gamma continued fraction did not converge", h * std::exp(log_prefactor(s, x)),
                       std::numeric_limits<double>::infinity());
}

void check_incomplete_args(double s, double x) {
    require_finite(s, "shape");
    if (std::isnan(x)) {
        throw DomainError("argument must not be NaN");
    }
    if (s <= 0.0) {
        throw DomainError("incomplete gamma requires shape > 0");
    }
    if (x < 0.0) {
        throw DomainError("incomplete gamma requires argument >= 0");
    }
}

} // namespace

double ln_gamma(double x) {
    require_finite(x, "ln_gamma argument");
    if (x <= 0.0) {
        throw DomainError("ln_gamma requires x > 0");
    }
#if defined(__GLIBC__)
    int sign = 0;
    return lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

double regularized_lower_gamma(double s, double x) {
    check_incomplete_args(s, x);
    if (x == 0.0) {
        return 0.0;
    }
    if (std::isinf(x)) {
        return 1.0;
    }
    if (x < s + 1.0) {
        return lower_series(s, x);
    }
    return 1.0 - upper_continued_fraction(s, x);
}

double regularized_upper_gamma(double s, double x) {
    check_incomplete_args(s, x);
    if (x == 0.0) {
        return 1.0;
    }
    if (std::isinf(x)) {
        return 0.0;
    }
    if (x < s + 1.0) {
        return 1.0 - lower_series(s, x);
    }
    return upper_continued_fraction(s, x);
}

double lower_incomplete_gamma(double s, double x) {
    return regularized_lower_gamma(s, x) * std::exp(ln_gamma(s));
}

double upper_incomplete_gamma(double s, double x) {
    return regularized_upper_gamma(s, x) * std::exp(ln_gamma(s));
}

double q_function(double x) {
    if (std::isnan(x)) {
        throw DomainError("q_function argument is NaN");
    }
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

std::uint64_t double_factorial(int n) {
    if (n < -1) {
        throw DomainError("double factorial requires n >= -1");
    }
    std::uint64_t result = 1;
    for (int k = n; k > 1; k -= 2) {
        const auto factor = static_cast<std::uint64_t>(k);
        if (result > std::numeric_limits<std::uint64_t>::max() / factor) {
            throw DomainError(std::to_string(n) + "!! overflows 64 bits");
        }
        result *= factor;
    }
    return result;
}

} // namespace otfs::specfun
