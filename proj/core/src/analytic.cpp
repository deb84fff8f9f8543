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

#include "otfslab/analytic.hpp"

#include "otfslab/errors.hpp"
#include "otfslab/specfun.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <bit>
#include <numbers>
#include <cmath>
#include <functional>
#include <string>

namespace otfs::analytic {

namespace {

using Real = boost::multiprecision::cpp_bin_float_50;

struct TermR {
    int i;
    int k;
    Real weight;
    Real scale;
};

bool is_power_of_two(int n) { return n >= 2 && std::has_single_bit(static_cast<unsigned>(n)); }

Real binomial(int n, int k) {
    Real r = 1;
    for (int j = 1; j <= k; ++j) {
        r = r * (n - k + j) / j;
    }
    return r;
}

void check_mixture_inputs(const std::vector<int>& shapes, const std::vector<double>& scales) {
    if (shapes.empty()) {
        throw ConfigError("at least one path is required");
    }
    if (shapes.size() != scales.size()) {
        throw ShapeError("shapes and scales differ in length");
    }
    for (std::size_t q = 0; q < shapes.size(); ++q) {
        if (shapes[q] < 1) {
            throw DomainError("Erlang shapes must be integers >= 1");
        }
        if (!(std::isfinite(scales[q]) && scales[q] > 0.0)) {
            throw DomainError("Erlang scales must be finite and positive");
        }
    }
    for (std::size_t a = 0; a < scales.size(); ++a) {
        for (std::size_t b = a + 1; b < scales.size(); ++b) {
            const double gap = std::abs(scales[a] - scales[b]);
            if (gap <= 1e-9 * std::max(scales[a], scales[b])) {
                throw DegeneracyError("paths " + std::to_string(a) + " and " + std::to_string(b) +
                                      " have equal SNR scales; the partial-fraction expansion requires "
                                      "pairwise distinct scales");
            }
        }
    }
}

std::vector<TermR> xi_terms(const std::vector<int>& shapes, const std::vector<double>& scales) {
    check_mixture_inputs(shapes, scales);
    const int P = static_cast<int>(shapes.size());
    if (P == 1) {
        return {{0, shapes[0], Real(1), Real(scales[0])}};
    }
    int R = 0;
    Real scale_product = 1;
    for (int q = 0; q < P; ++q) {
        R += shapes[q];
        scale_product *= boost::multiprecision::pow(Real(scales[q]), shapes[q]);
    }

    std::vector<TermR> terms;
    for (int i = 0; i < P; ++i) {
        const Real inv_i = 1 / Real(scales[i]);
        std::vector<Real> diff(P);
        std::vector<int> others;
        for (int q = 0; q < P; ++q) {
            if (q != i) {
                diff[q] = inv_i - 1 / Real(scales[q]);
                others.push_back(q);
            }
        }
        const Real sign = ((R - shapes[i]) % 2 == 0) ? Real(1) : Real(-1);
        for (int k = 1; k <= shapes[i]; ++k) {
            // Sum over compositions of (m_i - k) across the other paths.
            Real total = 0;
            std::function<void(std::size_t, int, Real)> walk = [&](std::size_t pos, int remaining, Real acc) {
                const int q = others[pos];
                if (pos + 1 == others.size()) {
                    const int j = remaining;
                    total += acc * binomial(shapes[q] + j - 1, j) / boost::multiprecision::pow(diff[q], shapes[q] + j);
                    return;
                }
                for (int j = 0; j <= remaining; ++j) {
                    walk(pos + 1, remaining - j,
                         acc * binomial(shapes[q] + j - 1, j) / boost::multiprecision::pow(diff[q], shapes[q] + j));
                }
            };
            walk(0, shapes[i] - k, Real(1));
            const Real weight = sign * boost::multiprecision::pow(Real(scales[i]), k) / scale_product * total;
            terms.push_back({i, k, weight, Real(scales[i])});
        }
    }
    return terms;
}

// sqrt(a) sum_{l >= k} binom(2l, l) 4^{-l} b^l with a = B mu / (B mu + 1).
Real erlang_q_average(int k, const Real& mu, const Real& B) {
    const Real a = B * mu / (B * mu + 1);
    const Real b = 1 / (B * mu + 1);
    const Real sqrt_a = boost::multiprecision::sqrt(a);
    const Real eps = std::numeric_limits<Real>::epsilon();
    Real c = 1;  // binom(2l, l) / 4^l
    Real bl = 1; // b^l
    if (b < Real(0.5)) {
        for (int l = 0; l < k; ++l) {
            c = c * (2 * l + 1) / (2 * l + 2);
            bl *= b;
        }
        Real sum = 0;
        for (int l = k; l < 100000; ++l) {
            const Real term = c * bl;
            sum += term;
            if (term < eps * sum) {
                break;
            }
            c = c * (2 * l + 1) / (2 * l + 2);
            bl *= b;
        }
        return sqrt_a * sum;
    }
    Real head = 0;
    for (int l = 0; l < k; ++l) {
        head += c * bl;
        c = c * (2 * l + 1) / (2 * l + 2);
        bl *= b;
    }
    return 1 - sqrt_a * head;
}

Real erlang_pdf_hp(const Real& z, int k, const Real& mu) {
    if (z == 0) {
        return k == 1 ? 1 / mu : Real(0);
    }
    Real log_fact = 0;
    for (int j = 2; j < k; ++j) {
        log_fact += boost::multiprecision::log(Real(j));
    }
    return boost::multiprecision::exp((k - 1) * boost::multiprecision::log(z) - z / mu -
                                      k * boost::multiprecision::log(mu) - log_fact);
}

// 1 - e^{-x} sum_{i<k} x^i / i!, or the complementary series when x is small.
Real erlang_cdf_hp(const Real& z, int k, const Real& mu) {
    const Real x = z / mu;
    if (x < k) {
        // e^{-x} sum_{i>=k} x^i / i!
        Real term = 1;
        for (int i = 1; i <= k; ++i) {
            term *= x / i;
        }
        Real sum = 0;
        const Real eps = std::numeric_limits<Real>::epsilon();
        for (int i = k; i < k + 100000; ++i) {
            sum += term;
            term *= x / (i + 1);
            if (term < eps * sum) {
                break;
            }
        }
        return boost::multiprecision::exp(-x) * sum;
    }
    Real term = 1;
    Real sum = 0;
    for (int i = 0; i < k; ++i) {
        sum += term;
        term *= x / (i + 1);
    }
    return 1 - boost::multiprecision::exp(-x) * sum;
}

} // namespace

double ModErrorParams::bits_per_symbol() const { return std::log2(static_cast<double>(order)); }

ModErrorParams mod_params(Scheme scheme, int order) {
    auto fixed = [&](int required, double A, double B) {
        if (order != required) {
            throw ConfigError(to_string(scheme) + " is listed only for order " + std::to_string(required));
        }
        return ModErrorParams{A, B, order};
    };
    if (!is_power_of_two(order)) {
        throw ConfigError("modulation order must be a power of two >= 2");
    }
    const double pi = std::numbers::pi;
    const double M = order;
    switch (scheme) {
    case Scheme::bpsk: return fixed(2, 1.0, 1.0);
    case Scheme::bfsk: return fixed(2, 1.0, 0.5);
    case Scheme::gmsk: return fixed(2, 1.0, 1.0);
    case Scheme::qpsk: return fixed(4, 2.0, 0.5);
    case Scheme::dbpsk: return fixed(2, 2.0, 0.5);
    case Scheme::mdepsk:
    case Scheme::mpsk: {
        const double s = std::sin(pi / M);
        return {2.0, s * s, order};
    }
    case Scheme::mdpsk: {
        const double s = std::sin(pi / (2.0 * M));
        return {2.0, s * s, order};
    }
    case Scheme::mfsk:
        if (order <= 2) {
            throw ConfigError("fsk is listed for order > 2");
        }
        return {M - 1.0, 0.5, order};
    case Scheme::mqam: {
        const double side = std::sqrt(M);
        if (order < 4 || side != std::floor(side)) {
            throw ConfigError("square qam requires a square order >= 4");
        }
        return {4.0 * (1.0 - 1.0 / side), 1.5 / (M - 1.0), order};
    }
    case Scheme::mpam: return {2.0 * (M - 1.0) / M, 3.0 / (M * M - 1.0), order};
    }
    throw ConfigError("unlisted modulation scheme");
}

double conditional_ser(double snr, const ModErrorParams& mod) {
    if (!(snr >= 0.0)) {
        throw DomainError("instantaneous SNR must be non-negative");
    }
    return mod.A * specfun::q_function(std::sqrt(2.0 * mod.B * snr));
}

double erlang_pdf(double z, int m, double mu) {
    if (m < 1 || !(mu > 0.0) || !std::isfinite(mu) || !(z >= 0.0)) {
        throw DomainError("erlang_pdf requires z >= 0, m >= 1, mu > 0");
    }
    if (std::isinf(z)) {
        return 0.0;
    }
    if (z == 0.0) {
        return m == 1 ? 1.0 / mu : 0.0;
    }
    return std::exp((m - 1) * std::log(z) - z / mu - m * std::log(mu) - specfun::ln_gamma(m));
}

double erlang_cdf(double z, int m, double mu) {
    if (m < 1 || !(mu > 0.0) || !std::isfinite(mu) || !(z >= 0.0)) {
        throw DomainError("erlang_cdf requires z >= 0, m >= 1, mu > 0");
    }
    return specfun::regularized_lower_gamma(m, z / mu);
}

std::vector<GammaMixTerm> xi_coefficients(const std::vector<int>& shapes, const std::vector<double>& scales) {
    const auto hp = xi_terms(shapes, scales);
    std::vector<GammaMixTerm> out;
    out.reserve(hp.size());
    for (const auto& t : hp) {
        const double w = static_cast<double>(t.weight);
        out.push_back({t.i, t.k, w, static_cast<double>(t.scale), static_cast<double>(t.weight - w)});
    }
    return out;
}

double mixture_pdf(const std::vector<GammaMixTerm>& terms, double z) {
    if (!(z >= 0.0)) {
        throw DomainError("mixture_pdf requires z >= 0");
    }
    if (std::isinf(z)) {
        return 0.0;
    }
    Real sum = 0;
    for (const auto& t : terms) {
        erlang_pdf(z, t.k, t.scale); // argument checks
        sum += (Real(t.weight) + t.weight_residual) * erlang_pdf_hp(Real(z), t.k, Real(t.scale));
    }
    return static_cast<double>(sum);
}

double mixture_cdf(const std::vector<GammaMixTerm>& terms, double z) {
    if (!(z >= 0.0)) {
        throw DomainError("mixture_cdf requires z >= 0");
    }
    Real sum = 0;
    for (const auto& t : terms) {
        const Real w = Real(t.weight) + t.weight_residual;
        sum += std::isinf(z) ? w : w * erlang_cdf_hp(Real(z), t.k, Real(t.scale));
    }
    return static_cast<double>(sum);
}

std::vector<int> integer_shapes(const std::vector<PathSpec>& paths) {
    std::vector<int> shapes;
    shapes.reserve(paths.size());
    for (const auto& p : paths) {
        if (!(p.m >= 1.0) || p.m != std::floor(p.m) || p.m > 1e6) {
            throw DomainError("the closed-form analysis requires integer Nakagami shapes m >= 1");
        }
        shapes.push_back(static_cast<int>(p.m));
    }
    return shapes;
}

std::vector<double> snr_scales(double es_n0, const std::vector<PathSpec>& paths) {
    if (!(std::isfinite(es_n0) && es_n0 > 0.0)) {
        throw DomainError("Es/N0 must be finite and positive");
    }
    std::vector<double> scales;
    scales.reserve(paths.size());
    for (const auto& p : paths) {
        validate_path_spec(p);
        scales.push_back(es_n0 * p.omega / p.m);
    }
    return scales;
}

double siso_ser(double es_n0, const std::vector<PathSpec>& paths, const ModErrorParams& mod) {
    const auto shapes = integer_shapes(paths);
    const auto scales = snr_scales(es_n0, paths);
    const auto terms = xi_terms(shapes, scales);
    const Real B(mod.B);
    Real sum = 0;
    for (const auto& t : terms) {
        sum += t.weight * erlang_q_average(t.k, t.scale, B);
    }
    return mod.A / 2.0 * static_cast<double>(sum);
}

double siso_ber(double es_n0, const std::vector<PathSpec>& paths, const ModErrorParams& mod) {
    const double ber = siso_ser(es_n0, paths, mod) / mod.bits_per_symbol();
    return std::clamp(ber, 0.0, std::min(1.0, 0.5 * mod.A));
}

} // namespace otfs::analytic
