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

#include "oracles.hpp"

#include "otfslab/analytic.hpp"
#include "otfslab/errors.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace otfs;
using namespace otfs::analytic;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double db(double x) { return std::pow(10.0, x / 10.0); }

} // namespace

TEST_CASE("mod_params table", "[analytic]") {
    const auto bpsk = mod_params(Scheme::bpsk, 2);
    CHECK(bpsk.A == 1.0);
    CHECK(bpsk.B == 1.0);
    const auto qpsk = mod_params(Scheme::qpsk, 4);
    CHECK(qpsk.A == 2.0);
    CHECK(qpsk.B == 0.5);
    CHECK(qpsk.bits_per_symbol() == 2.0);
    const auto qam = mod_params(Scheme::mqam, 16);
    CHECK_THAT(qam.A, WithinRel(3.0, 1e-15));
    CHECK_THAT(qam.B, WithinRel(0.1, 1e-15));
    const auto psk8 = mod_params(Scheme::mpsk, 8);
    CHECK_THAT(psk8.B, WithinRel(std::pow(std::sin(std::numbers::pi / 8.0), 2), 1e-15));
    const auto fsk = mod_params(Scheme::mfsk, 8);
    CHECK(fsk.A == 7.0);
    const auto pam = mod_params(Scheme::mpam, 4);
    CHECK_THAT(pam.A, WithinRel(1.5, 1e-15));
    CHECK_THAT(pam.B, WithinRel(0.2, 1e-15));
    CHECK(mod_params(Scheme::dbpsk, 2).A == 2.0);
    CHECK(mod_params(Scheme::bfsk, 2).B == 0.5);

    CHECK_THROWS_AS(mod_params(Scheme::qpsk, 8), ConfigError);
    CHECK_THROWS_AS(mod_params(Scheme::mfsk, 2), ConfigError);
    CHECK_THROWS_AS(mod_params(Scheme::mqam, 8), ConfigError);
    CHECK_THROWS_AS(mod_params(Scheme::mpsk, 6), ConfigError);
}

TEST_CASE("erlang pdf and cdf", "[analytic]") {
    CHECK_THAT(erlang_pdf(0.0, 1, 2.5), WithinRel(0.4, 1e-15));
    CHECK(erlang_cdf(0.0, 3, 1.0) == 0.0);
    CHECK_THAT(erlang_cdf(1e6, 3, 1.0), WithinAbs(1.0, 1e-15));
    for (int m = 1; m <= 5; ++m) {
        boost::math::quadrature::exp_sinh<double> rule;
        const double mass = rule.integrate([&](double z) { return erlang_pdf(z, m, 0.7); }, 0.0,
                                           std::numeric_limits<double>::infinity(), 1e-14);
        CHECK_THAT(mass, WithinRel(1.0, 1e-12));
    }
    // Finite sum 1 - e^{-x} sum_{i<m} x^i / i! = 1 - Gamma(m, x)/(m-1)!.
    std::mt19937_64 gen(21);
    std::uniform_real_distribution<double> uz(0.0, 20.0);
    std::uniform_int_distribution<int> um(1, 6);
    for (int n = 0; n < 100; ++n) {
        const int m = um(gen);
        const double mu = 0.5 + uz(gen) / 4.0;
        const double z = uz(gen);
        const double x = z / mu;
        double sum = 0.0;
        double term = 1.0;
        for (int i = 0; i < m; ++i) {
            sum += term;
            term *= x / (i + 1);
        }
        CHECK_THAT(erlang_cdf(z, m, mu), WithinAbs(1.0 - std::exp(-x) * sum, 1e-14));
    }
    CHECK_THROWS_AS(erlang_pdf(-1.0, 1, 1.0), DomainError);
    CHECK_THROWS_AS(erlang_cdf(1.0, 0, 1.0), DomainError);
    CHECK_THROWS_AS(erlang_cdf(1.0, 1, 0.0), DomainError);
}

TEST_CASE("xi_coefficients: P = 1 is a single unit term", "[analytic][xi]") {
    const auto t = xi_coefficients({2}, {0.5});
    REQUIRE(t.size() == 1);
    CHECK(t[0].weight == 1.0);
    CHECK(t[0].k == 2);
    CHECK(t[0].scale == 0.5);
}

TEST_CASE("xi_coefficients: P = 2 mixture equals numerical convolution", "[analytic][xi]") {
    const auto terms = xi_coefficients({1, 2}, {1.0, 0.4});
    for (int i = 1; i <= 200; ++i) {
        const double z = 0.05 * i;
        const double ref = oracle::gamma_sum_pdf({1.0, 2.0}, {1.0, 0.4}, z);
        CHECK_THAT(mixture_pdf(terms, z), WithinAbs(ref, 1e-6));
    }
}

TEST_CASE("xi_coefficients: P = 3 density integrates to one", "[analytic][xi]") {
    const auto terms = xi_coefficients({1, 2, 3}, {1.3, 0.4, 0.75});
    boost::math::quadrature::exp_sinh<double> rule;
    const double mass = rule.integrate([&](double z) { return mixture_pdf(terms, z); }, 0.0,
                                       std::numeric_limits<double>::infinity(), 1e-14);
    CHECK_THAT(mass, WithinAbs(1.0, 1e-8));
}

TEST_CASE("xi mixtures are complete and non-negative", "[analytic][xi]") {
    std::mt19937_64 gen(22);
    std::uniform_int_distribution<int> um(1, 4);
    std::uniform_int_distribution<int> up(1, 3);
    std::uniform_real_distribution<double> us(0.1, 5.0);
    for (int n = 0; n < 40; ++n) {
        const int P = up(gen);
        std::vector<int> shapes;
        std::vector<double> scales;
        for (int p = 0; p < P; ++p) {
            shapes.push_back(um(gen));
            scales.push_back(us(gen) * (1.0 + 0.2 * p));
        }
        const auto terms = xi_coefficients(shapes, scales);
        double largest = 0.0;
        for (const auto& t : terms) {
            largest = std::max(largest, std::abs(t.weight));
        }
        INFO("largest |weight| " << largest);
        CHECK_THAT(mixture_cdf(terms, std::numeric_limits<double>::infinity()), WithinAbs(1.0, 1e-9));
        double mean = 0.0;
        for (int p = 0; p < P; ++p) {
            mean += shapes[p] * scales[p];
        }
        for (int i = 0; i < 1000; ++i) {
            const double z = 4.0 * mean * i / 1000.0;
            CHECK(mixture_pdf(terms, z) >= -1e-10);
        }
    }
}

TEST_CASE("xi_coefficients preconditions", "[analytic][xi]") {
    CHECK_THROWS_AS(xi_coefficients({1, 2}, {0.5, 0.5}), DegeneracyError);
    CHECK_THROWS_AS(xi_coefficients({1, 2}, {0.5, 0.5 * (1.0 + 1e-12)}), DegeneracyError);
    CHECK_THROWS_AS(xi_coefficients({0}, {0.5}), DomainError);
    CHECK_THROWS_AS(xi_coefficients({1, 2}, {0.5}), ShapeError);
    CHECK_THROWS_AS(xi_coefficients({}, {}), ConfigError);
    CHECK_THROWS_AS(integer_shapes({PathSpec{1.5, 1.0}}), DomainError);
}

TEST_CASE("siso_ber: Rayleigh BPSK closed form", "[analytic]") {
    const auto bpsk = mod_params(Scheme::bpsk, 2);
    for (double g : {1.0, 10.0, 100.0}) {
        const double ref = 0.5 * (1.0 - std::sqrt(g / (1.0 + g)));
        CHECK_THAT(siso_ber(g, {PathSpec{1.0, 1.0}}, bpsk), WithinRel(ref, 1e-9));
    }
}

TEST_CASE("siso_ber anchors at 20 dB", "[analytic]") {
    const auto bpsk = mod_params(Scheme::bpsk, 2);
    CHECK_THAT(siso_ber(100.0, {PathSpec{1.0, 1.0}}, bpsk), WithinRel(2.44e-3, 0.10));
    CHECK_THAT(siso_ber(100.0, {PathSpec{2.0, 1.0}}, bpsk), WithinRel(7.4e-5, 0.15));
}

TEST_CASE("siso_ber equals quadrature of the SER integral with the mixture CDF", "[analytic][oracle]") {
    std::mt19937_64 gen(23);
    std::uniform_int_distribution<int> um(1, 4);
    std::uniform_int_distribution<int> up(1, 3);
    std::uniform_real_distribution<double> uo(0.2, 1.0);
    std::uniform_real_distribution<double> usnr(-5.0, 30.0);
    const ModErrorParams mods[] = {mod_params(Scheme::bpsk, 2), mod_params(Scheme::qpsk, 4),
                                   mod_params(Scheme::mqam, 16)};
    int checked = 0;
    while (checked < 60) {
        const int P = up(gen);
        std::vector<PathSpec> paths;
        for (int p = 0; p < P; ++p) {
            paths.push_back(PathSpec{static_cast<double>(um(gen)), uo(gen), p, 0});
        }
        const double g = db(usnr(gen));
        const auto scales = snr_scales(g, paths);
        bool separated = true;
        for (int a = 0; a < P; ++a) {
            for (int b = a + 1; b < P; ++b) {
                separated = separated && std::abs(scales[a] / scales[b] - 1.0) > 0.05;
            }
        }
        if (!separated) {
            continue;
        }
        const auto& mod = mods[checked % 3];
        std::vector<double> shape;
        for (const auto& p : paths) {
            shape.push_back(p.m);
        }
        const double ref = oracle::ser_from_cdf(mod.A, mod.B, [&](double y) {
            return oracle::gamma_sum_cdf(shape, scales, y);
        });
        CHECK_THAT(siso_ser(g, paths, mod), WithinRel(ref, 1e-8));
        ++checked;
    }
}

TEST_CASE("siso_ber is monotone over a 30-point sweep", "[analytic]") {
    const auto qpsk = mod_params(Scheme::qpsk, 4);
    const std::vector<PathSpec> paths{{1.0, 2.0 / 3.0, 0, 0}, {2.0, 1.0 / 3.0, 1, 0}, {3.0, 0.25, 2, 0}};
    double prev = 1.0;
    for (int i = 0; i < 30; ++i) {
        const double b = siso_ber(db(-5.0 + 1.5 * i), paths, qpsk);
        CHECK(b <= prev);
        CHECK(b >= 0.0);
        prev = b;
    }
}

TEST_CASE("siso_ber rejects degenerate path scales", "[analytic]") {
    const auto qpsk = mod_params(Scheme::qpsk, 4);
    // Same Omega / m on both paths gives equal scales.
    CHECK_THROWS_AS(siso_ber(10.0, {PathSpec{1.0, 0.5, 0, 0}, PathSpec{2.0, 1.0, 1, 0}}, qpsk), DegeneracyError);
}
