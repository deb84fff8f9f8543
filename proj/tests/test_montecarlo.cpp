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
#include "otfslab/config.hpp"
#include "otfslab/errors.hpp"
#include "otfslab/montecarlo.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace otfs;
using namespace otfs::mc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

void check_same(const BerCurve& a, const BerCurve& b) {
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].bit_errors == b.points[i].bit_errors);
        CHECK(a.points[i].bits == b.points[i].bits);
        CHECK(a.points[i].ber_mc == b.points[i].ber_mc);
        CHECK(a.points[i].ci_low == b.points[i].ci_low);
        CHECK(a.points[i].ci_high == b.points[i].ci_high);
    }
}

} // namespace

TEST_CASE("wilson_interval examples", "[mc][wilson]") {
    CHECK(wilson_interval(std::uint64_t{0}, std::uint64_t{100}).low == 0.0);
    const auto mid = wilson_interval(std::uint64_t{50}, std::uint64_t{100});
    CHECK_THAT(0.5 - mid.low, WithinAbs(mid.high - 0.5, 1e-3));
    CHECK(mid.low < 0.5);
    CHECK(mid.high > 0.5);
    // Textbook value for 10/100 at 95%: (0.0552, 0.1744).
    const auto ten = wilson_interval(std::uint64_t{10}, std::uint64_t{100});
    CHECK_THAT(ten.low, WithinAbs(0.0552, 5e-4));
    CHECK_THAT(ten.high, WithinAbs(0.1744, 5e-4));
    CHECK(wilson_interval(std::uint64_t{100}, std::uint64_t{100}).high == 1.0);
    CHECK_THROWS_AS(wilson_interval(std::uint64_t{5}, std::uint64_t{0}), DomainError);
    CHECK_THROWS_AS(wilson_interval(std::uint64_t{11}, std::uint64_t{10}), DomainError);
    CHECK_THROWS_AS(wilson_interval(1.0, 10.0, 1.5), DomainError);
}

TEST_CASE("wilson_interval coverage at p = 1e-2", "[mc][wilson]") {
    std::mt19937_64 gen(51);
    const double p = 1e-2;
    const std::uint64_t n = 2000;
    std::binomial_distribution<std::uint64_t> draw(n, p);
    int covered = 0;
    const int experiments = 10000;
    for (int e = 0; e < experiments; ++e) {
        const auto ci = wilson_interval(draw(gen), n);
        covered += (ci.low <= p && p <= ci.high) ? 1 : 0;
    }
    CHECK(covered >= 0.93 * experiments);
}

TEST_CASE("noise-free frames have no errors", "[mc]") {
    SweepConfig c = io::preset("fig2-m12");
    c.noise_free = true;
    c.snr_db = {0.0, 10.0, 20.0};
    c.max_frames = 2048;
    const auto curve = run_sweep(c);
    for (const auto& pt : curve.points) {
        CHECK(*pt.bit_errors == 0);
        CHECK(*pt.bits == pt.frames * 4 * 2);
        CHECK(*pt.ci_low == 0.0);
    }
}

TEST_CASE("BPSK Rayleigh at 20 dB is near 2.44e-3", "[mc][slow]") {
    SweepConfig c = io::preset("fig1-m1");
    c.snr_db = {20.0};
    c.max_frames = 524288;
    c.target_bit_errors = 1000000000;
    const auto curve = run_sweep(c);
    const auto& pt = curve.points.front();
    CHECK(pt.frames >= 500000);
    CHECK_THAT(*pt.ber_mc, WithinRel(2.44e-3, 0.15));
    CHECK(*pt.ci_low <= *pt.ber_analytic);
    CHECK(*pt.ber_analytic <= *pt.ci_high);
}

TEST_CASE("sweep invariants and monotone smoke check", "[mc]") {
    SweepConfig c = io::preset("fig1-m1");
    const auto curve = run_sweep(c);
    REQUIRE(curve.points.size() == c.snr_db.size());
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        const auto& pt = curve.points[i];
        CHECK(*pt.ci_low <= *pt.ber_mc);
        CHECK(*pt.ber_mc <= *pt.ci_high);
        CHECK(*pt.bits == pt.frames * static_cast<std::uint64_t>(c.grid.size()));
        CHECK(*pt.ber_mc == static_cast<double>(*pt.bit_errors) / static_cast<double>(*pt.bits));
        CHECK(pt.ber_analytic.has_value());
        if (i > 0) {
            CHECK(*pt.ber_mc <= 1.2 * *curve.points[i - 1].ber_mc);
        }
    }
}

TEST_CASE("output does not depend on the worker count", "[mc][determinism]") {
    SweepConfig c = io::preset("fig2-m12");
    c.snr_db = {0.0, 8.0, 16.0};
    c.batch_frames = 256;
    c.workers = 1;
    const auto one = run_sweep(c);
    c.workers = 4;
    const auto four = run_sweep(c);
    c.workers = 8;
    const auto eight = run_sweep(c);
    check_same(one, four);
    check_same(one, eight);
    c.master_seed = 2;
    const auto other = run_sweep(c);
    CHECK(other.points[0].bit_errors != one.points[0].bit_errors);
}

TEST_CASE("OTFS and OFDM frames share realizations", "[mc][paired]") {
    SweepConfig c = io::preset("fig2-m12");
    for (std::uint64_t f = 0; f < 50; ++f) {
        c.waveform = Waveform::otfs;
        const auto a = simulate_frame(c, 12.0, f);
        c.waveform = Waveform::ofdm;
        const auto b = simulate_frame(c, 12.0, f);
        CHECK(a.gains == b.gains);
        CHECK(a.sent == b.sent);
        CHECK(a.noise == b.noise);
    }
    CHECK(frame_stream_index(12.0, 3) != frame_stream_index(12.0, 4));
    CHECK(frame_stream_index(12.0, 3) != frame_stream_index(14.0, 3));
}

TEST_CASE("analytic_curve leaves the Monte Carlo columns empty", "[mc]") {
    const auto curve = analytic_curve(io::preset("fig1-m2"));
    for (const auto& pt : curve.points) {
        CHECK_FALSE(pt.ber_mc.has_value());
        CHECK_FALSE(pt.bit_errors.has_value());
        CHECK(pt.ber_analytic.has_value());
    }
}

TEST_CASE("single-user multi-user mode routes to the interference-free rate", "[mc][simo]") {
    SweepConfig c = io::preset("fig3-k1");
    REQUIRE(c.users == 1);
    std::vector<std::string> warnings;
    const auto v = analytic_point(c, 10.0, &warnings);
    REQUIRE(v.has_value());
    const auto mod = analytic::mod_params(c.scheme, c.order);
    CHECK_THAT(*v, WithinRel(analytic::interference_free_ber(10.0, mod), 1e-12));
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].rfind("users = 1", 0) == 0);
}

TEST_CASE("config validation", "[mc]") {
    SweepConfig c;
    c.snr_db = {10.0, 5.0};
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.workers = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.paths = {};
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.grid = OtfsGrid::make(4, 4, 15e3);
    c.scheme = Scheme::qpsk;
    c.order = 4;
    CHECK_THROWS_AS(run_sweep(c), CapacityError);
}
