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
#include "otfslab/diversity.hpp"
#include "otfslab/errors.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace otfs;
using namespace otfs::diversity;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

mc::BerCurve power_law_curve(double c, double order, const std::vector<double>& snr_db) {
    mc::BerCurve curve;
    for (double s : snr_db) {
        mc::BerPoint pt;
        pt.snr_db = s;
        pt.ber_mc = c * std::pow(std::pow(10.0, s / 10.0), -order);
        pt.ber_analytic = pt.ber_mc;
        curve.points.push_back(pt);
    }
    return curve;
}

} // namespace

TEST_CASE("empirical_gd of an exact power law", "[diversity]") {
    const auto curve = power_law_curve(0.3, 2.0, {0.0, 10.0, 20.0, 30.0});
    CHECK_THAT(empirical_gd(curve, 10.0, 20.0), WithinRel(2.0, 1e-12));
    CHECK_THAT(empirical_gd(curve, 0.0, 30.0, CurveColumn::analytic), WithinRel(2.0, 1e-12));
}

TEST_CASE("empirical_gd reproduces the reported slopes", "[diversity]") {
    CHECK_THAT(empirical_gd(0.07919, 10.0, 0.00903, 20.0), WithinAbs(0.94, 0.005));
    CHECK_THAT(empirical_gd(0.0181, 10.0, 0.0002918, 20.0), WithinAbs(1.78, 0.02));
}

TEST_CASE("empirical_gd is invariant to scaling the curve", "[diversity]") {
    for (double k : {1e-3, 0.5, 7.0}) {
        CHECK_THAT(empirical_gd(k * 0.07919, 10.0, k * 0.00903, 20.0),
                   WithinRel(empirical_gd(0.07919, 10.0, 0.00903, 20.0), 1e-12));
    }
}

TEST_CASE("empirical_gd errors", "[diversity]") {
    CHECK_THROWS_AS(empirical_gd(0.0, 10.0, 1e-3, 20.0), InsufficientErrors);
    CHECK_THROWS_AS(empirical_gd(1e-2, 10.0, 0.0, 20.0), InsufficientErrors);
    CHECK_THROWS_AS(empirical_gd(1e-2, 10.0, 1e-3, 10.0), DomainError);
    mc::BerCurve curve = power_law_curve(1.0, 1.0, {10.0, 20.0});
    curve.points[1].ber_mc.reset();
    CHECK_THROWS_AS(empirical_gd(curve, 10.0, 20.0), InsufficientErrors);
    CHECK_THROWS_AS(empirical_gd(curve, 10.0, 30.0), ConfigError);
}

TEST_CASE("diversity approximations", "[diversity]") {
    CHECK(siso_gd_approx({1.0}) == 1.0);
    CHECK(siso_gd_approx({1.0, 2.0}) == 2.0);
    CHECK(siso_gd_approx({2.0, 3.0, 4.0}) == 6.0);
    CHECK(simo_gd_approx(2, {1.0}) == 2.0);
    CHECK(simo_gd_approx(2, {2.0}) == 4.0);
    CHECK_THAT(simo_gd_approx(2, {2.0, 3.0}), WithinAbs(5.585, 1e-3));
    CHECK_THAT(simo_gd_approx(2, {2.0, 3.0}), WithinRel(2.0 * (2.0 + std::log2(3.0) / 2.0), 1e-15));
    CHECK_THROWS_AS(siso_gd_approx({}), ConfigError);
    CHECK_THROWS_AS(simo_gd_approx(0, {1.0}), ConfigError);
}

TEST_CASE("asymptotic analytic slope approaches P min(m) for P = 1", "[diversity]") {
    for (const char* name : {"siso-p1-m1", "siso-p1-m2"}) {
        auto c = io::preset(name);
        c.snr_db = {30.0, 40.0};
        const auto curve = mc::analytic_curve(c);
        std::vector<double> shapes;
        for (const auto& p : c.resolved_paths()) {
            shapes.push_back(p.m);
        }
        INFO(name);
        CHECK_THAT(empirical_gd(curve, 30.0, 40.0, CurveColumn::analytic), WithinAbs(siso_gd_approx(shapes), 0.25));
    }
}
