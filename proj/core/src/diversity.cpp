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

#include "otfslab/diversity.hpp"

#include "otfslab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace otfs::diversity {

double empirical_gd(double ber1, double snr1_db, double ber2, double snr2_db) {
    if (!(ber1 > 0.0) || !(ber2 > 0.0)) {
        throw InsufficientErrors("diversity slope needs a positive BER at both SNR points");
    }
    if (!std::isfinite(snr1_db) || !std::isfinite(snr2_db) || snr1_db == snr2_db) {
        throw DomainError("diversity slope needs two distinct finite SNR points");
    }
    // log10 of the linear SNR is dB / 10
    return -(std::log10(ber2) - std::log10(ber1)) / ((snr2_db - snr1_db) / 10.0);
}

double empirical_gd(const mc::BerCurve& curve, double snr1_db, double snr2_db, CurveColumn column) {
    const auto& p1 = curve.at(snr1_db);
    const auto& p2 = curve.at(snr2_db);
    const auto& b1 = column == CurveColumn::monte_carlo ? p1.ber_mc : p1.ber_analytic;
    const auto& b2 = column == CurveColumn::monte_carlo ? p2.ber_mc : p2.ber_analytic;
    if (!b1 || !b2) {
        throw InsufficientErrors("curve lacks the requested BER column at one of the SNR points");
    }
    return empirical_gd(*b1, snr1_db, *b2, snr2_db);
}

double siso_gd_approx(const std::vector<double>& shapes) {
    if (shapes.empty()) {
        throw ConfigError("at least one path is required");
    }
    return static_cast<double>(shapes.size()) * *std::min_element(shapes.begin(), shapes.end());
}

double simo_gd_approx(int users, const std::vector<double>& shapes) {
    if (shapes.empty() || users < 1) {
        throw ConfigError("need at least one user and one path");
    }
    const double P = static_cast<double>(shapes.size());
    const double m_min = *std::min_element(shapes.begin(), shapes.end());
    double excess = 0.0;
    for (double m : shapes) {
        excess += m - m_min;
    }
    return users * (m_min + std::log2(1.0 + P) / P * excess);
}

} // namespace otfs::diversity
