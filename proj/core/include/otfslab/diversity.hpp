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

#include "otfslab/montecarlo.hpp"

#include <string>
#include <vector>

namespace otfs::diversity {

enum class CurveColumn { monte_carlo, analytic };

/// -(log10 ber2 - log10 ber1) / (log10 g2 - log10 g1) with g the linear SNR.
/// InsufficientErrors when either BER is not positive.
double empirical_gd(double ber1, double snr1_db, double ber2, double snr2_db);

/// Slope between two points of a curve, read from the chosen column.
double empirical_gd(const mc::BerCurve& curve, double snr1_db, double snr2_db,
                    CurveColumn column = CurveColumn::monte_carlo);

/// P * min(m).
double siso_gd_approx(const std::vector<double>& shapes);

/// K_u [min(m) + log2(1 + P) / P * sum_p (m_p - min(m))] for P paths per branch.
double simo_gd_approx(int users, const std::vector<double>& shapes);

struct DiversityReport {
    std::string label;
    double snr1_db = 10.0;
    double snr2_db = 20.0;
    double gd_empirical = 0.0;
    double gd_approx = 0.0;
};

} // namespace otfs::diversity
