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

#include "otfslab/analytic.hpp"
#include "otfslab/fading.hpp"

#include <cstdint>
#include <vector>

namespace otfs::analytic {

/// Paths of one interfering user.
using UserPaths = std::vector<PathSpec>;

struct SinrMoments {
    double mu_S = 0.0;
    double sigma2_S = 0.0;
};

/// Moment-matched Gamma(m_z, omega_z) model of the interference power S.
struct SinrGammaApprox {
    double mu_S = 0.0;
    double sigma2_S = 0.0;
    double m_z = 1.0;
    double omega_z = 1.0;
};

/// mu_S = es_n0 sum omega, sigma2_S = es_n0^2 sum omega^2 / m over every
/// path of every interferer. No interferers gives zeros.
SinrMoments sinr_moments(double es_n0, const std::vector<UserPaths>& interferers);

/// m_z = mu^2 / sigma^2, omega_z = sigma^2 / mu. sigma2_S = 0 raises
/// DegeneracyError: there is no interference and the caller should use
/// interference_free_ber.
SinrGammaApprox gamma_approx(double mu_S, double sigma2_S);

/// CDF of the SINR es_n0 / (1 + S) for 0 < y <= es_n0:
///   F(y) = Gamma(m_z, (es_n0 / y - 1) / omega_z) / Gamma(m_z)   (regularized upper)
/// and F(y) = 1 for y >= es_n0.
double sinr_cdf(double y, double es_n0, const SinrGammaApprox& approx);

/// The lower-incomplete form gamma(m_z, (es_n0 / y - 1) / omega_z) / Gamma(m_z).
/// It equals P[SINR > y], i.e. 1 - sinr_cdf.
double sinr_lower_gamma_form(double y, double es_n0, const SinrGammaApprox& approx);

/// Density of the SINR on (0, es_n0].
double sinr_pdf(double y, double es_n0, const SinrGammaApprox& approx);

/// Average SER (A sqrt(B) / (2 sqrt(pi))) int_0^inf y^{-1/2} e^{-B y} F(y) dy.
double multiuser_ser(double es_n0, const SinrGammaApprox& approx, const ModErrorParams& mod);

/// multiuser_ser / log2(order).
double multiuser_ber(double es_n0, const SinrGammaApprox& approx, const ModErrorParams& mod);

/// Independent route: E_S[A Q(sqrt(2 B es_n0 / (1 + S)))] / log2(order) with
/// S ~ Gamma(m_z, omega_z), integrated over the interference density.
double multiuser_ber_interference_average(double es_n0, const SinrGammaApprox& approx, const ModErrorParams& mod);

/// (A / (2 log2 order)) G^{3,1}_{2,3}(es_n0 / omega_z | 1 - m_z, 1 ; 0, 1 - m_z, 1/2).
double multiuser_ber_closed_form(double es_n0, const SinrGammaApprox& approx, const ModErrorParams& mod);

/// A Q(sqrt(2 B es_n0)) / log2(order).
double interference_free_ber(double es_n0, const ModErrorParams& mod);

struct MultiuserEvaluation {
    double ber = 0.0;
    bool interference_free = false; // no interferers: deterministic-SINR formula used
    SinrGammaApprox approx;
};

/// Moment matching plus multiuser_ber, routed to interference_free_ber when
/// the interferer list carries no power.
MultiuserEvaluation evaluate_multiuser(double es_n0, const std::vector<UserPaths>& interferers,
                                       const ModErrorParams& mod);

struct SemiAnalyticResult {
    double ber = 0.0;
    double standard_error = 0.0;
    std::uint64_t trials = 0;
};

/// Samples the interference sum, maps each draw through A Q(sqrt(2 B SINR))
/// and averages. Trials are drawn in fixed blocks of 4096, block b using the
/// stream (seed, domain 3, b), so results do not depend on call order.
SemiAnalyticResult semi_analytic_mc_ber(double es_n0, const std::vector<UserPaths>& interferers,
                                        const ModErrorParams& mod, std::uint64_t seed, std::uint64_t trials);

} // namespace otfs::analytic
