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

#include "otfslab/constellation.hpp"
#include "otfslab/fading.hpp"

#include <vector>

namespace otfs::analytic {

/// Constants of the SER approximation P_s(g) ~ A Q(sqrt(2 B g)).
struct ModErrorParams {
    double A = 1.0;
    double B = 1.0;
    int order = 2;

    double bits_per_symbol() const;
};

/// Tabulated (A, B) for a scheme and order. Orders must be powers of two;
/// fixed-order schemes (bpsk, bfsk, gmsk, dbpsk: 2, qpsk: 4) reject others.
ModErrorParams mod_params(Scheme scheme, int order);

/// Conditional SER A Q(sqrt(2 B g)) at instantaneous SNR g.
double conditional_ser(double snr, const ModErrorParams& mod);

/// Erlang(m, mu) density z^{m-1} e^{-z/mu} / (mu^m (m-1)!).
double erlang_pdf(double z, int m, double mu);
/// 1 - e^{-z/mu} sum_{i<m} (z/mu)^i / i!.
double erlang_cdf(double z, int m, double mu);

/// One component of the partial-fraction expansion of a sum of independent
/// Erlang variates: weight * Erlang(k, scale). `i` is the zero-based path.
struct GammaMixTerm {
    int i = 0;
    int k = 1;
    double weight = 1.0;
    double scale = 1.0;
    double weight_residual = 0.0; // exact weight minus `weight`, kept for cancellation-free sums
};

/// Mixture weights for Z = sum_q Erlang(m_q, mu_q). Scales must be pairwise
/// distinct (relative gap > 1e-9, otherwise DegeneracyError).
///
///   Xi_ik = (-1)^{R - m_i} mu_i^k / prod_h mu_h^{m_h}
///           * sum_{j in C(m_i - k)} prod_{q != i} binom(m_q + j_q - 1, j_q)
///                                    (1/mu_i - 1/mu_q)^{-(m_q + j_q)}
///
/// with R = sum m_q and C(n) the compositions of n over the other paths.
/// Evaluated in 50-digit arithmetic and rounded.
std::vector<GammaMixTerm> xi_coefficients(const std::vector<int>& shapes, const std::vector<double>& scales);

/// Mixture density and CDF, summed in 50-digit arithmetic because the
/// weights alternate in sign and can be large when scales are close.
double mixture_pdf(const std::vector<GammaMixTerm>& terms, double z);
double mixture_cdf(const std::vector<GammaMixTerm>& terms, double z);

/// Integer Nakagami shapes of the paths (DomainError for non-integer m).
std::vector<int> integer_shapes(const std::vector<PathSpec>& paths);
/// mu_i = es_n0 * omega_i / m_i.
std::vector<double> snr_scales(double es_n0, const std::vector<PathSpec>& paths);

/// Average SER of the combined SNR sum_p es_n0 |h_p|^2 through A Q(sqrt(2 B g)).
/// Each mixture term contributes (A/2) Xi T_k(mu) with
///   T_k = sqrt(a) sum_{l >= k} binom(2l, l) 4^{-l} b^l,  a = B mu / (B mu + 1),  b = 1 - a,
/// the finite C / D integral difference written without cancellation.
double siso_ser(double es_n0, const std::vector<PathSpec>& paths, const ModErrorParams& mod);

/// siso_ser / log2(order), clamped to [0, min(1, A/2)].
double siso_ber(double es_n0, const std::vector<PathSpec>& paths, const ModErrorParams& mod);

} // namespace otfs::analytic
