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

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace otfs {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

enum class Pulse { rectangular };

/// Delay-Doppler grid: M delay bins, N Doppler bins, subcarrier spacing
/// delta_f and symbol duration T = 1 / delta_f.
struct OtfsGrid {
    int M = 2;
    int N = 2;
    double delta_f = 15e3;
    double T = 1.0 / 15e3;
    Pulse pulse = Pulse::rectangular;

    static OtfsGrid make(int M, int N, double delta_f);
    int size() const { return M * N; }
    void validate() const;
};

/// Delay-Doppler symbol grid. symbols(l, k) holds x[k, l]; the vectorized
/// form stacks columns, so x[k, l] sits at index l + M k.
struct DdFrame {
    CMatrix symbols;

    CVector vectorized() const;
    static DdFrame from_vector(const CVector& v, int M, int N);
};

/// One resolvable path: complex gain, integer delay index, integer Doppler
/// index plus fractional offset in [-0.5, 0.5).
struct PathTap {
    cd gain{1.0, 0.0};
    int delay = 0;
    int doppler = 0;
    double fractional_doppler = 0.0;
};

struct ChannelMatrices {
    CMatrix H;     // time domain
    CMatrix H_eff; // delay-Doppler domain
};

/// Unitary DFT matrix, F(a, b) = exp(-j 2 pi a b / n) / sqrt(n).
CMatrix dft_matrix(int n);

/// ISFFT of an M x N delay-Doppler grid into an N x M time-frequency grid:
/// X[n, m] = (MN)^{-1/2} sum_{k,l} x[k, l] exp(j 2 pi (n k / N - m l / M)).
CMatrix isfft(const CMatrix& dd);
/// Inverse of isfft.
CMatrix sfft(const CMatrix& tf);

/// s = (F_N^H kron I_M) vec(X).
CVector build_tx_vector(const DdFrame& frame, const OtfsGrid& grid);

/// Cyclic shift: (Pi^shift x)[n] = x[(n - shift) mod size].
CMatrix permutation_matrix(int size, int shift);
/// diag(alpha^{exponent n}), alpha = exp(j 2 pi / size).
CMatrix doppler_matrix(int size, double exponent);

/// H = sum_p h_p Pi^{l_p} Delta^{k_p + kappa_p} and its delay-Doppler form.
ChannelMatrices build_channel_matrix(const std::vector<PathTap>& paths, const OtfsGrid& grid);

/// y = H_eff x + (F_N kron I_M) w.
CVector otfs_link(const DdFrame& frame, const ChannelMatrices& channel, const CVector& noise, const OtfsGrid& grid);

/// (I_N kron F_M) H (I_N kron F_M^H).
CMatrix ofdm_effective_channel(const CMatrix& H, const OtfsGrid& grid);

/// Symbols placed directly on the time-frequency grid (one column per OFDM
/// symbol); y = H_ofdm x + (I_N kron F_M) w.
CVector ofdm_link(const DdFrame& frame, const CMatrix& H, const CVector& noise, const OtfsGrid& grid);

struct Detection {
    std::vector<int> indices;
    CVector symbols;
};

constexpr double kDefaultHypothesisCap = 1048576.0; // 2^20

/// Exhaustive ML search for argmin ||y - H x||^2 over all x in A^n.
/// Hypotheses are visited in lexicographic symbol-index order and only a
/// strictly smaller metric replaces the incumbent, so ties resolve to the
/// lowest index sequence.
class MlDetector {
  public:
    MlDetector(const Constellation& constellation, int dimension, double hypothesis_cap = kDefaultHypothesisCap);

    /// Writes the detected symbol indices into `out` (resized to dimension).
    void detect(const CMatrix& H, const CVector& y, std::vector<int>& out);

    double hypotheses() const { return hypotheses_; }

  private:
    const Constellation* constellation_;
    int n_;
    double hypotheses_;
    std::vector<cd> column_products_; // [(j * order + s) * n + row]
    std::vector<cd> residuals_;       // (n + 1) stacked residual vectors
    std::vector<int> current_;
};

/// Throws CapacityError when |A|^n exceeds the cap.
void check_search_space(int order, int dimension, double hypothesis_cap);

Detection ml_detect(const CVector& y, const CMatrix& H_eff, const Constellation& constellation,
                    double hypothesis_cap = kDefaultHypothesisCap);

} // namespace otfs
