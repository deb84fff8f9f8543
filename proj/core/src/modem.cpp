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

#include "otfslab/modem.hpp"

#include "otfslab/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace otfs {

namespace {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

void require_shape(const CMatrix& m, Eigen::Index rows, Eigen::Index cols, const char* what) {
    if (m.rows() != rows || m.cols() != cols) {
        throw ShapeError(std::string(what) + ": expected " + std::to_string(rows) + "x" + std::to_string(cols) +
                         ", got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

void require_length(const CVector& v, Eigen::Index n, const char* what) {
    if (v.size() != n) {
        throw ShapeError(std::string(what) + ": expected length " + std::to_string(n) + ", got " +
                         std::to_string(v.size()));
    }
}

} // namespace

OtfsGrid OtfsGrid::make(int M, int N, double delta_f) {
    OtfsGrid g;
    g.M = M;
    g.N = N;
    g.delta_f = delta_f;
    g.T = 1.0 / delta_f;
    g.validate();
    return g;
}

void OtfsGrid::validate() const {
    if (M < 1 || N < 1) {
        throw ConfigError("grid dimensions M and N must be >= 1");
    }
    if (!(std::isfinite(delta_f) && delta_f > 0.0)) {
        throw ConfigError("subcarrier spacing must be positive");
    }
    if (std::abs(T * delta_f - 1.0) > 1e-9) {
        throw ConfigError("symbol duration must equal 1 / subcarrier spacing");
    }
    if (pulse != Pulse::rectangular) {
        throw ConfigError("only rectangular pulses are supported");
    }
}

CVector DdFrame::vectorized() const {
    return Eigen::Map<const CVector>(symbols.data(), symbols.size());
}

DdFrame DdFrame::from_vector(const CVector& v, int M, int N) {
    require_length(v, static_cast<Eigen::Index>(M) * N, "from_vector");
    DdFrame f;
    f.symbols = Eigen::Map<const CMatrix>(v.data(), M, N);
    return f;
}

CMatrix dft_matrix(int n) {
    if (n < 1) {
        throw ShapeError("DFT size must be >= 1");
    }
    CMatrix F(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const long long e = (static_cast<long long>(a) * b) % n;
            F(a, b) = std::polar(scale, -2.0 * std::numbers::pi * static_cast<double>(e) / n);
        }
    }
    return F;
}

CMatrix isfft(const CMatrix& dd) {
    const auto M = static_cast<int>(dd.rows());
    const auto N = static_cast<int>(dd.cols());
    if (M < 1 || N < 1) {
        throw ShapeError("isfft: empty grid");
    }
    return dft_matrix(N).adjoint() * dd.transpose() * dft_matrix(M);
}

CMatrix sfft(const CMatrix& tf) {
    const auto N = static_cast<int>(tf.rows());
    const auto M = static_cast<int>(tf.cols());
    if (M < 1 || N < 1) {
        throw ShapeError("sfft: empty grid");
    }
    return (dft_matrix(N) * tf * dft_matrix(M).adjoint()).transpose();
}

CVector build_tx_vector(const DdFrame& frame, const OtfsGrid& grid) {
    grid.validate();
    require_shape(frame.symbols, grid.M, grid.N, "build_tx_vector");
    // (F_N^H kron I_M) vec(X) = vec(X conj(F_N)) since F_N is symmetric.
    const CMatrix s = frame.symbols * dft_matrix(grid.N).conjugate();
    return Eigen::Map<const CVector>(s.data(), s.size());
}

CMatrix permutation_matrix(int size, int shift) {
    if (size < 1) {
        throw ShapeError("permutation size must be >= 1");
    }
    const int l = ((shift % size) + size) % size;
    CMatrix P = CMatrix::Zero(size, size);
    for (int n = 0; n < size; ++n) {
        P(n, (n - l + size) % size) = 1.0;
    }
    return P;
}

CMatrix doppler_matrix(int size, double exponent) {
    if (size < 1) {
        throw ShapeError("Doppler matrix size must be >= 1");
    }
    CMatrix D = CMatrix::Zero(size, size);
    for (int n = 0; n < size; ++n) {
        // Reduce the phase modulo 2 pi in integer-friendly form.
        const double cycles = std::fmod(exponent * n, static_cast<double>(size));
        D(n, n) = std::polar(1.0, 2.0 * std::numbers::pi * cycles / size);
    }
    return D;
}

ChannelMatrices build_channel_matrix(const std::vector<PathTap>& paths, const OtfsGrid& grid) {
    grid.validate();
    if (paths.empty()) {
        throw ConfigError("channel requires at least one path");
    }
    const int n = grid.size();
    ChannelMatrices ch;
    ch.H = CMatrix::Zero(n, n);
    for (const auto& p : paths) {
        if (p.delay < 0 || p.delay >= n) {
            throw ConfigError("path delay index must lie in [0, MN)");
        }
        if (!(p.fractional_doppler >= -0.5 && p.fractional_doppler < 0.5)) {
            throw ConfigError("fractional Doppler must lie in [-0.5, 0.5)");
        }
        const double exponent = p.doppler + p.fractional_doppler;
        // Pi^l Delta^e: row r picks column (r - l) mod n scaled by alpha^{e (r - l)}.
        for (int r = 0; r < n; ++r) {
            const int c = (r - p.delay + n) % n;
            const double cycles = std::fmod(exponent * c, static_cast<double>(n));
            ch.H(r, c) += p.gain * std::polar(1.0, 2.0 * std::numbers::pi * cycles / n);
        }
    }
    const CMatrix T = kron(dft_matrix(grid.N), CMatrix::Identity(grid.M, grid.M));
    ch.H_eff = T * ch.H * T.adjoint();
    return ch;
}

CVector otfs_link(const DdFrame& frame, const ChannelMatrices& channel, const CVector& noise, const OtfsGrid& grid) {
    grid.validate();
    const int n = grid.size();
    require_shape(frame.symbols, grid.M, grid.N, "otfs_link frame");
    require_shape(channel.H_eff, n, n, "otfs_link channel");
    require_length(noise, n, "otfs_link noise");
    const CMatrix T = kron(dft_matrix(grid.N), CMatrix::Identity(grid.M, grid.M));
    return channel.H_eff * frame.vectorized() + T * noise;
}

CMatrix ofdm_effective_channel(const CMatrix& H, const OtfsGrid& grid) {
    grid.validate();
    require_shape(H, grid.size(), grid.size(), "ofdm_effective_channel");
    const CMatrix T = kron(CMatrix::Identity(grid.N, grid.N), dft_matrix(grid.M));
    return T * H * T.adjoint();
}

CVector ofdm_link(const DdFrame& frame, const CMatrix& H, const CVector& noise, const OtfsGrid& grid) {
    grid.validate();
    require_shape(frame.symbols, grid.M, grid.N, "ofdm_link frame");
    require_length(noise, grid.size(), "ofdm_link noise");
    const CMatrix T = kron(CMatrix::Identity(grid.N, grid.N), dft_matrix(grid.M));
    return ofdm_effective_channel(H, grid) * frame.vectorized() + T * noise;
}

void check_search_space(int order, int dimension, double hypothesis_cap) {
    const double required = std::pow(static_cast<double>(order), dimension);
    if (required > hypothesis_cap) {
        throw CapacityError(required, hypothesis_cap);
    }
}

MlDetector::MlDetector(const Constellation& constellation, int dimension, double hypothesis_cap)
    : constellation_(&constellation), n_(dimension) {
    if (dimension < 1) {
        throw ShapeError("detector dimension must be >= 1");
    }
    check_search_space(constellation.order, dimension, hypothesis_cap);
    hypotheses_ = std::pow(static_cast<double>(constellation.order), dimension);
    column_products_.resize(static_cast<std::size_t>(n_) * constellation.order * n_);
    residuals_.resize(static_cast<std::size_t>(n_ + 1) * n_);
    current_.resize(n_);
}

void MlDetector::detect(const CMatrix& H, const CVector& y, std::vector<int>& out) {
    if (H.rows() != n_ || H.cols() != n_) {
        throw ShapeError("detector channel has the wrong shape");
    }
    require_length(y, n_, "detector observation");
    const int order = constellation_->order;
    const auto& pts = constellation_->points;
    const std::size_t n = static_cast<std::size_t>(n_);

    for (int j = 0; j < n_; ++j) {
        for (int s = 0; s < order; ++s) {
            cd* dst = &column_products_[(static_cast<std::size_t>(j) * order + s) * n];
            for (int r = 0; r < n_; ++r) {
                dst[r] = H(r, j) * pts[s];
            }
        }
    }
    for (int r = 0; r < n_; ++r) {
        residuals_[r] = y(r);
    }
    auto descend = [&](int from) {
        for (int j = from; j < n_; ++j) {
            const cd* prev = &residuals_[j * n];
            cd* next = &residuals_[(j + 1) * n];
            const cd* col = &column_products_[(static_cast<std::size_t>(j) * order + current_[j]) * n];
            for (std::size_t r = 0; r < n; ++r) {
                next[r] = prev[r] - col[r];
            }
        }
    };

    std::fill(current_.begin(), current_.end(), 0);
    descend(0);
    out.assign(n, 0);
    double best = std::numeric_limits<double>::infinity();
    const cd* leaf = &residuals_[n * n];
    while (true) {
        double metric = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            metric += std::norm(leaf[r]);
        }
        if (metric < best) {
            best = metric;
            std::copy(current_.begin(), current_.end(), out.begin());
        }
        int d = n_ - 1;
        while (d >= 0 && current_[d] == order - 1) {
            current_[d] = 0;
            --d;
        }
        if (d < 0) {
            break;
        }
        ++current_[d];
        descend(d);
    }
}

Detection ml_detect(const CVector& y, const CMatrix& H_eff, const Constellation& constellation,
                    double hypothesis_cap) {
    const auto n = static_cast<int>(H_eff.cols());
    if (H_eff.rows() != n) {
        throw ShapeError("effective channel must be square");
    }
    MlDetector detector(constellation, n, hypothesis_cap);
    Detection d;
    detector.detect(H_eff, y, d.indices);
    d.symbols.resize(n);
    for (int i = 0; i < n; ++i) {
        d.symbols(i) = constellation.points[d.indices[i]];
    }
    return d;
}

} // namespace otfs
