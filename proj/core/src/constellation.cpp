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

#include "otfslab/constellation.hpp"

#include "otfslab/errors.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace otfs {

namespace {

std::uint32_t gray(std::uint32_t i) { return i ^ (i >> 1); }

bool is_power_of_two(int n) { return n >= 2 && std::has_single_bit(static_cast<unsigned>(n)); }

// Gray-labelled PAM levels 2i - (L - 1), i = 0..L-1, unnormalized.
void pam_axis(int levels, std::vector<double>& amplitude, std::vector<std::uint32_t>& label) {
    amplitude.resize(levels);
    label.resize(levels);
    for (int i = 0; i < levels; ++i) {
        amplitude[i] = 2.0 * i - (levels - 1);
        label[i] = gray(static_cast<std::uint32_t>(i));
    }
}

} // namespace

Scheme parse_scheme(std::string_view name) {
    if (name == "bpsk") return Scheme::bpsk;
    if (name == "qpsk") return Scheme::qpsk;
    if (name == "psk") return Scheme::mpsk;
    if (name == "qam") return Scheme::mqam;
    if (name == "pam") return Scheme::mpam;
    if (name == "fsk") return Scheme::mfsk;
    if (name == "dpsk") return Scheme::mdpsk;
    if (name == "dbpsk") return Scheme::dbpsk;
    if (name == "depsk") return Scheme::mdepsk;
    if (name == "bfsk") return Scheme::bfsk;
    if (name == "gmsk") return Scheme::gmsk;
    throw ConfigError("unknown modulation scheme '" + std::string(name) + "'");
}

std::string to_string(Scheme scheme) {
    switch (scheme) {
    case Scheme::bpsk: return "bpsk";
    case Scheme::qpsk: return "qpsk";
    case Scheme::mpsk: return "psk";
    case Scheme::mqam: return "qam";
    case Scheme::mpam: return "pam";
    case Scheme::mfsk: return "fsk";
    case Scheme::mdpsk: return "dpsk";
    case Scheme::dbpsk: return "dbpsk";
    case Scheme::mdepsk: return "depsk";
    case Scheme::bfsk: return "bfsk";
    case Scheme::gmsk: return "gmsk";
    }
    return "unknown";
}

bool has_signal_points(Scheme scheme) {
    switch (scheme) {
    case Scheme::bpsk:
    case Scheme::qpsk:
    case Scheme::mpsk:
    case Scheme::mqam:
    case Scheme::mpam:
        return true;
    default:
        return false;
    }
}

Constellation Constellation::make(Scheme scheme, int order) {
    if (!has_signal_points(scheme)) {
        throw ConfigError("scheme '" + to_string(scheme) +
                          "' has no memoryless signal-point model; it is available for analysis only");
    }
    if (scheme == Scheme::bpsk && order != 2) {
        throw ConfigError("bpsk requires order 2");
    }
    if (scheme == Scheme::qpsk && order != 4) {
        throw ConfigError("qpsk requires order 4");
    }
    if (!is_power_of_two(order)) {
        throw ConfigError("constellation order must be a power of two >= 2");
    }

    Constellation c;
    c.scheme = scheme;
    c.order = order;
    c.bits_per_symbol = std::countr_zero(static_cast<unsigned>(order));
    c.points.resize(order);
    c.labels.resize(order);

    switch (scheme) {
    case Scheme::bpsk:
        c.points = {{1.0, 0.0}, {-1.0, 0.0}};
        c.labels = {0u, 1u};
        break;
    case Scheme::qpsk: {
        // label b1 b0: real part from b1, imaginary part from b0
        const double a = 1.0 / std::numbers::sqrt2;
        for (std::uint32_t i = 0; i < 4; ++i) {
            c.points[i] = {(i & 2u) ? -a : a, (i & 1u) ? -a : a};
            c.labels[i] = i;
        }
        break;
    }
    case Scheme::mpsk:
        for (int i = 0; i < order; ++i) {
            c.points[i] = std::polar(1.0, 2.0 * std::numbers::pi * i / order);
            c.labels[i] = gray(static_cast<std::uint32_t>(i));
        }
        break;
    case Scheme::mpam: {
        std::vector<double> amp;
        std::vector<std::uint32_t> lab;
        pam_axis(order, amp, lab);
        const double norm = std::sqrt((order * order - 1.0) / 3.0);
        for (int i = 0; i < order; ++i) {
            c.points[i] = {amp[i] / norm, 0.0};
            c.labels[i] = lab[i];
        }
        break;
    }
    case Scheme::mqam: {
        const int bits = c.bits_per_symbol;
        if (bits % 2 != 0 || order < 4) {
            throw ConfigError("square qam requires an even number of bits per symbol");
        }
        const int side = 1 << (bits / 2);
        std::vector<double> amp;
        std::vector<std::uint32_t> lab;
        pam_axis(side, amp, lab);
        const double norm = std::sqrt(2.0 * (order - 1.0) / 3.0);
        for (int i = 0; i < side; ++i) {
            for (int q = 0; q < side; ++q) {
                const int idx = i * side + q;
                c.points[idx] = {amp[i] / norm, amp[q] / norm};
                c.labels[idx] = (lab[i] << (bits / 2)) | lab[q];
            }
        }
        break;
    }
    default:
        break;
    }
    return c;
}

int Constellation::bit_distance(int a, int b) const { return std::popcount(labels[a] ^ labels[b]); }

double Constellation::mean_energy() const {
    double e = 0.0;
    for (const auto& p : points) {
        e += std::norm(p);
    }
    return e / static_cast<double>(points.size());
}

} // namespace otfs
