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

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace otfs {

enum class Scheme { bpsk, qpsk, mpsk, mqam, mpam, mfsk, mdpsk, dbpsk, mdepsk, bfsk, gmsk };

/// Accepts the lower-case names used in configs: bpsk, qpsk, psk, qam, pam,
/// fsk, dpsk, dbpsk, depsk, bfsk, gmsk.
Scheme parse_scheme(std::string_view name);
std::string to_string(Scheme scheme);

/// Memoryless schemes that have a complex-baseband point set usable by the
/// ML detector.
bool has_signal_points(Scheme scheme);

/// Symbol alphabet with unit mean energy and Gray bit labels.
///
/// points[i] carries the bit label labels[i]; the number of differing bits
/// between two symbol indices is popcount(labels[a] ^ labels[b]).
struct Constellation {
    Scheme scheme = Scheme::bpsk;
    int order = 2;
    int bits_per_symbol = 1;
    std::vector<std::complex<double>> points;
    std::vector<std::uint32_t> labels;

    /// Throws ConfigError for orders that are not a power of two or schemes
    /// without a signal-point representation.
    static Constellation make(Scheme scheme, int order);

    int bit_distance(int a, int b) const;
    double mean_energy() const;
};

} // namespace otfs
