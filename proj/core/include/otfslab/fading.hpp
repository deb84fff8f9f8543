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

#include "otfslab/modem.hpp"
#include "otfslab/random.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace otfs {

/// Per-path fading description. m is the Nakagami shape (the closed-form
/// analysis needs integer m, the sampler accepts real m >= 0.5) and omega
/// the mean power E[|h|^2].
struct PathSpec {
    double m = 1.0;
    double omega = 1.0;
    int delay = 0;
    int doppler = 0;
    double fractional_doppler = 0.0;
};

struct ChannelRealization {
    std::vector<cd> gains;
    std::vector<PathSpec> specs;
    std::uint64_t stream_id = 0;

    std::vector<PathTap> taps() const;
};

void validate_path_spec(const PathSpec& spec);

/// |h| is Nakagami-m with E[|h|^2] = omega (square root of a
/// Gamma(m, omega / m) variate); the phase is uniform and independent.
cd sample_nakagami_gain(const PathSpec& spec, RandomStream& rng);

/// Independent gains for every spec. With `normalize` the omegas are
/// rescaled to sum to one before sampling. Duplicate (delay, doppler) grid
/// points are rejected.
ChannelRealization generate_channel(const std::vector<PathSpec>& specs, RandomStream& rng, bool normalize = false,
                                    std::uint64_t stream_id = 0);

/// Rescales omegas so that they sum to one.
std::vector<PathSpec> normalize_powers(std::vector<PathSpec> specs);

namespace eva {
inline constexpr std::array<double, 9> delays_ns = {0, 30, 150, 310, 370, 710, 1090, 1730, 2510};
inline constexpr std::array<double, 9> powers_db = {0.0, -1.5, -1.4, -3.6, -0.6, -9.1, -7.0, -12.0, -16.9};
inline constexpr double speed_of_light = 299792458.0;

/// Linear powers of the strongest P taps, renormalized, strongest first.
std::vector<double> strongest_tap_powers(int P);
} // namespace eva

/// fc v / c in Hz.
double max_doppler_hz(double carrier_hz, double speed_mps);

/// EVA-derived placement: delays 0..P-1, Jakes-angle Doppler quantized to
/// the nearest integer bin, powers of the strongest P EVA taps renormalized.
/// Every path gets Nakagami shape `m`.
std::vector<PathSpec> eva_grid_placement(const OtfsGrid& grid, double carrier_hz, double speed_mps, int P,
                                         RandomStream& rng, double m = 1.0);

} // namespace otfs
