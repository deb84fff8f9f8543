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

#include "otfslab/fading.hpp"

#include "otfslab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <utility>

namespace otfs {

std::vector<PathTap> ChannelRealization::taps() const {
    std::vector<PathTap> out(gains.size());
    for (std::size_t p = 0; p < gains.size(); ++p) {
        out[p] = {gains[p], specs[p].delay, specs[p].doppler, specs[p].fractional_doppler};
    }
    return out;
}

void validate_path_spec(const PathSpec& spec) {
    if (!(std::isfinite(spec.m) && spec.m >= 0.5)) {
        throw DomainError("Nakagami shape m must be >= 0.5");
    }
    if (!(std::isfinite(spec.omega) && spec.omega > 0.0)) {
        throw DomainError("path power omega must be positive");
    }
}

cd sample_nakagami_gain(const PathSpec& spec, RandomStream& rng) {
    validate_path_spec(spec);
    std::gamma_distribution<double> power(spec.m, spec.omega / spec.m);
    const double g = power(rng);
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    return std::polar(std::sqrt(g), phase);
}

std::vector<PathSpec> normalize_powers(std::vector<PathSpec> specs) {
    double total = 0.0;
    for (const auto& s : specs) {
        validate_path_spec(s);
        total += s.omega;
    }
    for (auto& s : specs) {
        s.omega /= total;
    }
    return specs;
}

ChannelRealization generate_channel(const std::vector<PathSpec>& specs, RandomStream& rng, bool normalize,
                                    std::uint64_t stream_id) {
    if (specs.empty()) {
        throw ConfigError("channel requires at least one path");
    }
    std::set<std::pair<int, int>> seen;
    for (const auto& s : specs) {
        validate_path_spec(s);
        if (!seen.emplace(s.delay, s.doppler).second) {
            throw ConfigError("two paths share the delay-Doppler grid point (" + std::to_string(s.delay) + ", " +
                              std::to_string(s.doppler) + ")");
        }
    }
    ChannelRealization ch;
    ch.specs = normalize ? normalize_powers(specs) : specs;
    ch.stream_id = stream_id;
    ch.gains.reserve(specs.size());
    for (const auto& s : ch.specs) {
        ch.gains.push_back(sample_nakagami_gain(s, rng));
    }
    return ch;
}

namespace eva {
std::vector<double> strongest_tap_powers(int P) {
    if (P < 1 || P > static_cast<int>(powers_db.size())) {
        throw ConfigError("EVA profile has between 1 and 9 taps");
    }
    std::vector<double> linear(powers_db.size());
    std::transform(powers_db.begin(), powers_db.end(), linear.begin(),
                   [](double db) { return std::pow(10.0, db / 10.0); });
    std::sort(linear.begin(), linear.end(), std::greater<>());
    linear.resize(P);
    double total = 0.0;
    for (double p : linear) {
        total += p;
    }
    for (double& p : linear) {
        p /= total;
    }
    return linear;
}
} // namespace eva

double max_doppler_hz(double carrier_hz, double speed_mps) {
    if (!(carrier_hz > 0.0) || !(speed_mps >= 0.0)) {
        throw ConfigError("carrier frequency must be positive and speed non-negative");
    }
    return carrier_hz * speed_mps / eva::speed_of_light;
}

std::vector<PathSpec> eva_grid_placement(const OtfsGrid& grid, double carrier_hz, double speed_mps, int P,
                                         RandomStream& rng, double m) {
    grid.validate();
    if (P < 1 || P > grid.M) {
        throw ConfigError("EVA placement needs 1 <= P <= M distinct delay bins");
    }
    const double nu_max = max_doppler_hz(carrier_hz, speed_mps);
    const std::vector<double> powers = eva::strongest_tap_powers(P);
    std::vector<PathSpec> specs(P);
    for (int p = 0; p < P; ++p) {
        const double theta = 2.0 * std::numbers::pi * rng.uniform();
        const double nu = nu_max * std::cos(theta);
        specs[p].m = m;
        specs[p].omega = powers[p];
        specs[p].delay = p;
        specs[p].doppler = static_cast<int>(std::lround(nu * grid.N * grid.T));
        specs[p].fractional_doppler = 0.0;
    }
    return specs;
}

} // namespace otfs
