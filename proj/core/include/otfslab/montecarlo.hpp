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
#include "otfslab/modem.hpp"
#include "otfslab/multiuser.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace otfs::mc {

enum class Waveform { otfs, ofdm };
enum class Mode { siso, simo };

Waveform parse_waveform(const std::string& s);
Mode parse_mode(const std::string& s);
std::string to_string(Waveform w);
std::string to_string(Mode m);

struct SweepConfig {
    std::string preset = "custom";
    OtfsGrid grid = OtfsGrid::make(2, 2, 15e3);
    Scheme scheme = Scheme::bpsk;
    int order = 2;

    // Explicit per-path description, used unless eva_placement is set.
    std::vector<PathSpec> paths{PathSpec{}};
    bool normalize_powers = true;

    // EVA placement directive: eva_paths taps with shape eva_m, Doppler from
    // carrier frequency and speed.
    bool eva_placement = false;
    int eva_paths = 1;
    double eva_m = 1.0;
    double carrier_hz = 4e9;
    double speed_kmh = 120.0;

    // Number of users sharing the channel (simo mode). User 1 is analysed;
    // users 2..K interfere, each with the same path description.
    int users = 1;
    std::uint64_t semianalytic_trials = 200000;

    std::vector<double> snr_db{0.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0, 18.0, 20.0};
    std::uint64_t max_frames = 10000000;
    std::uint64_t target_bit_errors = 200;
    std::uint64_t master_seed = 1;
    std::uint64_t batch_frames = 1024;
    Waveform waveform = Waveform::otfs;
    Mode mode = Mode::siso;
    double hypothesis_cap = kDefaultHypothesisCap;
    bool noise_free = false;
    int workers = 1;

    void validate() const;
    /// Path description the sweep uses (EVA-derived or explicit, normalized
    /// when requested). EVA Doppler is drawn per frame; the returned specs
    /// carry Doppler index 0.
    std::vector<PathSpec> resolved_paths() const;
    std::vector<analytic::UserPaths> interferers() const;
};

struct BerPoint {
    double snr_db = 0.0;
    std::optional<double> ber_mc;
    std::optional<double> ci_low;
    std::optional<double> ci_high;
    std::optional<double> ber_analytic;
    std::optional<std::uint64_t> bit_errors;
    std::optional<std::uint64_t> bits;
    // Diagnostics, not serialized.
    std::uint64_t frames = 0;
    double design_effect = 1.0;
};

struct BerCurve {
    std::vector<BerPoint> points;
    Waveform waveform = Waveform::otfs;
    std::string preset = "custom";
    std::vector<std::string> warnings;

    const BerPoint& at(double snr_db) const;
};

struct Interval {
    double low = 0.0;
    double high = 1.0;
};

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::uint64_t errors, std::uint64_t trials, double confidence = 0.95);
/// Same formula for non-integer (effective) counts.
Interval wilson_interval(double errors, double trials, double confidence);

/// Wilson interval on the effective sample size bits / design_effect.
Interval effective_interval(const BerPoint& point, double confidence);

struct Progress {
    std::size_t point = 0;
    double snr_db = 0.0;
    std::uint64_t frames = 0;
    std::uint64_t bit_errors = 0;
};
using ProgressHook = std::function<void(const Progress&)>;

/// Closed-form BER for one SNR point of the configuration (siso_ber or the
/// multi-user model). Degenerate inputs produce std::nullopt and a warning.
std::optional<double> analytic_point(const SweepConfig& config, double snr_db, std::vector<std::string>* warnings);

/// Monte Carlo sweep with the analytic value attached to each point.
///
/// siso mode simulates frames: fresh channel, symbols and noise per frame,
/// exhaustive ML detection, Gray bit counting. Frame f of SNR point s uses the
/// random stream (master_seed, domain 1, index(s, f)), independent of the
/// waveform, so OTFS and OFDM runs see identical realizations. Frames are
/// processed in batches of batch_frames and the stopping rule is evaluated
/// after each batch in batch order, so the output does not depend on the
/// worker count.
///
/// simo mode runs the semi-analytic interference sampler instead.
BerCurve run_sweep(const SweepConfig& config, const ProgressHook& progress = {});

/// Analytic values only (ber_mc and counts left empty).
BerCurve analytic_curve(const SweepConfig& config);

/// One simulated frame, exposed for inspection and paired-run checks.
struct FrameRecord {
    std::vector<cd> gains;
    std::vector<PathSpec> specs;
    std::vector<int> sent;
    std::vector<int> detected;
    CVector noise;
    CVector received;
    std::uint64_t bit_errors = 0;
};
FrameRecord simulate_frame(const SweepConfig& config, double snr_db, std::uint64_t frame);

/// Stream index of a frame at an SNR point.
std::uint64_t frame_stream_index(double snr_db, std::uint64_t frame);

} // namespace otfs::mc
