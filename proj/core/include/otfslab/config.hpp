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

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace otfs::io {

using Setting = std::pair<std::string, std::string>;

/// Keys accepted in config files, in echo order. They mirror SweepConfig
/// field names; the per-path fields are comma-separated lists
/// (path_m, path_omega, path_delay, path_doppler, path_kappa).
const std::vector<std::string>& config_keys();

/// Parses flat `key = value` text. Blank lines and `#` comments are
/// skipped; unknown or repeated keys raise ConfigError.
///
/// A results CSV can be fed back directly: when the text contains
/// `# config: key = value` manifest lines (or `# config[section]: ...` with a
/// matching `section`), only those lines are read.
mc::SweepConfig parse_config(const std::string& text, const mc::SweepConfig& base = {},
                             const std::string& section = {});
mc::SweepConfig load_config(const std::filesystem::path& file, const mc::SweepConfig& base = {},
                            const std::string& section = {});

/// Applies settings on top of a config (used for config files and flags).
void apply_settings(mc::SweepConfig& config, const std::vector<Setting>& settings);

/// Fully resolved settings of a config; parse_config of their text form
/// reproduces the config exactly.
std::vector<Setting> describe(const mc::SweepConfig& config);

/// "start:step:stop" (inclusive) or a comma list.
std::vector<double> parse_snr_list(const std::string& text);

/// Named presets.
///   fig1-m1, fig1-m2          BPSK, P = 1, EVA placement
///   fig2-m12, fig2-m23        QPSK, P = 2, omega = (2/3, 1/3) assumed
///   fig3-k1, fig3-k2          QPSK, P = 1, m = 2, semi-analytic multi-user
///   fig4-m1-k1, fig4-m2-k2    QPSK, P = 2, semi-analytic multi-user
///   siso-p1-m1, siso-p1-m2, siso-p2-m12, siso-p2-m23 (QPSK slope rows)
///   simo-p1-m1-k2, simo-p1-m2-k2, simo-p2-m2-k2
mc::SweepConfig preset(const std::string& name);
const std::vector<std::string>& preset_names();
/// Presets plotted in a figure (1 to 4).
std::vector<std::string> figure_presets(int figure);
/// Notes that flag assumed values.
std::vector<std::string> preset_assumptions(const std::string& name);

} // namespace otfs::io
