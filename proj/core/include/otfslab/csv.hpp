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

#include "otfslab/config.hpp"
#include "otfslab/montecarlo.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace otfs::io {

inline constexpr const char* kCsvHeader = "snr_db,ber_mc,ci_low,ci_high,ber_analytic,bit_errors,bits,waveform,preset";

/// Provenance block written as `#` lines ahead of the CSV header.
struct RunManifest {
    std::string tool_version;
    std::string timestamp;
    std::uint64_t master_seed = 0;
    std::string command;
    // Written as `# config: k = v` when section is empty, else `# config[section]: k = v`.
    struct Section {
        std::string name;
        std::vector<Setting> settings;
    };
    std::vector<Section> configs;
    std::vector<std::string> notes;
    std::vector<std::string> warnings;

    static RunManifest now(std::uint64_t master_seed, const std::string& command);
};

std::string format_csv(const std::vector<mc::BerCurve>& curves, const RunManifest& manifest);

/// Writes format_csv output; IoError when the file cannot be written.
void emit_csv(const std::vector<mc::BerCurve>& curves, const RunManifest& manifest, const std::filesystem::path& path);

struct CsvDocument {
    std::vector<std::string> comments; // manifest lines without the leading "# "
    std::vector<mc::BerCurve> curves;  // grouped by (waveform, preset) in file order
};

CsvDocument parse_csv(const std::string& text);

/// Header plus data rows, with every comment line removed.
std::string data_rows(const std::string& csv_text);

} // namespace otfs::io
