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

#include "otfslab/csv.hpp"

#include "otfslab/errors.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace otfs::io {

namespace {

std::string number(const std::optional<double>& v) {
    if (!v) {
        return {};
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", *v);
    return buf;
}

std::string count(const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : std::string{}; }

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(field);
            field.clear();
        } else if (ch != '\r') {
            field += ch;
        }
    }
    out.push_back(field);
    return out;
}

std::optional<double> parse_number(const std::string& s, std::size_t line) {
    if (s.empty()) {
        return std::nullopt;
    }
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) {
        throw IoError("line " + std::to_string(line) + ": bad number '" + s + "'");
    }
    return v;
}

std::optional<std::uint64_t> parse_count(const std::string& s, std::size_t line) {
    if (s.empty()) {
        return std::nullopt;
    }
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size() || s.front() == '-') {
        throw IoError("line " + std::to_string(line) + ": bad count '" + s + "'");
    }
    return v;
}

} // namespace

RunManifest RunManifest::now(std::uint64_t master_seed, const std::string& command) {
    RunManifest m;
    m.tool_version = OTFSLAB_VERSION;
    m.master_seed = master_seed;
    m.command = command;
    const std::time_t t = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&t, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    m.timestamp = buf;
    return m;
}

std::string format_csv(const std::vector<mc::BerCurve>& curves, const RunManifest& manifest) {
    std::ostringstream out;
    out << "# otfslab " << manifest.tool_version << "\n";
    out << "# timestamp: " << manifest.timestamp << "\n";
    out << "# master_seed: " << manifest.master_seed << "\n";
    if (!manifest.command.empty()) {
        out << "# command: " << manifest.command << "\n";
    }
    for (const auto& note : manifest.notes) {
        out << "# note: " << note << "\n";
    }
    for (const auto& w : manifest.warnings) {
        out << "# warning: " << w << "\n";
    }
    for (const auto& c : curves) {
        for (const auto& w : c.warnings) {
            out << "# warning[" << c.preset << "/" << mc::to_string(c.waveform) << "]: " << w << "\n";
        }
    }
    for (const auto& section : manifest.configs) {
        const std::string prefix = section.name.empty() ? "# config: " : "# config[" + section.name + "]: ";
        for (const auto& [k, v] : section.settings) {
            out << prefix << k << " = " << v << "\n";
        }
    }
    out << kCsvHeader << "\n";
    for (const auto& c : curves) {
        for (const auto& p : c.points) {
            out << number(p.snr_db) << ',' << number(p.ber_mc) << ',' << number(p.ci_low) << ','
                << number(p.ci_high) << ',' << number(p.ber_analytic) << ',' << count(p.bit_errors) << ','
                << count(p.bits) << ',' << mc::to_string(c.waveform) << ',' << c.preset << "\n";
        }
    }
    return out.str();
}

void emit_csv(const std::vector<mc::BerCurve>& curves, const RunManifest& manifest, const std::filesystem::path& path) {
    bool any = false;
    for (const auto& c : curves) {
        any = any || !c.points.empty();
    }
    if (!any) {
        throw ConfigError("refusing to write an empty curve");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << format_csv(curves, manifest);
    out.flush();
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

CsvDocument parse_csv(const std::string& text) {
    CsvDocument doc;
    std::istringstream in(text);
    std::string line;
    std::size_t number_of_line = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++number_of_line;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            doc.comments.push_back(line.size() > 2 ? line.substr(2) : std::string{});
            continue;
        }
        if (!header_seen) {
            if (line != kCsvHeader) {
                throw IoError("unexpected CSV header: " + line);
            }
            header_seen = true;
            continue;
        }
        const auto f = split_row(line);
        if (f.size() != 9) {
            throw IoError("line " + std::to_string(number_of_line) + ": expected 9 fields");
        }
        const mc::Waveform wf = mc::parse_waveform(f[7]);
        const std::string& preset = f[8];
        if (doc.curves.empty() || doc.curves.back().waveform != wf || doc.curves.back().preset != preset) {
            mc::BerCurve c;
            c.waveform = wf;
            c.preset = preset;
            doc.curves.push_back(c);
        }
        mc::BerPoint p;
        const auto snr = parse_number(f[0], number_of_line);
        if (!snr) {
            throw IoError("line " + std::to_string(number_of_line) + ": missing snr_db");
        }
        p.snr_db = *snr;
        p.ber_mc = parse_number(f[1], number_of_line);
        p.ci_low = parse_number(f[2], number_of_line);
        p.ci_high = parse_number(f[3], number_of_line);
        p.ber_analytic = parse_number(f[4], number_of_line);
        p.bit_errors = parse_count(f[5], number_of_line);
        p.bits = parse_count(f[6], number_of_line);
        doc.curves.back().points.push_back(p);
    }
    if (!header_seen) {
        throw IoError("CSV header not found");
    }
    return doc;
}

std::string data_rows(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    std::string out;
    while (std::getline(in, line)) {
        if (!line.empty() && line.front() != '#') {
            out += line + "\n";
        }
    }
    return out;
}

} // namespace otfs::io
