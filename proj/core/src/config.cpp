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

#include "otfslab/config.hpp"

#include "otfslab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace otfs::io {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        out.push_back(trim(item));
    }
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size() || !std::isfinite(v)) {
            throw ConfigError("");
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' expects a number, got '" + value + "'");
    }
}

long long to_integer(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size()) {
            throw ConfigError("");
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' expects an integer, got '" + value + "'");
    }
}

std::uint64_t to_unsigned(const std::string& key, const std::string& value) {
    if (value.empty() || value.front() == '-') {
        throw ConfigError("key '" + key + "' expects a non-negative integer, got '" + value + "'");
    }
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(value, &used);
        if (used != value.size()) {
            throw ConfigError("");
        }
        return v;
    } catch (const std::exception&) {
        // Accept exact integers written in floating form such as 1e7.
        const double d = to_double(key, value);
        if (d < 0.0 || d != std::floor(d) || d > 1.8e19) {
            throw ConfigError("key '" + key + "' expects a non-negative integer, got '" + value + "'");
        }
        return static_cast<std::uint64_t>(d);
    }
}

int to_int(const std::string& key, const std::string& value) {
    const long long v = to_integer(key, value);
    if (v < -2147483647LL || v > 2147483647LL) {
        throw ConfigError("key '" + key + "' is out of range");
    }
    return static_cast<int>(v);
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("key '" + key + "' expects true or false, got '" + value + "'");
}

std::vector<double> to_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    for (const auto& item : split(value, ',')) {
        out.push_back(to_double(key, item));
    }
    return out;
}

std::vector<int> to_int_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    for (const auto& item : split(value, ',')) {
        out.push_back(to_int(key, item));
    }
    return out;
}

template <class T>
std::string join(const std::vector<T>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            out += ",";
        }
        if constexpr (std::is_floating_point_v<T>) {
            out += format_double(values[i]);
        } else {
            out += std::to_string(values[i]);
        }
    }
    return out;
}

// Collects `key = value` lines, honouring manifest sections.
std::vector<Setting> read_settings(const std::string& text, const std::string& section) {
    const std::string plain_prefix = "# config:";
    const std::string section_prefix = "# config[" + section + "]:";
    const std::string& prefix = section.empty() ? plain_prefix : section_prefix;

    std::vector<std::string> lines;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            lines.push_back(line);
        }
    }
    const bool manifest = std::any_of(lines.begin(), lines.end(), [&](const std::string& l) {
        return l.rfind(prefix, 0) == 0;
    });
    if (!section.empty() && !manifest) {
        throw ConfigError("no '# config[" + section + "]:' lines found");
    }

    std::vector<Setting> out;
    std::size_t number = 0;
    for (const auto& raw : lines) {
        ++number;
        std::string line;
        if (manifest) {
            if (raw.rfind(prefix, 0) != 0) {
                continue;
            }
            line = trim(raw.substr(prefix.size()));
        } else {
            line = trim(raw);
            if (line.empty() || line.front() == '#') {
                continue;
            }
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(number) + ": expected 'key = value'");
        }
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

} // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "preset",       "M",          "N",           "delta_f",        "scheme",
        "order",        "path_m",     "path_omega",  "path_delay",     "path_doppler",
        "path_kappa",   "normalize_powers", "eva_placement", "eva_paths", "eva_m",
        "carrier_hz",   "speed_kmh",  "users",       "semianalytic_trials", "snr_db",
        "max_frames",   "target_bit_errors", "master_seed", "batch_frames", "waveform",
        "mode",         "hypothesis_cap", "noise_free", "workers"};
    return keys;
}

std::vector<double> parse_snr_list(const std::string& text) {
    const std::string t = trim(text);
    if (t.find(':') != std::string::npos) {
        const auto parts = split(t, ':');
        if (parts.size() != 3) {
            throw ConfigError("SNR range must be start:step:stop");
        }
        const double start = to_double("snr_db", parts[0]);
        const double step = to_double("snr_db", parts[1]);
        const double stop = to_double("snr_db", parts[2]);
        if (!(step > 0.0) || stop < start) {
            throw ConfigError("SNR range needs a positive step and stop >= start");
        }
        const auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
        if (count > 100000) {
            throw ConfigError("SNR range has too many points");
        }
        std::vector<double> out;
        for (long long i = 0; i < count; ++i) {
            out.push_back(start + static_cast<double>(i) * step);
        }
        return out;
    }
    return to_double_list("snr_db", t);
}

void apply_settings(mc::SweepConfig& config, const std::vector<Setting>& settings) {
    std::map<std::string, std::string> values;
    const auto& keys = config_keys();
    for (const auto& [key, value] : settings) {
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            throw ConfigError("unknown config key '" + key + "'");
        }
        if (!values.emplace(key, value).second) {
            throw ConfigError("config key '" + key + "' given twice");
        }
    }
    auto has = [&](const char* k) { return values.count(k) != 0; };
    auto get = [&](const char* k) { return values.at(k); };

    if (has("preset")) config.preset = get("preset");
    int M = config.grid.M;
    int N = config.grid.N;
    double delta_f = config.grid.delta_f;
    if (has("M")) M = to_int("M", get("M"));
    if (has("N")) N = to_int("N", get("N"));
    if (has("delta_f")) delta_f = to_double("delta_f", get("delta_f"));
    config.grid = OtfsGrid::make(M, N, delta_f);
    if (has("scheme")) config.scheme = parse_scheme(get("scheme"));
    if (has("order")) {
        config.order = to_int("order", get("order"));
    } else if (has("scheme")) {
        config.order = config.scheme == Scheme::qpsk ? 4 : (config.scheme == Scheme::mqam ? 16 : 2);
    }

    const bool any_path = has("path_m") || has("path_omega") || has("path_delay") || has("path_doppler") ||
                          has("path_kappa");
    if (any_path) {
        std::vector<double> m = has("path_m") ? to_double_list("path_m", get("path_m")) : std::vector<double>{};
        std::vector<double> omega =
            has("path_omega") ? to_double_list("path_omega", get("path_omega")) : std::vector<double>{};
        std::vector<int> delay = has("path_delay") ? to_int_list("path_delay", get("path_delay")) : std::vector<int>{};
        std::vector<int> doppler =
            has("path_doppler") ? to_int_list("path_doppler", get("path_doppler")) : std::vector<int>{};
        std::vector<double> kappa =
            has("path_kappa") ? to_double_list("path_kappa", get("path_kappa")) : std::vector<double>{};
        const std::size_t P = std::max({m.size(), omega.size(), delay.size(), doppler.size(), kappa.size()});
        auto fill = [P](auto& v, const char* key, auto def) {
            if (v.empty()) {
                v.assign(P, def);
            } else if (v.size() != P) {
                throw ConfigError(std::string("key '") + key + "' lists a different number of paths");
            }
        };
        fill(m, "path_m", 1.0);
        fill(omega, "path_omega", 1.0);
        if (delay.empty()) {
            for (std::size_t p = 0; p < P; ++p) {
                delay.push_back(static_cast<int>(p));
            }
        }
        fill(delay, "path_delay", 0);
        fill(doppler, "path_doppler", 0);
        fill(kappa, "path_kappa", 0.0);
        config.paths.assign(P, PathSpec{});
        for (std::size_t p = 0; p < P; ++p) {
            config.paths[p] = {m[p], omega[p], delay[p], doppler[p], kappa[p]};
        }
    }
    if (has("normalize_powers")) config.normalize_powers = to_bool("normalize_powers", get("normalize_powers"));
    if (has("eva_placement")) config.eva_placement = to_bool("eva_placement", get("eva_placement"));
    if (has("eva_paths")) config.eva_paths = to_int("eva_paths", get("eva_paths"));
    if (has("eva_m")) config.eva_m = to_double("eva_m", get("eva_m"));
    if (has("carrier_hz")) config.carrier_hz = to_double("carrier_hz", get("carrier_hz"));
    if (has("speed_kmh")) config.speed_kmh = to_double("speed_kmh", get("speed_kmh"));
    if (has("users")) config.users = to_int("users", get("users"));
    if (has("semianalytic_trials")) {
        config.semianalytic_trials = to_unsigned("semianalytic_trials", get("semianalytic_trials"));
    }
    if (has("snr_db")) config.snr_db = parse_snr_list(get("snr_db"));
    if (has("max_frames")) config.max_frames = to_unsigned("max_frames", get("max_frames"));
    if (has("target_bit_errors")) config.target_bit_errors = to_unsigned("target_bit_errors", get("target_bit_errors"));
    if (has("master_seed")) config.master_seed = to_unsigned("master_seed", get("master_seed"));
    if (has("batch_frames")) config.batch_frames = to_unsigned("batch_frames", get("batch_frames"));
    if (has("waveform")) config.waveform = mc::parse_waveform(get("waveform"));
    if (has("mode")) config.mode = mc::parse_mode(get("mode"));
    if (has("hypothesis_cap")) config.hypothesis_cap = to_double("hypothesis_cap", get("hypothesis_cap"));
    if (has("noise_free")) config.noise_free = to_bool("noise_free", get("noise_free"));
    if (has("workers")) config.workers = to_int("workers", get("workers"));
}

mc::SweepConfig parse_config(const std::string& text, const mc::SweepConfig& base, const std::string& section) {
    mc::SweepConfig config = base;
    apply_settings(config, read_settings(text, section));
    config.validate();
    return config;
}

mc::SweepConfig load_config(const std::filesystem::path& file, const mc::SweepConfig& base,
                            const std::string& section) {
    std::ifstream in(file);
    if (!in) {
        throw IoError("cannot read config file " + file.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), base, section);
}

std::vector<Setting> describe(const mc::SweepConfig& c) {
    std::vector<double> m;
    std::vector<double> omega;
    std::vector<int> delay;
    std::vector<int> doppler;
    std::vector<double> kappa;
    for (const auto& p : c.paths) {
        m.push_back(p.m);
        omega.push_back(p.omega);
        delay.push_back(p.delay);
        doppler.push_back(p.doppler);
        kappa.push_back(p.fractional_doppler);
    }
    auto b = [](bool v) { return std::string(v ? "true" : "false"); };
    return {
        {"preset", c.preset},
        {"M", std::to_string(c.grid.M)},
        {"N", std::to_string(c.grid.N)},
        {"delta_f", format_double(c.grid.delta_f)},
        {"scheme", to_string(c.scheme)},
        {"order", std::to_string(c.order)},
        {"path_m", join(m)},
        {"path_omega", join(omega)},
        {"path_delay", join(delay)},
        {"path_doppler", join(doppler)},
        {"path_kappa", join(kappa)},
        {"normalize_powers", b(c.normalize_powers)},
        {"eva_placement", b(c.eva_placement)},
        {"eva_paths", std::to_string(c.eva_paths)},
        {"eva_m", format_double(c.eva_m)},
        {"carrier_hz", format_double(c.carrier_hz)},
        {"speed_kmh", format_double(c.speed_kmh)},
        {"users", std::to_string(c.users)},
        {"semianalytic_trials", std::to_string(c.semianalytic_trials)},
        {"snr_db", join(c.snr_db)},
        {"max_frames", std::to_string(c.max_frames)},
        {"target_bit_errors", std::to_string(c.target_bit_errors)},
        {"master_seed", std::to_string(c.master_seed)},
        {"batch_frames", std::to_string(c.batch_frames)},
        {"waveform", mc::to_string(c.waveform)},
        {"mode", mc::to_string(c.mode)},
        {"hypothesis_cap", format_double(c.hypothesis_cap)},
        {"noise_free", b(c.noise_free)},
        {"workers", std::to_string(c.workers)},
    };
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {
        "fig1-m1",    "fig1-m2",    "fig2-m12",   "fig2-m23",      "fig3-k1",       "fig3-k2",
        "fig4-m1-k1", "fig4-m2-k2", "siso-p1-m1", "siso-p1-m2",    "siso-p2-m12",   "siso-p2-m23",
        "simo-p1-m1-k2", "simo-p1-m2-k2", "simo-p2-m2-k2"};
    return names;
}

std::vector<std::string> figure_presets(int figure) {
    switch (figure) {
    case 1: return {"fig1-m1", "fig1-m2"};
    case 2: return {"fig2-m12", "fig2-m23"};
    case 3: return {"fig3-k1", "fig3-k2"};
    case 4: return {"fig4-m1-k1", "fig4-m2-k2"};
    default: throw ConfigError("figure must be 1, 2, 3 or 4");
    }
}

std::vector<std::string> preset_assumptions(const std::string& name) {
    std::vector<std::string> notes;
    const mc::SweepConfig c = preset(name);
    if (!c.eva_placement && c.paths.size() == 2) {
        notes.push_back("ASSUMED: per-path powers omega = (2/3, 1/3); no reference values are given");
    }
    if (c.mode == mc::Mode::simo) {
        notes.push_back("ASSUMED: multi-user curves use the semi-analytic SINR sampler; the waveform-level "
                        "multi-user model is not specified");
        notes.push_back("ASSUMED: every interfering user has the same path description as the desired user");
    }
    return notes;
}

mc::SweepConfig preset(const std::string& name) {
    mc::SweepConfig c;
    c.preset = name;
    c.grid = OtfsGrid::make(2, 2, 15e3);
    c.carrier_hz = 4e9;
    c.speed_kmh = 120.0;
    c.snr_db = parse_snr_list("0:2:20");
    c.target_bit_errors = 200;
    c.max_frames = 10000000;
    c.scheme = Scheme::qpsk;
    c.order = 4;

    auto two_paths = [&](double m1, double m2) {
        c.paths = {PathSpec{m1, 2.0 / 3.0, 0, 0, 0.0}, PathSpec{m2, 1.0 / 3.0, 1, 0, 0.0}};
    };
    auto one_path = [&](double m) { c.paths = {PathSpec{m, 1.0, 0, 0, 0.0}}; };

    if (name == "fig1-m1" || name == "fig1-m2") {
        c.scheme = Scheme::bpsk;
        c.order = 2;
        c.eva_placement = true;
        c.eva_paths = 1;
        c.eva_m = name == "fig1-m1" ? 1.0 : 2.0;
        one_path(c.eva_m);
    } else if (name == "fig2-m12" || name == "siso-p2-m12") {
        two_paths(1.0, 2.0);
    } else if (name == "fig2-m23" || name == "siso-p2-m23") {
        two_paths(2.0, 3.0);
    } else if (name == "siso-p1-m1") {
        one_path(1.0);
    } else if (name == "siso-p1-m2") {
        one_path(2.0);
    } else if (name == "fig3-k1" || name == "fig3-k2") {
        c.mode = mc::Mode::simo;
        one_path(2.0);
        c.users = name == "fig3-k1" ? 1 : 2;
    } else if (name == "fig4-m1-k1") {
        c.mode = mc::Mode::simo;
        two_paths(1.0, 1.0);
        c.users = 1;
    } else if (name == "fig4-m2-k2" || name == "simo-p2-m2-k2") {
        c.mode = mc::Mode::simo;
        two_paths(2.0, 2.0);
        c.users = 2;
    } else if (name == "simo-p1-m1-k2") {
        c.mode = mc::Mode::simo;
        one_path(1.0);
        c.users = 2;
    } else if (name == "simo-p1-m2-k2") {
        c.mode = mc::Mode::simo;
        one_path(2.0);
        c.users = 2;
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
    c.validate();
    return c;
}

} // namespace otfs::io
