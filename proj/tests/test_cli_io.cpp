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

#include "cli.hpp"

#include "otfslab/config.hpp"
#include "otfslab/csv.hpp"
#include "otfslab/errors.hpp"

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace otfs;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run_cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    Run r;
    r.code = otfs::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "otfslab_test_cli_io";
    fs::create_directories(dir);
    return dir / name;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    f << text;
}

std::string read_file(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

mc::BerCurve sample_curve() {
    mc::BerCurve c;
    c.preset = "custom";
    c.waveform = mc::Waveform::ofdm;
    mc::BerPoint a;
    a.snr_db = 0.0;
    a.ber_mc = 0.123456789012345678;
    a.ci_low = 0.1;
    a.ci_high = 1.0 / 7.0;
    a.ber_analytic = 3.3e-17;
    a.bit_errors = 123;
    a.bits = 1000;
    mc::BerPoint b;
    b.snr_db = 2.5;
    b.ber_analytic = 0.01;
    c.points = {a, b};
    return c;
}

} // namespace

TEST_CASE("config parsing", "[io][config]") {
    const auto c = io::parse_config("# comment\n\nM = 2\nscheme = qpsk\norder = 4\nsnr_db = 0:5:10\npath_m = 1,2\n"
                                    "path_omega = 0.5, 0.5\npath_delay = 0,1\n");
    CHECK(c.grid.M == 2);
    CHECK(c.scheme == Scheme::qpsk);
    CHECK(c.snr_db == std::vector<double>{0.0, 5.0, 10.0});
    REQUIRE(c.paths.size() == 2);
    CHECK(c.paths[1].m == 2.0);
    CHECK(c.paths[1].delay == 1);

    CHECK_THROWS_AS(io::parse_config("bogus = 1\n"), ConfigError);
    CHECK_THROWS_AS(io::parse_config("M = 2\nM = 2\n"), ConfigError);
    CHECK_THROWS_AS(io::parse_config("M 2\n"), ConfigError);
    CHECK_THROWS_AS(io::parse_config("M = two\n"), ConfigError);
    CHECK_THROWS_AS(io::parse_snr_list("0:-1:10"), ConfigError);
    CHECK_THROWS_AS(io::preset("no-such-preset"), ConfigError);
}

TEST_CASE("describe round trips every preset", "[io][config]") {
    for (const auto& name : io::preset_names()) {
        const auto c = io::preset(name);
        const auto settings = io::describe(c);
        std::string text;
        for (const auto& [k, v] : settings) {
            text += k + " = " + v + "\n";
        }
        INFO(name);
        CHECK(io::describe(io::parse_config(text)) == settings);
    }
}

TEST_CASE("CSV round trip", "[io][csv]") {
    const auto curve = sample_curve();
    io::RunManifest m = io::RunManifest::now(5, "test");
    m.configs.push_back({"", io::describe(mc::SweepConfig{})});
    const std::string text = io::format_csv({curve}, m);
    const auto doc = io::parse_csv(text);
    REQUIRE(doc.curves.size() == 1);
    const auto& back = doc.curves[0];
    CHECK(back.preset == "custom");
    CHECK(back.waveform == mc::Waveform::ofdm);
    REQUIRE(back.points.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        const auto& p = curve.points[i];
        const auto& q = back.points[i];
        CHECK(q.snr_db == p.snr_db);
        for (auto field : {&mc::BerPoint::ber_mc, &mc::BerPoint::ci_low, &mc::BerPoint::ci_high,
                           &mc::BerPoint::ber_analytic}) {
            REQUIRE((p.*field).has_value() == (q.*field).has_value());
            if (p.*field) {
                CHECK(std::abs(*(q.*field) - *(p.*field)) <= 1e-12 * std::abs(*(p.*field)));
            }
        }
        CHECK(q.bit_errors == p.bit_errors);
        CHECK(q.bits == p.bits);
    }
}

TEST_CASE("analytic-only rows leave Monte Carlo fields empty", "[io][csv]") {
    auto curve = mc::analytic_curve(io::preset("fig1-m1"));
    curve.points.resize(1);
    const std::string text = io::format_csv({curve}, io::RunManifest::now(1, "x"));
    const std::string rows = io::data_rows(text);
    CHECK(count_lines(rows) == 2);
    const std::string row = rows.substr(rows.find('\n') + 1);
    CHECK(row.rfind("0.0000000000000000e+00,,,,", 0) == 0);
    CHECK(row.find(",,otfs,fig1-m1") != std::string::npos);
    CHECK(text.find("# ") == 0);
}

TEST_CASE("emit_csv reports unwritable paths", "[io][csv]") {
    const auto curve = sample_curve();
    CHECK_THROWS_AS(io::emit_csv({curve}, {}, "/nonexistent-dir/out.csv"), IoError);
    CHECK_THROWS_AS(io::emit_csv({mc::BerCurve{}}, {}, scratch("empty.csv")), ConfigError);
    const auto p = scratch("ok.csv");
    io::emit_csv({curve}, {}, p);
    CHECK(io::parse_csv(read_file(p)).curves.size() == 1);
}

TEST_CASE("cli: usage and config errors", "[io][cli]") {
    const auto unknown = run_cli({"sweep", "--no-such-flag"});
    CHECK(unknown.code == 2);
    CHECK(unknown.err.find("Usage") != std::string::npos);
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"sweep", "--preset", "nope"}).code == 2);

    const auto presets = run_cli({"presets"});
    CHECK(presets.code == 0);
    CHECK(presets.out.find("fig1-m1\n") != std::string::npos);

    const auto dup = scratch("dup.cfg");
    write_file(dup, "path_m = 1,1\npath_omega = 0.5,0.5\npath_delay = 0,1\nnormalize_powers = false\n");
    const auto degenerate = run_cli({"analytic", "--config", dup.string()});
    CHECK(degenerate.code == 2);
    CHECK(degenerate.err.find("scale") != std::string::npos);

    const auto big = scratch("big.cfg");
    write_file(big, "M = 4\nN = 4\nscheme = qpsk\norder = 4\nsnr_db = 10\n");
    CHECK(run_cli({"sweep", "--config", big.string()}).code == 3);
}

TEST_CASE("cli: analytic writes a dense curve", "[io][cli]") {
    const auto r = run_cli({"analytic", "--preset", "fig1-m2"});
    REQUIRE(r.code == 0);
    const auto doc = io::parse_csv(r.out);
    REQUIRE(doc.curves.size() == 1);
    CHECK(doc.curves[0].points.size() == 41);
    for (const auto& p : doc.curves[0].points) {
        CHECK_FALSE(p.ber_mc.has_value());
        CHECK(p.ber_analytic.has_value());
    }
}

TEST_CASE("cli: figure 1", "[io][cli][slow]") {
    const auto r = run_cli({"figure", "1", "--target-errors", "100"});
    REQUIRE(r.code == 0);
    const auto doc = io::parse_csv(r.out);
    REQUIRE(doc.curves.size() == 2);
    std::set<std::string> names;
    for (const auto& c : doc.curves) {
        names.insert(c.preset);
        REQUIRE(c.points.size() == 11);
        for (std::size_t i = 0; i < 11; ++i) {
            CHECK(c.points[i].snr_db == 2.0 * static_cast<double>(i));
            CHECK(c.points[i].ber_mc.has_value());
            CHECK(c.points[i].ber_analytic.has_value());
        }
    }
    CHECK(names == std::set<std::string>{"fig1-m1", "fig1-m2"});
    CHECK(r.out.find("# config[fig1-m1]: scheme = bpsk") != std::string::npos);
}

TEST_CASE("cli: replaying a results file reproduces its data rows", "[io][cli]") {
    const auto first = scratch("first.csv");
    REQUIRE(run_cli({"sweep", "--preset", "fig2-m12", "--snr", "0:4:12", "--seed", "17", "--workers", "2", "--out",
                 first.string()})
                .code == 0);
    const auto again = run_cli({"sweep", "--config", first.string()});
    REQUIRE(again.code == 0);
    CHECK(io::data_rows(again.out) == io::data_rows(read_file(first)));

    const auto cmp = scratch("compare.csv");
    REQUIRE(run_cli({"compare", "--preset", "fig1-m1", "--snr", "0:5:10", "--out", cmp.string()}).code == 0);
    const auto replay = run_cli({"compare", "--config", cmp.string(), "--section", "otfs"});
    REQUIRE(replay.code == 0);
    CHECK(io::data_rows(replay.out) == io::data_rows(read_file(cmp)));
    CHECK(run_cli({"compare", "--config", cmp.string(), "--section", "missing"}).code == 2);
}

TEST_CASE("cli: diversity report", "[io][cli]") {
    const auto r = run_cli({"diversity", "--preset", "siso-p1-m1", "--analytic-only"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("\"gd_approx\": 1.0") != std::string::npos);
    CHECK(r.out.find("\"gd_analytic\"") != std::string::npos);
    CHECK(r.out.find("gd_empirical") == std::string::npos);
}
