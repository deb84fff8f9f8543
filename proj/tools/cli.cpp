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

#include "otfslab/otfslab.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace otfs::cli {

namespace {

enum ExitCode { kOk = 0, kOther = 1, kConfig = 2, kCapacity = 3, kNumeric = 4 };

struct CommonOptions {
    std::string preset;
    std::string config_file;
    std::string section;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string snr;
    std::optional<std::uint64_t> frames_max;
    std::optional<std::uint64_t> target_errors;
    std::string waveform;
    std::string mode;
    std::optional<int> workers;
    bool progress = false;
};

void add_common(CLI::App* app, CommonOptions& o, bool with_preset = true) {
    if (with_preset) {
        app->add_option("--preset", o.preset, "named preset (see `presets`)");
    }
    app->add_option("--config", o.config_file, "key = value config file, or a results CSV to replay");
    app->add_option("--section", o.section, "config section to replay from a multi-curve CSV");
    app->add_option("--seed", o.seed, "master seed");
    app->add_option("--out", o.out, "output file (default stdout)");
    app->add_option("--snr", o.snr, "SNR grid in dB, start:step:stop or a comma list");
    app->add_option("--frames-max", o.frames_max, "frame budget per SNR point");
    app->add_option("--target-errors", o.target_errors, "bit errors that end an SNR point");
    app->add_option("--waveform", o.waveform, "otfs | ofdm");
    app->add_option("--mode", o.mode, "siso | simo");
    app->add_option("--workers", o.workers, "worker threads");
    app->add_flag("--progress", o.progress, "report progress on stderr");
}

std::vector<io::Setting> flag_settings(const CommonOptions& o) {
    std::vector<io::Setting> s;
    if (o.seed) s.emplace_back("master_seed", std::to_string(*o.seed));
    if (!o.snr.empty()) s.emplace_back("snr_db", o.snr);
    if (o.frames_max) s.emplace_back("max_frames", std::to_string(*o.frames_max));
    if (o.target_errors) s.emplace_back("target_bit_errors", std::to_string(*o.target_errors));
    if (!o.waveform.empty()) s.emplace_back("waveform", o.waveform);
    if (!o.mode.empty()) s.emplace_back("mode", o.mode);
    if (o.workers) s.emplace_back("workers", std::to_string(*o.workers));
    return s;
}

mc::SweepConfig resolve(const CommonOptions& o, const std::string& preset_name) {
    mc::SweepConfig c = preset_name.empty() ? mc::SweepConfig{} : io::preset(preset_name);
    if (!o.config_file.empty()) {
        c = io::load_config(o.config_file, c, o.section);
    }
    io::apply_settings(c, flag_settings(o));
    c.validate();
    return c;
}

std::vector<std::string> notes_for(const std::string& preset_name) {
    for (const auto& n : io::preset_names()) {
        if (n == preset_name) {
            return io::preset_assumptions(n);
        }
    }
    return {};
}

void write_text(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        out.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw IoError("cannot open " + path + " for writing");
    }
    f << text;
    f.flush();
    if (!f) {
        throw IoError("failed writing " + path);
    }
}

void write_curves(const std::vector<mc::BerCurve>& curves, const io::RunManifest& manifest, const std::string& path,
                  std::ostream& out) {
    bool any = false;
    for (const auto& c : curves) {
        any = any || !c.points.empty();
    }
    if (!any) {
        throw ConfigError("refusing to write an empty curve");
    }
    write_text(io::format_csv(curves, manifest), path, out);
}

mc::ProgressHook progress_hook(bool enabled, std::ostream& err) {
    if (!enabled) {
        return {};
    }
    return [&err](const mc::Progress& p) {
        err << "  snr " << p.snr_db << " dB: " << p.frames << " frames, " << p.bit_errors << " bit errors\n";
    };
}

std::string join_args(const std::vector<std::string>& args) {
    std::string s;
    for (const auto& a : args) {
        if (!s.empty()) s += ' ';
        s += a;
    }
    return s;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"otfslab: OTFS/OFDM link-level BER under Nakagami-m fading"};
    app.require_subcommand(1);

    CommonOptions sweep_opt;
    auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep with the analytic curve");
    add_common(sweep, sweep_opt);

    CommonOptions analytic_opt;
    auto* analytic = app.add_subcommand("analytic", "closed-form curve only");
    add_common(analytic, analytic_opt);

    CommonOptions compare_opt;
    auto* compare = app.add_subcommand("compare", "paired OTFS and OFDM sweep");
    add_common(compare, compare_opt);

    CommonOptions div_opt;
    double snr1 = 10.0;
    double snr2 = 20.0;
    bool div_analytic_only = false;
    auto* div = app.add_subcommand("diversity", "BER slope report (JSON)");
    add_common(div, div_opt);
    div->add_option("--snr1", snr1, "lower SNR of the slope (dB)");
    div->add_option("--snr2", snr2, "upper SNR of the slope (dB)");
    div->add_flag("--analytic-only", div_analytic_only, "skip the Monte Carlo run");
    bool div_asymptotic = false;
    div->add_flag("--asymptotic", div_asymptotic, "analytic slope over 30 to 40 dB");

    CommonOptions fig_opt;
    int figure_number = 0;
    auto* fig = app.add_subcommand("figure", "run every preset of one figure");
    fig->add_option("number", figure_number, "1, 2, 3 or 4")->required();
    add_common(fig, fig_opt, false);

    auto* presets = app.add_subcommand("presets", "list preset names");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    const std::string command = join_args(args);
    try {
        try {
            app.parse(reversed);
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return kOk;
        } catch (const CLI::CallForAllHelp&) {
            out << app.help("", CLI::AppFormatMode::All);
            return kOk;
        } catch (const CLI::ParseError& e) {
            err << "error: " << e.what() << "\n\n" << app.help();
            return kConfig;
        }

        if (presets->parsed()) {
            for (const auto& n : io::preset_names()) {
                out << n << "\n";
            }
            return kOk;
        }

        if (sweep->parsed() || analytic->parsed() || compare->parsed()) {
            const CommonOptions& o = sweep->parsed() ? sweep_opt : (analytic->parsed() ? analytic_opt : compare_opt);
            mc::SweepConfig config = resolve(o, o.preset);
            if (analytic->parsed() && o.snr.empty()) {
                config.snr_db = io::parse_snr_list("0:0.5:20");
            }
            io::RunManifest manifest = io::RunManifest::now(config.master_seed, command);
            manifest.notes = notes_for(config.preset);
            std::vector<mc::BerCurve> curves;
            if (compare->parsed()) {
                for (mc::Waveform w : {mc::Waveform::otfs, mc::Waveform::ofdm}) {
                    mc::SweepConfig c = config;
                    c.waveform = w;
                    curves.push_back(mc::run_sweep(c, progress_hook(o.progress, err)));
                    manifest.configs.push_back({mc::to_string(w), io::describe(c)});
                }
            } else if (analytic->parsed()) {
                curves.push_back(mc::analytic_curve(config));
                // The analytic column is the only output here, so a missing value is fatal.
                for (const auto& pt : curves.back().points) {
                    if (!pt.ber_analytic) {
                        throw ConfigError(curves.back().warnings.empty() ? "analytic value unavailable"
                                                                         : curves.back().warnings.front());
                    }
                }
                manifest.configs.push_back({"", io::describe(config)});
            } else {
                curves.push_back(mc::run_sweep(config, progress_hook(o.progress, err)));
                manifest.configs.push_back({"", io::describe(config)});
            }
            write_curves(curves, manifest, o.out, out);
            return kOk;
        }

        if (fig->parsed()) {
            const auto names = io::figure_presets(figure_number);
            std::vector<mc::BerCurve> curves;
            io::RunManifest manifest;
            for (const auto& name : names) {
                const mc::SweepConfig config = resolve(fig_opt, name);
                if (curves.empty()) {
                    manifest = io::RunManifest::now(config.master_seed, command);
                }
                if (fig_opt.progress) {
                    err << name << "\n";
                }
                curves.push_back(mc::run_sweep(config, progress_hook(fig_opt.progress, err)));
                manifest.configs.push_back({name, io::describe(config)});
                for (const auto& n : io::preset_assumptions(name)) {
                    if (std::find(manifest.notes.begin(), manifest.notes.end(), n) == manifest.notes.end()) {
                        manifest.notes.push_back(n);
                    }
                }
            }
            write_curves(curves, manifest, fig_opt.out, out);
            return kOk;
        }

        if (div->parsed()) {
            mc::SweepConfig config = resolve(div_opt, div_opt.preset);
            if (div_asymptotic) {
                snr1 = 30.0;
                snr2 = 40.0;
                div_analytic_only = true;
            }
            config.snr_db = {snr1, snr2};
            const mc::BerCurve curve = div_analytic_only ? mc::analytic_curve(config) : mc::run_sweep(config);
            diversity::DiversityReport r;
            r.label = config.preset + "/" + mc::to_string(config.waveform);
            r.snr1_db = snr1;
            r.snr2_db = snr2;
            std::vector<double> shapes;
            for (const auto& p : config.resolved_paths()) {
                shapes.push_back(p.m);
            }
            r.gd_approx = config.mode == mc::Mode::simo ? diversity::simo_gd_approx(config.users, shapes)
                                                        : diversity::siso_gd_approx(shapes);
            nlohmann::ordered_json j;
            j["label"] = r.label;
            j["snr1_db"] = r.snr1_db;
            j["snr2_db"] = r.snr2_db;
            if (!div_analytic_only) {
                r.gd_empirical = diversity::empirical_gd(curve, snr1, snr2, diversity::CurveColumn::monte_carlo);
                j["gd_empirical"] = r.gd_empirical;
                j["bit_errors"] = {*curve.points[0].bit_errors, *curve.points[1].bit_errors};
            }
            const auto& a1 = curve.points[0].ber_analytic;
            const auto& a2 = curve.points[1].ber_analytic;
            if (a1 && a2) {
                j["gd_analytic"] = diversity::empirical_gd(*a1, snr1, *a2, snr2);
            } else {
                j["gd_analytic"] = nullptr;
            }
            j["gd_approx"] = r.gd_approx;
            j["master_seed"] = config.master_seed;
            j["notes"] = notes_for(config.preset);
            j["warnings"] = curve.warnings;
            nlohmann::ordered_json cfg;
            for (const auto& [k, v] : io::describe(config)) {
                cfg[k] = v;
            }
            j["config"] = cfg;
            write_text(j.dump(2) + "\n", div_opt.out, out);
            return kOk;
        }
    } catch (const CapacityError& e) {
        err << "capacity error: " << e.what() << "\n";
        return kCapacity;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << "\n";
        return kNumeric;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const DomainError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const ShapeError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kOther;
    }
    err << app.help();
    return kConfig;
}

int cli_main(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, std::cout, std::cerr);
}

} // namespace otfs::cli
