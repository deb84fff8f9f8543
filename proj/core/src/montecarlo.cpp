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

#include "otfslab/montecarlo.hpp"

#include "otfslab/analytic.hpp"
#include "otfslab/errors.hpp"
#include "otfslab/random.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <bit>
#include <exception>
#include <memory>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

namespace otfs::mc {

namespace {

constexpr std::uint32_t kFrameDomain = 1;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

struct BatchResult {
    std::uint64_t frames = 0;
    std::uint64_t errors = 0;
    std::uint64_t errors_squared = 0;
};

// Per-worker buffers for frame simulation.
class FrameSimulator {
  public:
    FrameSimulator(const FrameSimulator&) = delete;
    FrameSimulator& operator=(const FrameSimulator&) = delete;

    explicit FrameSimulator(const SweepConfig& cfg)
        : cfg_(cfg), constellation_(Constellation::make(cfg.scheme, cfg.order)), n_(cfg.grid.size()),
          detector_(constellation_, n_, cfg.hypothesis_cap), base_paths_(cfg.resolved_paths()) {
        const OtfsGrid& g = cfg.grid;
        if (cfg.waveform == Waveform::otfs) {
            transform_ = kron(dft_matrix(g.N), CMatrix::Identity(g.M, g.M));
        } else {
            transform_ = kron(CMatrix::Identity(g.N, g.N), dft_matrix(g.M));
        }
        H_.resize(n_, n_);
        H_eff_.resize(n_, n_);
        tmp_.resize(n_, n_);
        x_.resize(n_);
        w_.resize(n_);
        y_.resize(n_);
        sent_.resize(n_);
    }

    std::uint64_t run(double snr_db, std::uint64_t frame, FrameRecord* record = nullptr) {
        RandomStream rng(cfg_.master_seed, kFrameDomain, frame_stream_index(snr_db, frame));
        const OtfsGrid& g = cfg_.grid;

        std::vector<PathSpec> specs = base_paths_;
        if (cfg_.eva_placement) {
            const auto placed = eva_grid_placement(g, cfg_.carrier_hz, cfg_.speed_kmh / 3.6, cfg_.eva_paths, rng,
                                                   cfg_.eva_m);
            for (std::size_t p = 0; p < specs.size(); ++p) {
                specs[p].doppler = placed[p].doppler;
            }
        }
        const ChannelRealization ch = generate_channel(specs, rng, false, frame);

        const int mask = constellation_.order - 1;
        for (int i = 0; i < n_; ++i) {
            sent_[i] = static_cast<int>(rng() & static_cast<std::uint32_t>(mask));
            x_(i) = constellation_.points[sent_[i]];
        }
        const double n0 = 1.0 / db_to_linear(snr_db);
        std::normal_distribution<double> gauss(0.0, std::sqrt(n0 / 2.0));
        for (int i = 0; i < n_; ++i) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            w_(i) = cfg_.noise_free ? cd{} : cd{re, im};
        }

        H_.setZero();
        for (std::size_t p = 0; p < ch.gains.size(); ++p) {
            const auto& s = ch.specs[p];
            const double exponent = s.doppler + s.fractional_doppler;
            for (int r = 0; r < n_; ++r) {
                const int c = (r - s.delay % n_ + n_) % n_;
                const double cycles = std::fmod(exponent * c, static_cast<double>(n_));
                H_(r, c) += ch.gains[p] * std::polar(1.0, 2.0 * std::numbers::pi * cycles / n_);
            }
        }
        tmp_.noalias() = transform_ * H_;
        H_eff_.noalias() = tmp_ * transform_.adjoint();
        y_.noalias() = H_eff_ * x_;
        y_.noalias() += transform_ * w_;

        detector_.detect(H_eff_, y_, detected_);
        std::uint64_t errors = 0;
        for (int i = 0; i < n_; ++i) {
            errors += static_cast<std::uint64_t>(constellation_.bit_distance(sent_[i], detected_[i]));
        }
        if (record != nullptr) {
            record->gains = ch.gains;
            record->specs = ch.specs;
            record->sent = sent_;
            record->detected = detected_;
            record->noise = w_;
            record->received = y_;
            record->bit_errors = errors;
        }
        return errors;
    }

    BatchResult run_batch(double snr_db, std::uint64_t first, std::uint64_t count) {
        BatchResult r;
        for (std::uint64_t f = first; f < first + count; ++f) {
            const std::uint64_t e = run(snr_db, f);
            r.errors += e;
            r.errors_squared += e * e;
            ++r.frames;
        }
        return r;
    }

    int bits_per_frame() const { return n_ * constellation_.bits_per_symbol; }

  private:
    const SweepConfig& cfg_;
    Constellation constellation_;
    int n_;
    MlDetector detector_;
    std::vector<PathSpec> base_paths_;
    CMatrix transform_;
    CMatrix H_;
    CMatrix H_eff_;
    CMatrix tmp_;
    CVector x_;
    CVector w_;
    CVector y_;
    std::vector<int> sent_;
    std::vector<int> detected_;
};

double design_effect(std::uint64_t frames, std::uint64_t errors, std::uint64_t errors_squared, int bits_per_frame) {
    if (frames < 2 || errors == 0) {
        return 1.0;
    }
    const double n = static_cast<double>(frames);
    const double mean = static_cast<double>(errors) / n;
    const double var = (static_cast<double>(errors_squared) - n * mean * mean) / (n - 1.0);
    const double p = mean / bits_per_frame;
    const double binomial_var = bits_per_frame * p * (1.0 - p);
    if (!(binomial_var > 0.0)) {
        return 1.0;
    }
    return std::max(1.0, var / binomial_var);
}

void push_warning(std::vector<std::string>* warnings, const std::string& w) {
    if (warnings != nullptr && std::find(warnings->begin(), warnings->end(), w) == warnings->end()) {
        warnings->push_back(w);
    }
}

} // namespace

Waveform parse_waveform(const std::string& s) {
    if (s == "otfs") return Waveform::otfs;
    if (s == "ofdm") return Waveform::ofdm;
    throw ConfigError("waveform must be otfs or ofdm, got '" + s + "'");
}

Mode parse_mode(const std::string& s) {
    if (s == "siso") return Mode::siso;
    if (s == "simo") return Mode::simo;
    throw ConfigError("mode must be siso or simo, got '" + s + "'");
}

std::string to_string(Waveform w) { return w == Waveform::otfs ? "otfs" : "ofdm"; }
std::string to_string(Mode m) { return m == Mode::siso ? "siso" : "simo"; }

void SweepConfig::validate() const {
    grid.validate();
    if (snr_db.empty()) {
        throw ConfigError("at least one SNR point is required");
    }
    for (std::size_t i = 0; i < snr_db.size(); ++i) {
        if (!std::isfinite(snr_db[i])) {
            throw ConfigError("SNR points must be finite");
        }
        if (i > 0 && !(snr_db[i] > snr_db[i - 1])) {
            throw ConfigError("SNR points must be strictly increasing");
        }
    }
    if (max_frames < 1 || target_bit_errors < 1 || batch_frames < 1) {
        throw ConfigError("max_frames, target_bit_errors and batch_frames must be >= 1");
    }
    if (workers < 1 || workers > 256) {
        throw ConfigError("workers must lie in [1, 256]");
    }
    if (users < 1) {
        throw ConfigError("users must be >= 1");
    }
    if (!(hypothesis_cap >= 1.0)) {
        throw ConfigError("hypothesis_cap must be >= 1");
    }
    analytic::mod_params(scheme, order);
    if (mode == Mode::siso) {
        Constellation::make(scheme, order);
    }
    if (eva_placement) {
        if (eva_paths < 1 || eva_paths > grid.M) {
            throw ConfigError("eva_paths must lie in [1, M]");
        }
        max_doppler_hz(carrier_hz, speed_kmh / 3.6);
    } else if (paths.empty()) {
        throw ConfigError("at least one path is required");
    }
    for (const auto& p : resolved_paths()) {
        if (p.delay < 0 || p.delay >= grid.size()) {
            throw ConfigError("path delay index must lie in [0, MN)");
        }
        if (!(p.fractional_doppler >= -0.5 && p.fractional_doppler < 0.5)) {
            throw ConfigError("fractional Doppler must lie in [-0.5, 0.5)");
        }
    }
}

std::vector<PathSpec> SweepConfig::resolved_paths() const {
    if (eva_placement) {
        const auto powers = eva::strongest_tap_powers(eva_paths);
        std::vector<PathSpec> specs(eva_paths);
        for (int p = 0; p < eva_paths; ++p) {
            specs[p].m = eva_m;
            specs[p].omega = powers[p];
            specs[p].delay = p;
        }
        for (const auto& s : specs) {
            validate_path_spec(s);
        }
        return specs;
    }
    if (paths.empty()) {
        throw ConfigError("at least one path is required");
    }
    if (normalize_powers) {
        return otfs::normalize_powers(paths);
    }
    for (const auto& s : paths) {
        validate_path_spec(s);
    }
    return paths;
}

std::vector<analytic::UserPaths> SweepConfig::interferers() const {
    return std::vector<analytic::UserPaths>(static_cast<std::size_t>(users - 1), resolved_paths());
}

const BerPoint& BerCurve::at(double snr_db) const {
    for (const auto& p : points) {
        if (std::abs(p.snr_db - snr_db) < 1e-9) {
            return p;
        }
    }
    throw ConfigError("curve has no point at " + std::to_string(snr_db) + " dB");
}

Interval wilson_interval(double errors, double trials, double confidence) {
    if (!(trials > 0.0) || !(errors >= 0.0) || errors > trials) {
        throw DomainError("wilson_interval requires 0 <= errors <= trials and trials > 0");
    }
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw DomainError("confidence must lie in (0, 1)");
    }
    const double z = boost::math::quantile(boost::math::normal(), 0.5 + confidence / 2.0);
    const double p = errors / trials;
    const double z2n = z * z / trials;
    const double centre = (p + z2n / 2.0) / (1.0 + z2n);
    const double half = z / (1.0 + z2n) * std::sqrt(p * (1.0 - p) / trials + z2n / (4.0 * trials));
    Interval out{std::max(0.0, centre - half), std::min(1.0, centre + half)};
    if (errors == 0.0) {
        out.low = 0.0;
    }
    if (errors == trials) {
        out.high = 1.0;
    }
    return out;
}

Interval wilson_interval(std::uint64_t errors, std::uint64_t trials, double confidence) {
    if (trials == 0 || errors > trials) {
        throw DomainError("wilson_interval requires 0 <= errors <= trials and trials > 0");
    }
    return wilson_interval(static_cast<double>(errors), static_cast<double>(trials), confidence);
}

Interval effective_interval(const BerPoint& point, double confidence) {
    if (!point.bits || !point.bit_errors || *point.bits == 0) {
        throw DomainError("point has no Monte Carlo counts");
    }
    const double n_eff = static_cast<double>(*point.bits) / point.design_effect;
    const double p = static_cast<double>(*point.bit_errors) / static_cast<double>(*point.bits);
    return wilson_interval(p * n_eff, n_eff, confidence);
}

std::uint64_t frame_stream_index(double snr_db, std::uint64_t frame) {
    return mix64(mix64(std::bit_cast<std::uint64_t>(snr_db)) + frame);
}

std::optional<double> analytic_point(const SweepConfig& config, double snr_db, std::vector<std::string>* warnings) {
    const auto mod = analytic::mod_params(config.scheme, config.order);
    const double g = db_to_linear(snr_db);
    try {
        if (config.mode == Mode::siso) {
            return analytic::siso_ber(g, config.resolved_paths(), mod);
        }
        const auto eval = analytic::evaluate_multiuser(g, config.interferers(), mod);
        if (eval.interference_free) {
            push_warning(warnings, "users = 1: no interference, analytic column uses the deterministic-SINR "
                                   "formula A Q(sqrt(2 B Es/N0)) / log2 M");
        }
        return eval.ber;
    } catch (const DegeneracyError& e) {
        push_warning(warnings, std::string("analytic value unavailable: ") + e.what());
    } catch (const DomainError& e) {
        push_warning(warnings, std::string("analytic value unavailable: ") + e.what());
    }
    return std::nullopt;
}

BerCurve analytic_curve(const SweepConfig& config) {
    config.validate();
    BerCurve curve;
    curve.waveform = config.waveform;
    curve.preset = config.preset;
    for (double snr : config.snr_db) {
        BerPoint pt;
        pt.snr_db = snr;
        pt.ber_analytic = analytic_point(config, snr, &curve.warnings);
        curve.points.push_back(pt);
    }
    return curve;
}

FrameRecord simulate_frame(const SweepConfig& config, double snr_db, std::uint64_t frame) {
    config.validate();
    FrameSimulator sim(config);
    FrameRecord rec;
    sim.run(snr_db, frame, &rec);
    return rec;
}

BerCurve run_sweep(const SweepConfig& config, const ProgressHook& progress) {
    config.validate();
    BerCurve curve;
    curve.waveform = config.waveform;
    curve.preset = config.preset;
    const auto mod = analytic::mod_params(config.scheme, config.order);

    if (config.mode == Mode::simo) {
        const auto interferers = config.interferers();
        const double z = boost::math::quantile(boost::math::normal(), 0.975);
        for (std::size_t i = 0; i < config.snr_db.size(); ++i) {
            const double snr = config.snr_db[i];
            BerPoint pt;
            pt.snr_db = snr;
            const std::uint64_t seed = mix64(config.master_seed ^ mix64(std::bit_cast<std::uint64_t>(snr)));
            const auto r = analytic::semi_analytic_mc_ber(db_to_linear(snr), interferers, mod, seed,
                                                          config.semianalytic_trials);
            pt.ber_mc = r.ber;
            pt.ci_low = std::max(0.0, r.ber - z * r.standard_error);
            pt.ci_high = std::min(1.0, r.ber + z * r.standard_error);
            pt.frames = r.trials;
            pt.ber_analytic = analytic_point(config, snr, &curve.warnings);
            curve.points.push_back(pt);
            if (progress) {
                progress({i, snr, r.trials, 0});
            }
        }
        return curve;
    }

    std::vector<std::unique_ptr<FrameSimulator>> sims;
    for (int w = 0; w < config.workers; ++w) {
        sims.push_back(std::make_unique<FrameSimulator>(config));
    }
    const int bits_per_frame = sims.front()->bits_per_frame();
    const std::uint64_t batches_total = (config.max_frames + config.batch_frames - 1) / config.batch_frames;

    for (std::size_t i = 0; i < config.snr_db.size(); ++i) {
        const double snr = config.snr_db[i];
        std::uint64_t frames = 0;
        std::uint64_t errors = 0;
        std::uint64_t errors_sq = 0;
        std::uint64_t next_batch = 0;
        bool done = false;
        while (!done && next_batch < batches_total) {
            const std::uint64_t round =
                std::min<std::uint64_t>(static_cast<std::uint64_t>(config.workers), batches_total - next_batch);
            std::vector<BatchResult> results(round);
            auto work = [&](std::uint64_t slot) {
                const std::uint64_t b = next_batch + slot;
                const std::uint64_t first = b * config.batch_frames;
                const std::uint64_t count = std::min(config.batch_frames, config.max_frames - first);
                results[slot] = sims[slot]->run_batch(snr, first, count);
            };
            std::vector<std::thread> threads;
            std::vector<std::exception_ptr> failures(round);
            for (std::uint64_t slot = 1; slot < round; ++slot) {
                threads.emplace_back([&, slot] {
                    try {
                        work(slot);
                    } catch (...) {
                        failures[slot] = std::current_exception();
                    }
                });
            }
            try {
                work(0);
            } catch (...) {
                failures[0] = std::current_exception();
            }
            for (auto& t : threads) {
                t.join();
            }
            for (const auto& f : failures) {
                if (f) {
                    std::rethrow_exception(f);
                }
            }
            // Merge in batch order; the stop rule sees batches one at a time.
            for (const auto& r : results) {
                frames += r.frames;
                errors += r.errors;
                errors_sq += r.errors_squared;
                ++next_batch;
                if (progress) {
                    progress({i, snr, frames, errors});
                }
                if (errors >= config.target_bit_errors) {
                    done = true;
                    break;
                }
            }
        }
        BerPoint pt;
        pt.snr_db = snr;
        pt.frames = frames;
        pt.bit_errors = errors;
        pt.bits = frames * static_cast<std::uint64_t>(bits_per_frame);
        pt.ber_mc = static_cast<double>(errors) / static_cast<double>(*pt.bits);
        pt.design_effect = design_effect(frames, errors, errors_sq, bits_per_frame);
        const Interval ci = effective_interval(pt, 0.95);
        pt.ci_low = ci.low;
        pt.ci_high = ci.high;
        pt.ber_analytic = analytic_point(config, snr, &curve.warnings);
        curve.points.push_back(pt);
    }
    return curve;
}

} // namespace otfs::mc
