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

#include "otfslab/multiuser.hpp"

#include "otfslab/errors.hpp"
#include "otfslab/random.hpp"
#include "otfslab/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace otfs::analytic {

namespace {

constexpr std::uint32_t kSemiAnalyticDomain = 3;
constexpr std::uint64_t kSemiAnalyticBlock = 4096;

specfun::QuadratureSpec tight_spec() {
    specfun::QuadratureSpec spec;
    spec.absolute_tolerance = 1e-300;
    spec.relative_tolerance = 1e-13;
    spec.max_subdivisions = 20000;
    return spec;
}

void check_snr(double es_n0) {
    if (!(std::isfinite(es_n0) && es_n0 > 0.0)) {
        throw DomainError("Es/N0 must be finite and positive");
    }
}

void check_approx(const SinrGammaApprox& a) {
    if (!(std::isfinite(a.m_z) && a.m_z > 0.0 && std::isfinite(a.omega_z) && a.omega_z > 0.0)) {
        throw DomainError("Gamma interference model needs finite m_z > 0 and omega_z > 0");
    }
}

double clamp_ber(double ber, const ModErrorParams& mod) { return std::clamp(ber, 0.0, std::min(1.0, 0.5 * mod.A)); }

} // namespace

SinrMoments sinr_moments(double es_n0, const std::vector<UserPaths>& interferers) {
    check_snr(es_n0);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const auto& user : interferers) {
        for (const auto& p : user) {
            validate_path_spec(p);
            sum += p.omega;
            sum_sq += p.omega * p.omega / p.m;
        }
    }
    return {es_n0 * sum, es_n0 * es_n0 * sum_sq};
}

SinrGammaApprox gamma_approx(double mu_S, double sigma2_S) {
    if (!(sigma2_S > 0.0)) {
        throw DegeneracyError("interference variance is zero; use the interference-free error rate");
    }
    if (!(std::isfinite(mu_S) && mu_S > 0.0 && std::isfinite(sigma2_S))) {
        throw DomainError("interference moments must be finite with positive mean");
    }
    return {mu_S, sigma2_S, mu_S * mu_S / sigma2_S, sigma2_S / mu_S};
}

double sinr_cdf(double y, double es_n0, const SinrGammaApprox& approx) {
    check_snr(es_n0);
    check_approx(approx);
    if (!(y > 0.0)) {
        throw DomainError("SINR argument must be positive");
    }
    if (y >= es_n0) {
        return 1.0;
    }
    return specfun::regularized_upper_gamma(approx.m_z, (es_n0 / y - 1.0) / approx.omega_z);
}

double sinr_lower_gamma_form(double y, double es_n0, const SinrGammaApprox& approx) {
    check_snr(es_n0);
    check_approx(approx);
    if (!(y > 0.0 && y <= es_n0)) {
        throw DomainError("SINR argument must lie in (0, Es/N0]");
    }
    return specfun::regularized_lower_gamma(approx.m_z, (es_n0 / y - 1.0) / approx.omega_z);
}

double sinr_pdf(double y, double es_n0, const SinrGammaApprox& approx) {
    check_snr(es_n0);
    check_approx(approx);
    if (!(y > 0.0 && y <= es_n0)) {
        throw DomainError("SINR argument must lie in (0, Es/N0]");
    }
    const double s = es_n0 / y - 1.0;
    if (std::isinf(s)) {
        return 0.0;
    }
    if (s == 0.0) {
        if (approx.m_z == 1.0) {
            return es_n0 / (y * y) / approx.omega_z;
        }
        return approx.m_z > 1.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    const double log_density = (approx.m_z - 1.0) * std::log(s) - s / approx.omega_z -
                               approx.m_z * std::log(approx.omega_z) - specfun::ln_gamma(approx.m_z);
    return std::exp(log_density + std::log(es_n0) - 2.0 * std::log(y));
}

double multiuser_ser(double es_n0, const SinrGammaApprox& approx, const ModErrorParams& mod) {
    check_snr(es_n0);
    check_approx(approx);
    const double B = mod.B;
    const double m = approx.m_z;
    const double omega = approx.omega_z;
    // y in [es_n0, inf): F = 1 and the integral is sqrt(pi / B) erfc(sqrt(B es_n0)).
    const double upper = std::sqrt(std::numbers::pi / B) * std::erfc(std::sqrt(B * es_n0));
    // y in (0, es_n0): y = es_n0 / (1 + omega u), u over [0, inf).
    auto f = [&](double u) {
        const double d = 1.0 + omega * u;
        const double y = es_n0 / d;
        const double tail = specfun::regularized_upper_gamma(m, u);
        if (tail == 0.0) {
            return 0.0;
        }
        return std::exp(-B * y) * tail * es_n0 * omega / (std::sqrt(y) * d * d);
    };
    const double lower = specfun::integrate_tail(f, 0.0, tight_spec(), std::max(1.0, m)).value;
    return mod.A * std::sqrt(B) / (2.0 * std::sqrt(std::numbers::pi)) * (lower + upper);
}

double multiuser_ber(double es_n0, const SinrGammaApprox& approx, const ModErrorParams& mod) {
    return clamp_ber(multiuser_ser(es_n0, approx, mod) / mod.bits_per_symbol(), mod);
}

double multiuser_ber_interference_average(double es_n0, const SinrGammaApprox& approx, const ModErrorParams& mod) {
    check_snr(es_n0);
    check_approx(approx);
    const double m = approx.m_z;
    const double omega = approx.omega_z;
    auto ser_at = [&](double s) { return conditional_ser(es_n0 / (1.0 + s), mod); };
    double ser = 0.0;
    if (m >= 1.0) {
        // w = s / omega ~ Gamma(m, 1)
        const double log_norm = -specfun::ln_gamma(m);
        auto f = [&](double w) {
            if (w == 0.0) {
                return m == 1.0 ? ser_at(0.0) : 0.0;
            }
            return ser_at(omega * w) * std::exp((m - 1.0) * std::log(w) - w + log_norm);
        };
        ser = specfun::integrate_tail(f, 0.0, tight_spec(), m).value;
    } else {
        // w = v^{1/m} absorbs the w^{m-1} singularity.
        const double log_norm = -specfun::ln_gamma(m + 1.0);
        auto f = [&](double v) {
            const double w = std::pow(v, 1.0 / m);
            return ser_at(omega * w) * std::exp(-w + log_norm);
        };
        ser = specfun::integrate_tail(f, 0.0, tight_spec(), 1.0).value;
    }
    return clamp_ber(ser / mod.bits_per_symbol(), mod);
}

double multiuser_ber_closed_form(double es_n0, const SinrGammaApprox& approx, const ModErrorParams& mod) {
    check_snr(es_n0);
    check_approx(approx);
    const double g = specfun::meijer_g_2313(es_n0 / approx.omega_z, approx.m_z);
    return mod.A / (2.0 * mod.bits_per_symbol()) * g;
}

double interference_free_ber(double es_n0, const ModErrorParams& mod) {
    check_snr(es_n0);
    return clamp_ber(conditional_ser(es_n0, mod) / mod.bits_per_symbol(), mod);
}

MultiuserEvaluation evaluate_multiuser(double es_n0, const std::vector<UserPaths>& interferers,
                                       const ModErrorParams& mod) {
    const SinrMoments mom = sinr_moments(es_n0, interferers);
    MultiuserEvaluation out;
    if (mom.sigma2_S == 0.0) {
        out.ber = interference_free_ber(es_n0, mod);
        out.interference_free = true;
        return out;
    }
    out.approx = gamma_approx(mom.mu_S, mom.sigma2_S);
    out.ber = multiuser_ber(es_n0, out.approx, mod);
    return out;
}

SemiAnalyticResult semi_analytic_mc_ber(double es_n0, const std::vector<UserPaths>& interferers,
                                        const ModErrorParams& mod, std::uint64_t seed, std::uint64_t trials) {
    check_snr(es_n0);
    if (trials < 10000) {
        throw DomainError("semi-analytic Monte Carlo needs at least 1e4 trials");
    }
    std::vector<PathSpec> paths;
    for (const auto& user : interferers) {
        for (const auto& p : user) {
            validate_path_spec(p);
            paths.push_back(p);
        }
    }
    const double bits = mod.bits_per_symbol();
    if (paths.empty()) {
        return {interference_free_ber(es_n0, mod), 0.0, trials};
    }

    // Welford accumulation of the conditional SER.
    double mean = 0.0;
    double m2 = 0.0;
    std::uint64_t n = 0;
    for (std::uint64_t block = 0; n < trials; ++block) {
        RandomStream rng(seed, kSemiAnalyticDomain, block);
        std::vector<std::gamma_distribution<double>> draws;
        draws.reserve(paths.size());
        for (const auto& p : paths) {
            draws.emplace_back(p.m, p.omega / p.m);
        }
        const std::uint64_t stop = std::min(trials, n + kSemiAnalyticBlock);
        for (; n < stop; ++n) {
            double s = 0.0;
            for (auto& d : draws) {
                s += d(rng);
            }
            const double ser = conditional_ser(es_n0 / (1.0 + es_n0 * s), mod);
            const double delta = ser - mean;
            mean += delta / static_cast<double>(n + 1);
            m2 += delta * (ser - mean);
        }
    }
    const double variance = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
    return {mean / bits, std::sqrt(variance / static_cast<double>(n)) / bits, n};
}

} // namespace otfs::analytic
