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

#include "otfslab/otfslab.hpp"

#include <benchmark/benchmark.h>

using namespace otfs;

namespace {

void BM_MlDetect(benchmark::State& state) {
    const auto scheme = state.range(0) == 2 ? Scheme::bpsk : Scheme::qpsk;
    const auto constellation = Constellation::make(scheme, static_cast<int>(state.range(0)));
    const OtfsGrid grid = OtfsGrid::make(2, 2, 15e3);
    const auto channel =
        build_channel_matrix({PathTap{{0.8, 0.3}, 0, 0}, PathTap{{-0.2, 0.5}, 1, 1}}, grid);
    MlDetector detector(constellation, grid.size());
    CVector y = channel.H_eff * CVector::Constant(grid.size(), constellation.points[1]);
    y(0) += cd{0.05, -0.02};
    std::vector<int> out;
    for (auto _ : state) {
        detector.detect(channel.H_eff, y, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.counters["hypotheses"] = detector.hypotheses();
}
BENCHMARK(BM_MlDetect)->Arg(2)->Arg(4);

void BM_RegularizedUpperGamma(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::regularized_upper_gamma(2.7, x));
        x = x < 50.0 ? x * 1.1 : 0.1;
    }
}
BENCHMARK(BM_RegularizedUpperGamma);

void BM_XiCoefficients(benchmark::State& state) {
    const std::vector<int> shapes{1, 2, 3};
    const std::vector<double> scales{1.3, 0.4, 0.75};
    for (auto _ : state) {
        benchmark::DoNotOptimize(analytic::xi_coefficients(shapes, scales));
    }
}
BENCHMARK(BM_XiCoefficients);

void BM_SisoBer(benchmark::State& state) {
    const auto qpsk = analytic::mod_params(Scheme::qpsk, 4);
    const std::vector<PathSpec> paths{{1.0, 2.0 / 3.0, 0, 0}, {2.0, 1.0 / 3.0, 1, 0}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(analytic::siso_ber(100.0, paths, qpsk));
    }
}
BENCHMARK(BM_SisoBer);

void BM_MeijerG(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::meijer_g_2313(2.0, 2.0));
    }
}
BENCHMARK(BM_MeijerG);

void BM_MultiuserBer(benchmark::State& state) {
    const auto qpsk = analytic::mod_params(Scheme::qpsk, 4);
    const analytic::SinrGammaApprox a{0.0, 0.0, 2.0, 5.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(analytic::multiuser_ber(10.0, a, qpsk));
    }
}
BENCHMARK(BM_MultiuserBer);

void BM_SimulateFrame(benchmark::State& state) {
    auto config = io::preset("fig2-m12");
    std::uint64_t frame = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc::simulate_frame(config, 10.0, frame++).bit_errors);
    }
}
BENCHMARK(BM_SimulateFrame);

} // namespace

BENCHMARK_MAIN();
