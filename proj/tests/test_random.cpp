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

#include "otfslab/random.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

using otfs::RandomStream;

TEST_CASE("Philox4x32-10 known-answer vector", "[random]") {
    // Random123 kat_vectors: philox4x32 10 rounds, counter 0, key 0.
    RandomStream rng(0, 0, 0);
    CHECK(rng() == 0x6627e8d5u);
    CHECK(rng() == 0xe169c58du);
    CHECK(rng() == 0xbc57ac4cu);
    CHECK(rng() == 0x9b00dbd8u);
    CHECK(rng.blocks_consumed() == 1);
}

TEST_CASE("streams are reproducible and independent of consumption order", "[random]") {
    RandomStream a(42, 1, 7);
    std::vector<std::uint32_t> first;
    for (int i = 0; i < 64; ++i) {
        first.push_back(a());
    }
    RandomStream other(42, 1, 8);
    for (int i = 0; i < 1000; ++i) {
        other();
    }
    RandomStream b(42, 1, 7);
    for (int i = 0; i < 64; ++i) {
        CHECK(b() == first[i]);
    }
}

TEST_CASE("distinct keys, domains and indices give distinct streams", "[random]") {
    std::set<std::uint32_t> heads;
    for (std::uint64_t key : {1ull, 2ull}) {
        for (std::uint32_t domain : {1u, 3u}) {
            for (std::uint64_t index : {0ull, 1ull, 1ull << 40}) {
                RandomStream r(key, domain, index);
                heads.insert(r());
            }
        }
    }
    CHECK(heads.size() == 12);
}

TEST_CASE("uniform() lies in [0, 1) with mean one half", "[random]") {
    RandomStream rng(9, 0, 0);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / n - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST_CASE("mix64 is the SplitMix64 finalizer", "[random]") {
    // First outputs of SplitMix64 seeded with 0 (reference implementation by Vigna).
    CHECK(otfs::mix64(0) == 0xe220a8397b1dcdafull);
    static_assert(otfs::mix64(1) != otfs::mix64(2));
}
