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

#include <array>
#include <cstdint>
#include <limits>

namespace otfs {

/// Counter-based Philox4x32-10 generator.
///
/// A stream is identified by a 64-bit key and a 96-bit stream counter; the
/// low counter word indexes draws within the stream. Two streams with the
/// same (key, stream counter) produce identical sequences regardless of how
/// many other streams were consumed before, which makes Monte Carlo results
/// independent of scheduling. Satisfies UniformRandomBitGenerator.
class RandomStream {
  public:
    using result_type = std::uint32_t;

    RandomStream(std::uint64_t key, std::uint32_t domain, std::uint64_t index) noexcept
        : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)},
          counter_{0u, static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), domain} {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        if (used_ == 4) {
            refill();
        }
        return block_[used_++];
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept {
        const std::uint64_t hi = (*this)() >> 5;
        const std::uint64_t lo = (*this)() >> 6;
        return (static_cast<double>(hi) * 67108864.0 + static_cast<double>(lo)) * 0x1.0p-53;
    }

    std::uint64_t blocks_consumed() const noexcept { return counter_[0]; }

  private:
    void refill() noexcept {
        std::array<std::uint32_t, 4> ctr = counter_;
        std::array<std::uint32_t, 2> key = key_;
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        block_ = ctr;
        used_ = 0;
        ++counter_[0];
    }

    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 4> block_{};
    int used_ = 4;
};

/// SplitMix64 finalizer, used to fold several identifiers into one stream index.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace otfs
