// sosim - semi-orthogonal user selection: sum-rate analysis and simulation
// Copyright (C) 2026 the sosim authors
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

#ifndef SOSIM_RNG_HPP
#define SOSIM_RNG_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace sosim {

/// Counter-based random stream (Philox 4x32-10). A stream is addressed by
/// (seed, stream id, substream): any stream can be constructed in O(1)
/// without touching the others, so each Monte-Carlo trial owns a private
/// stream and results do not depend on how trials are scheduled.
/// Everything lives in the header so the per-draw path inlines into the
/// simulation loop.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0,
                          std::uint32_t substream = 0)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          counter_{0u, substream, static_cast<std::uint32_t>(stream_id),
                   static_cast<std::uint32_t>(stream_id >> 32)},
          buffer_{}
    {
    }

    std::uint32_t next_u32()
    {
        if (available_ == 0)
            refill();
        return buffer_[4 - available_--];
    }

    std::uint64_t next_u64()
    {
        const std::uint64_t hi = next_u32();
        const std::uint64_t lo = next_u32();
        return (hi << 32) | lo;
    }

    /// Uniform double in (0, 1].
    double uniform()
    {
        // 53-bit mantissa, shifted into (0, 1] so log() is always finite
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n), n >= 1, by rejection (unbiased).
    std::uint64_t uniform_below(std::uint64_t n)
    {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
        std::uint64_t draw;
        do {
            draw = next_u64();
        } while (draw > limit);
        return draw % n;
    }

    /// Pair of independent standard normals (Box-Muller).
    std::array<double, 2> normal_pair()
    {
        const double u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

    /// Circularly symmetric complex Gaussian with unit total variance
    /// (variance 1/2 per real/imaginary part).
    std::complex<double> complex_normal()
    {
        const auto z = normal_pair();
        return {z[0] * M_SQRT1_2, z[1] * M_SQRT1_2};
    }

private:
    static constexpr std::uint32_t kM0 = 0xD2511F53u;
    static constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kW0 = 0x9E3779B9u;
    static constexpr std::uint32_t kW1 = 0xBB67AE85u;

    void refill()
    {
        std::uint32_t c0 = counter_[0], c1 = counter_[1];
        std::uint32_t c2 = counter_[2], c3 = counter_[3];
        std::uint32_t k0 = key_[0], k1 = key_[1];
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * c0;
            const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * c2;
            const std::uint32_t n0 =
                static_cast<std::uint32_t>(p1 >> 32) ^ c1 ^ k0;
            const std::uint32_t n1 = static_cast<std::uint32_t>(p1);
            const std::uint32_t n2 =
                static_cast<std::uint32_t>(p0 >> 32) ^ c3 ^ k1;
            const std::uint32_t n3 = static_cast<std::uint32_t>(p0);
            c0 = n0;
            c1 = n1;
            c2 = n2;
            c3 = n3;
            k0 += kW0;
            k1 += kW1;
        }
        buffer_ = {c0, c1, c2, c3};
        available_ = 4;
        ++counter_[0];  // next block in this (stream, substream)
    }

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> counter_;  // {block, substream, id_lo, id_hi}
    std::array<std::uint32_t, 4> buffer_;
    int available_ = 0;
};

}  // namespace sosim

#endif  // SOSIM_RNG_HPP
