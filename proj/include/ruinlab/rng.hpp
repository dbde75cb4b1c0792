// Copyright 2026 The ruinlab Authors.
// SPDX-License-Identifier: Apache-2.0

//! Counter-based random streams.
//!
//! Philox4x32-10 maps a 128-bit counter through a keyed bijection. A path's
//! stream uses the 64-bit run seed as key and the counter words
//! (block lo, block hi, path lo, path hi), so draw j of path i depends only on
//! (seed, i, j) and never on how paths are scheduled across threads.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace ruinlab {

class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr Counter apply(Counter ctr, Key key)
    {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += 0x9E3779B9u;
                key[1] += 0xBB67AE85u;
            }
            const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
                   static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
                   static_cast<std::uint32_t>(p0)};
        }
        return ctr;
    }
};

/// Random stream of one simulated path; satisfies UniformRandomBitGenerator.
class PathStream {
public:
    using result_type = std::uint64_t;

    PathStream(std::uint64_t seed, std::uint64_t path)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          path_(path)
    {
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        if (pos_ == 2) {
            refill();
            pos_ = 0;
        }
        const auto i = 2 * pos_++;
        return (std::uint64_t{buffer_[i]} << 32) | buffer_[i + 1];
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

    std::uint64_t blocks_used() const { return block_; }

private:
    void refill()
    {
        buffer_ = Philox4x32::apply({static_cast<std::uint32_t>(block_),
                                     static_cast<std::uint32_t>(block_ >> 32),
                                     static_cast<std::uint32_t>(path_),
                                     static_cast<std::uint32_t>(path_ >> 32)},
                                    key_);
        ++block_;
    }

    Philox4x32::Key key_;
    std::uint64_t path_;
    std::uint64_t block_ = 0;
    Philox4x32::Counter buffer_{};
    int pos_ = 2;
};

}  // namespace ruinlab
