// Copyright (c) 2026 The sigbits authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstdint>

namespace sigbits {

// Splittable counter-based generator built on the SplitMix64 finalizer
// (Steele, Lea & Flood 2014; Vigna 2015). Draw j of stream s under seed k is
// mix64(base(k, s) + gamma(k, s) * (j + 1)), so any (seed, stream, index)
// triple addresses the same value on every platform and under any schedule.
class RngStream {
  public:
    RngStream() : RngStream(0, 0) {}

    RngStream(std::uint64_t seed, std::uint64_t stream) {
        const std::uint64_t k = mix64(seed + kGolden);
        base_ = mix64(k ^ stream);
        gamma_ = mix_gamma(mix64(k + kGolden) + stream * kGolden);
        index_ = 0;
    }

    std::uint64_t next_u64() { return at(index_++); }

    // Random access without disturbing the cursor.
    std::uint64_t at(std::uint64_t draw_index) const {
        return mix64(base_ + gamma_ * (draw_index + 1));
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool next_bit() { return (next_u64() >> 63) != 0; }

    std::uint64_t index() const { return index_; }

  private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

    // SplitMix64 output finalizer.
    static constexpr std::uint64_t mix64(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Odd, well-mixed per-stream increment; weak gammas are patched the same
    // way SplittableRandom does it.
    static constexpr std::uint64_t mix_gamma(std::uint64_t z) {
        z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
        z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
        z = (z ^ (z >> 33)) | 1ULL;
        if (std::popcount(z ^ (z >> 1)) < 24)
            z ^= 0xaaaaaaaaaaaaaaaaULL;
        return z;
    }

    std::uint64_t base_;
    std::uint64_t gamma_;
    std::uint64_t index_;
};

// Standard normal draw by inverse-CDF transform; declared here so sample
// generators and tests share one definition.
double normal_draw(RngStream& rng);

}  // namespace sigbits
