// Copyright (c) 2026 The sigbits authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sigbits {

// Success of the significance trial "|z| <= 2^-k" (boundary counts).
bool significance_trial(double z, int k);

// Success of the contribution trial "floor(2^k |z|) is even". The scaled
// magnitude is required to stay below 2^63; beyond that the bit carries no
// information and the call is a range error.
bool contribution_trial(double z, int k);

// Smallest n with p^n <= alpha: samples needed for an all-success
// certificate at probability p and confidence 1 - alpha.
std::int64_t required_samples(double p, double alpha);

enum class LowerBoundMethod { exact_all_success, clt_adjusted };

struct BernoulliLowerBound {
    double p_lower = 0.0;
    LowerBoundMethod method = LowerBoundMethod::clt_adjusted;
    bool low_confidence = false;  // CLT preconditions (>= 5 of each) unmet
};

// One-sided lower confidence bound on a Bernoulli parameter. All-success
// outcomes use the exact inversion alpha^(1/n); everything else the
// Brown-adjusted CLT bound.
BernoulliLowerBound bernoulli_lower_bound(std::int64_t successes,
                                          std::int64_t trials, double alpha);

struct SHatB {
    int bits = 0;                  // in [0, 53]
    bool no_certified_bit = false; // even k = 1 failed
    bool exact = false;            // every sample was exactly zero
};

// Largest k in [1, 53] such that every |Z_i| <= 2^-k, or 0 (flagged) when
// none. Exact exponent arithmetic, no logarithms.
SHatB s_hat_b(std::span<const double> z);

// Fractional generalization: min_i(-log2 |Z_i|) clamped into [0, 53].
double s_hat_b_fractional(std::span<const double> z);

struct BitCurveEntry {
    int k = 0;
    std::int64_t successes = 0;
    std::int64_t trials = 0;
    double p_hat = 0.0;
    double p_lower = 0.0;
    LowerBoundMethod method = LowerBoundMethod::clt_adjusted;
    bool low_confidence = false;
};

enum class CurveKind { significance, contribution };

struct BitCurve {
    CurveKind kind = CurveKind::significance;
    std::vector<BitCurveEntry> entries;
};

struct BernoulliCurves {
    BitCurve significance;
    BitCurve contribution;
};

// Per-bit Bernoulli trials for k in [0, k_max] with attached lower bounds.
// The parallel kernel partitions the sample range; counts are integer sums
// so the result is identical under any schedule.
BernoulliCurves bernoulli_curves(std::span<const double> z, double alpha,
                                 int k_max = 53);
BernoulliCurves bernoulli_curves_serial(std::span<const double> z, double alpha,
                                        int k_max = 53);

}  // namespace sigbits
