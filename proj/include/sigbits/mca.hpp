// Copyright (c) 2026 The sigbits authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <utility>
#include <cstdint>
#include <string>

#include "sigbits/error_model.hpp"
#include "sigbits/rng.hpp"

namespace sigbits {

enum class NoiseModel {
    ieee_nominal,         // plain round-to-nearest
    mca_rr,               // noise on the operation result
    mca_inbound,          // noise on the operands
    mca_full,             // noise on operands and result
    cestac_random_round,  // equiprobable up/down rounding of the exact result
};

std::string to_string(NoiseModel m);
NoiseModel noise_model_from_string(const std::string& name);

struct NoiseConfig {
    NoiseModel model = NoiseModel::ieee_nominal;
    int virtual_precision = 53;  // t in [1, 53]; ignored by ieee_nominal
    std::uint64_t seed = 0;      // ignored by ieee_nominal

    void validate() const;
};

enum class ArithOp { add, sub, mul, div };

// floor(log2|x|) + 1, exact from the IEEE-754 representation.
int magnitude_exponent(double x);

// x + 2^(e_x - t) * xi with xi given explicitly; inexact(0) is 0.
double inexact_with(double x, int t, double xi);

// Same with xi = u - 1/2 drawn from the stream.
double inexact(double x, int t, RngStream& rng);

// Round the exact value hi + lo to hi or to hi's floating-point neighbor in
// the direction of lo, each with probability one half. Only the sign of lo
// matters; lo == 0 means the operation was exact and consumes no randomness.
double random_round(double hi, double lo, RngStream& rng);

// One scalar operation routed through the configured noise model.
double noisy_op(double a, double b, ArithOp op, const NoiseConfig& cfg, RngStream& rng);

// The ill-conditioned 2x2 benchmark system (Kahan): a row-major matrix and
// right-hand side whose exact solution is (2, -2).
struct KahanSystem {
    std::array<double, 4> a{0.2161, 0.1441, 1.2969, 0.8648};
    std::array<double, 2> b{0.1440, 0.8642};
};

// Cramer's rule exactly as the naive source: three 2x2 determinants from
// six multiplications and three subtractions, then two divisions, every
// operation routed through noisy_op in source order.
std::array<double, 2> cramer_solve(const std::array<double, 4>& a,
                                   const std::array<double, 2>& b,
                                   const NoiseConfig& cfg, RngStream& rng);

enum class Benchmark { cramer_x0, cramer_x1 };

// n independent runs, one RNG substream per sample: sample i is the same
// value no matter how many samples are requested or how the loop is
// scheduled. The parallel version distributes samples across threads.
SampleSet generate_samples(Benchmark bench, int n, const NoiseConfig& cfg);
SampleSet generate_samples_serial(Benchmark bench, int n, const NoiseConfig& cfg);

// Both solution components from the same n runs (the CLI demo writes both).
std::pair<SampleSet, SampleSet> cramer_sample_pair(int n, const NoiseConfig& cfg);

}  // namespace sigbits
