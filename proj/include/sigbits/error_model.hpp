// Copyright (c) 2026 The sigbits authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <vector>

namespace sigbits {

enum class ErrorKind { absolute, relative };

// Ordered floating-point samples plus the provenance needed to regenerate
// them.
struct SampleSet {
    std::vector<double> values;
    std::uint64_t seed = 0;
    std::string generator;        // e.g. "cramer_x0/mca_rr"
    int virtual_precision = 0;    // 0 when not applicable
};

// The error variable Z derived from samples and a reference.
struct ErrorSampleSet {
    std::vector<double> z;
    ErrorKind kind = ErrorKind::relative;
    int normalization_exponent = 1;  // e_y; meaningful for absolute errors
    std::string reference_description;
    std::vector<std::string> warnings;
};

// floor(log2|v|) + 1 read off the IEEE-754 representation; exact for
// normal and subnormal values. Throws for 0 and non-finite input.
int normalization_exponent(double reference_value);

// Z_i = X_i - x (absolute) or X_i / x - 1 (relative) against a scalar
// reference.
ErrorSampleSet build_error_samples(std::span<const double> x_samples,
                                   double reference, ErrorKind kind);

// Z_i = X_i - Y_i or X_i / Y_i - 1 against a paired reference, index by
// index. The sets must have equal length; e_y is taken from mean(Y).
ErrorSampleSet build_error_samples(std::span<const double> x_samples,
                                   std::span<const double> y_samples,
                                   ErrorKind kind);

// Z_i = X_i / mean(X) - 1 (or X_i - mean(X)); attaches the warning about
// the reference depending on the sample itself.
ErrorSampleSet build_error_samples_vs_mean(std::span<const double> x_samples,
                                           ErrorKind kind);

struct BitsBetween {
    double bits;       // clamped into [0, 53]
    bool clamped;      // the raw value fell outside [0, 53]
    bool exact_match;  // zero error; best certifiable case in binary64
};

// Number of shared bits between x and a reference y:
// relative: -log2|x/y - 1|, absolute: -log2|x - y| + (e_y - 1).
BitsBetween significant_bits_between(double x, double y, ErrorKind kind);

}  // namespace sigbits
