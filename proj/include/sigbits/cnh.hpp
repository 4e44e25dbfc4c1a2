// Copyright (c) 2026 The sigbits authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sigbits/error_model.hpp"
#include "sigbits/stats.hpp"

namespace sigbits {

// Sample count, target probability and risk level; validated on
// construction. Everything the centered-normal shifts depend on.
struct ConfidenceParams {
    int n;
    double p;
    double alpha;

    ConfidenceParams(int n_, double p_, double alpha_) : n(n_), p(p_), alpha(alpha_) {
        if (n < 2)
            throw std::domain_error("ConfidenceParams: n must be >= 2");
        (void)Probability(p);
        (void)Probability(alpha);
    }
};

// Bilateral chi-square confidence interval for the variance.
struct VarianceInterval {
    double lower = 0.0;
    double upper = 0.0;
    double sigma_hat = 0.0;
    int n = 0;
    bool degenerate = false;  // sigma_hat == 0, interval collapsed to [0, 0]
};

// A bit-count estimate clamped to the binary64 mantissa range.
struct BitsEstimate {
    double bits = 0.0;   // clamped into [0, 53]
    double raw = 0.0;    // unclamped value
    bool clamped = false;
    bool exact = false;  // sigma_hat was exactly zero
};

// Per-bit contribution probability with its approximation envelope.
struct ContributionEstimate {
    int k = 0;
    double p_estimate = 0.0;
    double p_lower = 0.0;
    double p_upper = 0.0;
};

VarianceInterval variance_ci(double sigma_hat, int n, double alpha);

// P(|Z| <= 2^-k) for Z ~ N(0, sigma): 2 F(2^-k / sigma) - 1.
double significance_probability_cnh(double sigma, double k);

// The shift subtracted from -log2(sigma_hat) to certify significance with
// probability p at confidence 1 - alpha over n samples.
double delta_cnh(int n, double p, double alpha);

BitsEstimate significant_bits_cnh(double sigma_hat, const ConfidenceParams& params);

// Contribution probability of bit k under Z ~ N(0, sigma), valid while
// 2^-k < sqrt(3) * sigma.
ContributionEstimate contribution_probability_cnh(double sigma, int k);

// The shift (excluding -log2 sigma_hat) used by contributing_bits_cnh;
// requires 0.5 < p < 0.7.
double contribution_shift_cnh(int n, double p, double alpha);

BitsEstimate contributing_bits_cnh(double sigma_hat, const ConfidenceParams& params);

struct NormalityCheck {
    int tested_n = 0;  // how many samples the test actually saw
    double w = 0.0;
    double p_value = 0.0;
    bool rejected = false;  // p_value < 0.05
};

struct CnhCurvePoint {
    int k = 0;
    double p_significant = 0.0;        // plug-in estimate using sigma_hat
    double p_significant_lower = 0.0;  // certified with the chi2 upper sigma
    bool contribution_valid = false;
    ContributionEstimate contribution;        // plug-in, when valid
    double contribution_lower = 0.0;          // certified, when valid
};

struct CnhReport {
    int n = 0;
    double p = 0.0;
    double alpha = 0.0;
    double contribution_p = 0.0;
    double sigma_hat = 0.0;
    double mean_z = 0.0;
    VarianceInterval variance;
    double delta = 0.0;
    BitsEstimate s_cnh;
    std::optional<BitsEstimate> c_cnh;  // absent when contribution_p is out of range
    std::optional<NormalityCheck> normality;
    std::vector<CnhCurvePoint> curve;
    std::vector<std::string> warnings;
};

// Full centered-normality analysis of an error sample set. p drives the
// significance bound; contribution_p (default 0.51) drives the
// contributing-bits bound and must stay below 0.7.
CnhReport cnh_report(const ErrorSampleSet& z, const ConfidenceParams& params,
                     double contribution_p = 0.51);

// Sample statistics used throughout: mean and the n-1 standard deviation.
double sample_mean(std::span<const double> v);
double sample_stddev(std::span<const double> v);

// Constants of the recommended display notation: starting from
// k = -log2(sigma), keep ceil(k + notation_contribution_offset()) bits
// (contribution threshold 51%) and annotate the error as
// +/- 2^-floor(k - notation_significance_offset()) (significance 99%).
double notation_contribution_offset();  // -log2(0.01) - log2(2 sqrt(2 pi))
double notation_significance_offset();  // log2(F^-1(0.995))

}  // namespace sigbits
