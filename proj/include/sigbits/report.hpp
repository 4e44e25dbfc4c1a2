// Copyright (c) 2026 The sigbits authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sigbits/bernoulli.hpp"
#include "sigbits/cnh.hpp"
#include "sigbits/error_model.hpp"
#include "sigbits/legacy.hpp"

namespace sigbits {

enum class Estimator { cnh, bernoulli, mca, cestac };

std::string to_string(Estimator e);
Estimator estimator_from_string(const std::string& name);

struct AnalysisConfig {
    std::vector<double> samples;
    // exactly one reference: a paired sample set, a scalar, or the mean
    std::optional<std::vector<double>> reference_samples;
    std::optional<double> reference_scalar;
    bool reference_mean = false;

    ErrorKind error_kind = ErrorKind::relative;
    std::set<Estimator> estimators{Estimator::cnh, Estimator::bernoulli,
                                   Estimator::mca, Estimator::cestac};
    double p = 0.95;
    double alpha = 0.05;
    double contribution_p = 0.51;
    int k_max = 53;
    bool strict = false;

    // echoed into the report, not interpreted
    std::string input_path;
    std::string reference_path;
    std::string provenance;
};

// Display rule: keep every bit contributing at better than 51 % and
// annotate with the 99 % significance error.
struct RecommendedNotation {
    double k = 0.0;                  // certified -log2(sigma) lower bound
    long long bits_to_keep = 0;
    long long error_exponent = 0;    // the annotation reads 2^-error_exponent
    double error_magnitude = 0.0;    // in the units of the displayed value
    std::string rendered;
};

struct BernoulliReport {
    SHatB s_b;
    double s_b_fractional = 0.0;
    std::int64_t required_n = 0;   // samples needed at (p, alpha)
    bool enough_samples = false;
    BernoulliCurves curves;
};

struct LegacyReport {
    std::optional<BitsEstimate> s_mca;
    std::optional<BitsEstimate> s_cestac;
    double cestac_equivalent_p = 0.0;  // probability its shift certifies
    std::optional<double> s_cestac_definition1;  // needs an exact reference
};

struct SignificanceReport {
    std::string schema = "sigbits/1";

    // inputs echoed
    int n = 0;
    std::string input_path;
    std::string reference_path;
    std::string reference_description;
    std::string provenance;
    ErrorKind error_kind = ErrorKind::relative;
    std::set<Estimator> estimators;
    double p = 0.0;
    double alpha = 0.0;
    double contribution_p = 0.0;
    int k_max = 53;

    double mean_x = 0.0;
    double sigma_x = 0.0;
    int normalization_exponent = 1;

    std::optional<CnhReport> cnh;
    std::optional<BernoulliReport> bernoulli;
    std::optional<LegacyReport> legacy;
    std::optional<RecommendedNotation> notation;

    std::vector<std::string> warnings;
};

// Run the selected estimators over the configured error variable.
SignificanceReport analyze(const AnalysisConfig& config);

// Serializations. JSON is deterministic: fixed key order, no timestamps.
std::string to_json(const SignificanceReport& report);
std::string to_text(const SignificanceReport& report);

// Per-bit curve data: k,kind,successes,trials,p_hat,p_lower rows covering
// the distribution-free curves and, when present, the centered-normal ones
// (model rows carry zero trials).
std::string curves_csv(const SignificanceReport& report);

}  // namespace sigbits
