// Copyright (c) 2026 The sigbits authors
// SPDX-License-Identifier: Apache-2.0

#include "sigbits/error_model.hpp"

#include <cmath>
#include <stdexcept>

namespace sigbits {

namespace {

void require_finite(std::span<const double> v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x))
            throw std::invalid_argument(std::string(what) + ": non-finite sample");
}

double mean_of(std::span<const double> v) {
    long double s = 0.0L;
    for (double x : v)
        s += x;
    return static_cast<double>(s / static_cast<long double>(v.size()));
}

}  // namespace

int normalization_exponent(double reference_value) {
    if (reference_value == 0.0 || !std::isfinite(reference_value))
        throw std::domain_error("normalization_exponent: reference must be finite and nonzero");
    // frexp: |v| = m * 2^e with m in [0.5, 1), so floor(log2|v|) + 1 == e.
    int e = 0;
    std::frexp(reference_value, &e);
    return e;
}

ErrorSampleSet build_error_samples(std::span<const double> x_samples,
                                   double reference, ErrorKind kind) {
    if (x_samples.empty())
        throw std::invalid_argument("build_error_samples: empty sample set");
    require_finite(x_samples, "build_error_samples");
    if (!std::isfinite(reference))
        throw std::invalid_argument("build_error_samples: non-finite reference");
    if (kind == ErrorKind::relative && reference == 0.0)
        throw std::domain_error("build_error_samples: zero reference in relative mode");

    ErrorSampleSet out;
    out.kind = kind;
    out.reference_description = "scalar";
    out.normalization_exponent =
        reference == 0.0 ? 1 : normalization_exponent(reference);
    out.z.reserve(x_samples.size());
    for (double x : x_samples)
        out.z.push_back(kind == ErrorKind::absolute ? x - reference
                                                    : x / reference - 1.0);
    require_finite(out.z, "build_error_samples (result)");
    return out;
}

ErrorSampleSet build_error_samples(std::span<const double> x_samples,
                                   std::span<const double> y_samples,
                                   ErrorKind kind) {
    if (x_samples.size() != y_samples.size())
        throw std::invalid_argument("build_error_samples: sample sets differ in length");
    if (x_samples.empty())
        throw std::invalid_argument("build_error_samples: empty sample set");
    require_finite(x_samples, "build_error_samples");
    require_finite(y_samples, "build_error_samples");

    ErrorSampleSet out;
    out.kind = kind;
    out.reference_description = "paired";
    const double ymean = mean_of(y_samples);
    out.normalization_exponent = ymean == 0.0 ? 1 : normalization_exponent(ymean);
    if (ymean == 0.0 && kind == ErrorKind::absolute)
        out.warnings.push_back("paired reference has zero mean; e_y defaulted to 1");

    out.z.reserve(x_samples.size());
    for (size_t i = 0; i < x_samples.size(); ++i) {
        if (kind == ErrorKind::relative) {
            if (y_samples[i] == 0.0)
                throw std::domain_error("build_error_samples: zero reference sample in relative mode");
            out.z.push_back(x_samples[i] / y_samples[i] - 1.0);
        } else {
            out.z.push_back(x_samples[i] - y_samples[i]);
        }
    }
    require_finite(out.z, "build_error_samples (result)");
    return out;
}

ErrorSampleSet build_error_samples_vs_mean(std::span<const double> x_samples,
                                           ErrorKind kind) {
    if (x_samples.empty())
        throw std::invalid_argument("build_error_samples_vs_mean: empty sample set");
    require_finite(x_samples, "build_error_samples_vs_mean");
    const double mu = mean_of(x_samples);
    if (kind == ErrorKind::relative && mu == 0.0)
        throw std::domain_error("build_error_samples_vs_mean: sample mean is zero");
    auto out = build_error_samples(x_samples, mu, kind);
    out.reference_description = "mean";
    out.warnings.push_back(
        "reference is the sample mean; error samples are not independent of it");
    return out;
}

BitsBetween significant_bits_between(double x, double y, ErrorKind kind) {
    if (!std::isfinite(x) || !std::isfinite(y))
        throw std::domain_error("significant_bits_between: non-finite input");
    if (kind == ErrorKind::relative && y == 0.0)
        throw std::domain_error("significant_bits_between: zero reference in relative mode");

    double err, raw;
    if (kind == ErrorKind::relative) {
        err = std::abs(x / y - 1.0);
        raw = err == 0.0 ? 54.0 : -std::log2(err);
    } else {
        err = std::abs(x - y);
        const int ey = y == 0.0 ? 1 : normalization_exponent(y);
        raw = err == 0.0 ? 54.0 : -std::log2(err) + (ey - 1);
    }
    BitsBetween r;
    r.exact_match = (err == 0.0);
    r.bits = std::min(std::max(raw, 0.0), 53.0);
    r.clamped = (raw != r.bits);
    return r;
}

}  // namespace sigbits
