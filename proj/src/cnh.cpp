// Copyright (c) 2026 The sigbits authors
// SPDX-License-Identifier: Apache-2.0

#include "sigbits/cnh.hpp"

#include <cmath>
#include <numbers>

namespace sigbits {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880168872420969808;
constexpr double kSqrt2Pi = 2.50662827463100050241576528481104525;
constexpr double kSqrt3 = 1.73205080756887729352744634150587237;

BitsEstimate clamp_bits(double raw, bool exact) {
    BitsEstimate e;
    e.raw = raw;
    e.exact = exact;
    e.bits = std::min(std::max(raw, 0.0), 53.0);
    e.clamped = (e.bits != raw);
    return e;
}

}  // namespace

double sample_mean(std::span<const double> v) {
    long double s = 0.0L;
    for (double x : v)
        s += x;
    return static_cast<double>(s / static_cast<long double>(v.size()));
}

double sample_stddev(std::span<const double> v) {
    if (v.size() < 2)
        throw std::domain_error("sample_stddev: need at least 2 samples");
    const long double mu = sample_mean(v);
    long double ss = 0.0L;
    for (double x : v) {
        const long double d = static_cast<long double>(x) - mu;
        ss += d * d;
    }
    return static_cast<double>(
        std::sqrt(ss / static_cast<long double>(v.size() - 1)));
}

VarianceInterval variance_ci(double sigma_hat, int n, double alpha) {
    if (n < 2)
        throw std::domain_error("variance_ci: n must be >= 2");
    if (!(sigma_hat >= 0.0) || !std::isfinite(sigma_hat))
        throw std::domain_error("variance_ci: sigma_hat must be finite and >= 0");
    (void)Probability(alpha);

    VarianceInterval iv;
    iv.sigma_hat = sigma_hat;
    iv.n = n;
    if (sigma_hat == 0.0) {
        iv.degenerate = true;
        return iv;
    }
    const double s2 = sigma_hat * sigma_hat * (n - 1);
    // Lower bound divides by the upper quantile and vice versa.
    iv.lower = s2 / chi2_quantile(1.0 - alpha / 2.0, n - 1);
    iv.upper = s2 / chi2_quantile(alpha / 2.0, n - 1);
    return iv;
}

double significance_probability_cnh(double sigma, double k) {
    if (!(sigma > 0.0))
        throw std::domain_error("significance_probability_cnh: sigma must be > 0");
    // 2 F(x) - 1 == erf(x / sqrt 2), which keeps precision for small x.
    return std::erf(std::exp2(-k) / (sigma * kSqrt2));
}

double delta_cnh(int n, double p, double alpha) {
    if (n < 2)
        throw std::domain_error("delta_cnh: n must be >= 2");
    (void)Probability(p);
    (void)Probability(alpha);
    if (p > 1.0 - 1e-12)
        throw std::domain_error("delta_cnh: p too close to 1 for the normal quantile");
    // Upper bound on sigma^2 comes from the lower chi2 quantile.
    const double chi2_low = chi2_quantile(alpha / 2.0, n - 1);
    return 0.5 * std::log2((n - 1) / chi2_low) +
           std::log2(normal_quantile(0.5 * (p + 1.0)));
}

BitsEstimate significant_bits_cnh(double sigma_hat, const ConfidenceParams& params) {
    if (!(sigma_hat >= 0.0) || !std::isfinite(sigma_hat))
        throw std::domain_error("significant_bits_cnh: bad sigma_hat");
    if (sigma_hat == 0.0)
        return clamp_bits(53.0, true);
    return clamp_bits(-std::log2(sigma_hat) - delta_cnh(params.n, params.p, params.alpha),
                      false);
}

ContributionEstimate contribution_probability_cnh(double sigma, int k) {
    if (!(sigma > 0.0))
        throw std::domain_error("contribution_probability_cnh: sigma must be > 0");
    const double r = std::exp2(-k) / sigma;
    if (!(r < kSqrt3))
        throw std::domain_error(
            "contribution_probability_cnh: requires 2^-k < sqrt(3)*sigma");

    ContributionEstimate c;
    c.k = k;
    c.p_estimate = r / (2.0 * kSqrt2Pi) + 0.5;
    const double cubic = r * r * r / (12.0 * kSqrt2Pi);
    const double e32 = std::exp(-1.5);
    c.p_upper = std::min(c.p_estimate + cubic * 4.0 * e32, 1.0);
    c.p_lower = std::max(c.p_estimate - cubic * (4.0 * e32 + 1.0), 0.0);
    return c;
}

double contribution_shift_cnh(int n, double p, double alpha) {
    if (n < 2)
        throw std::domain_error("contribution_shift_cnh: n must be >= 2");
    (void)Probability(alpha);
    if (!(p > 0.5))
        throw std::domain_error("contribution_shift_cnh: p must exceed 1/2");
    if (!(p < 0.7))
        throw std::domain_error(
            "contribution_shift_cnh: approximation only certified for p < 0.7");
    const double chi2_low = chi2_quantile(alpha / 2.0, n - 1);
    return 0.5 * std::log2((n - 1) / chi2_low) + std::log2(p - 0.5) +
           std::log2(2.0 * kSqrt2Pi);
}

BitsEstimate contributing_bits_cnh(double sigma_hat, const ConfidenceParams& params) {
    if (!(sigma_hat >= 0.0) || !std::isfinite(sigma_hat))
        throw std::domain_error("contributing_bits_cnh: bad sigma_hat");
    if (sigma_hat == 0.0)
        return clamp_bits(53.0, true);
    return clamp_bits(
        -std::log2(sigma_hat) -
            contribution_shift_cnh(params.n, params.p, params.alpha),
        false);
}

double notation_contribution_offset() {
    return -std::log2(0.51 - 0.5) - std::log2(2.0 * kSqrt2Pi);
}

double notation_significance_offset() {
    return std::log2(normal_quantile(0.5 * (0.99 + 1.0)));
}

CnhReport cnh_report(const ErrorSampleSet& z, const ConfidenceParams& params,
                     double contribution_p) {
    if (static_cast<int>(z.z.size()) != params.n)
        throw std::invalid_argument("cnh_report: sample count does not match params.n");

    CnhReport rep;
    rep.n = params.n;
    rep.p = params.p;
    rep.alpha = params.alpha;
    rep.contribution_p = contribution_p;
    rep.warnings = z.warnings;

    rep.mean_z = sample_mean(z.z);
    rep.sigma_hat = sample_stddev(z.z);
    rep.variance = variance_ci(rep.sigma_hat, params.n, params.alpha);
    rep.delta = delta_cnh(params.n, params.p, params.alpha);
    rep.s_cnh = significant_bits_cnh(rep.sigma_hat, params);
    if (rep.s_cnh.exact)
        rep.warnings.push_back("all error samples are exactly zero");

    if (contribution_p > 0.5 && contribution_p < 0.7) {
        ConfidenceParams cp(params.n, contribution_p, params.alpha);
        rep.c_cnh = contributing_bits_cnh(rep.sigma_hat, cp);
    } else {
        rep.warnings.push_back(
            "contributing-bits bound skipped: contribution p outside (0.5, 0.7)");
    }

    // Normality gate: never fatal, capped at the largest supported n.
    if (params.n >= 3 && rep.sigma_hat > 0.0) {
        const size_t m = std::min<size_t>(z.z.size(), 5000);
        NormalityCheck nc;
        nc.tested_n = static_cast<int>(m);
        const auto sw = shapiro_wilk(std::span<const double>(z.z).first(m));
        nc.w = sw.w;
        nc.p_value = sw.p_value;
        nc.rejected = sw.p_value < 0.05;
        rep.normality = nc;
        if (m < z.z.size())
            rep.warnings.push_back(
                "normality tested on the first 5000 samples only (test capped at n = 5000)");
        if (nc.rejected)
            rep.warnings.push_back(
                "normality rejected (Shapiro-Wilk p < 0.05); centered-normal bounds are unsafe");
    } else if (rep.sigma_hat > 0.0) {
        rep.warnings.push_back("too few samples for a normality test");
    }

    if (rep.sigma_hat > 0.0) {
        const double sigma_up = std::sqrt(rep.variance.upper);
        rep.curve.reserve(54);
        for (int k = 0; k <= 53; ++k) {
            CnhCurvePoint pt;
            pt.k = k;
            pt.p_significant = significance_probability_cnh(rep.sigma_hat, k);
            pt.p_significant_lower = significance_probability_cnh(sigma_up, k);
            if (std::exp2(-k) < kSqrt3 * rep.sigma_hat &&
                std::exp2(-k) < kSqrt3 * sigma_up) {
                pt.contribution_valid = true;
                pt.contribution = contribution_probability_cnh(rep.sigma_hat, k);
                pt.contribution_lower = contribution_probability_cnh(sigma_up, k).p_lower;
            }
            rep.curve.push_back(pt);
        }
    }
    return rep;
}

}  // namespace sigbits
