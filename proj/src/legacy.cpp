// Copyright (c) 2026 The sigbits authors
// SPDX-License-Identifier: Apache-2.0

#include "sigbits/legacy.hpp"

#include <cmath>

namespace sigbits {

namespace {

BitsEstimate clamp_bits(double raw, bool exact) {
    BitsEstimate e;
    e.raw = raw;
    e.exact = exact;
    e.bits = std::min(std::max(raw, 0.0), 53.0);
    e.clamped = (e.bits != raw);
    return e;
}

void require_moments(double mu_hat, double sigma_hat, const char* what) {
    if (!std::isfinite(mu_hat) || !std::isfinite(sigma_hat) || sigma_hat < 0.0)
        throw std::domain_error(std::string(what) + ": bad moments");
    if (mu_hat == 0.0)
        throw std::domain_error(std::string(what) + ": degenerate zero mean");
}

}  // namespace

BitsEstimate s_hat_mca(double mu_hat, double sigma_hat) {
    require_moments(mu_hat, sigma_hat, "s_hat_mca");
    if (sigma_hat == 0.0)
        return clamp_bits(53.0, true);
    return clamp_bits(-std::log2(sigma_hat / std::abs(mu_hat)), false);
}

BitsEstimate s_hat_cestac(double mu_hat, double sigma_hat, int n, double alpha) {
    require_moments(mu_hat, sigma_hat, "s_hat_cestac");
    if (n < 2)
        throw std::domain_error("s_hat_cestac: n must be >= 2");
    (void)Probability(alpha);
    if (sigma_hat == 0.0)
        return clamp_bits(53.0, true);
    const double tau = student_quantile(1.0 - alpha / 2.0, n - 1);
    return clamp_bits(
        -std::log2(tau * sigma_hat / (std::sqrt(static_cast<double>(n)) * std::abs(mu_hat))),
        false);
}

double s_cestac_vs_reference(double exact_reference, double mu_hat) {
    if (exact_reference == 0.0 || !std::isfinite(exact_reference) || !std::isfinite(mu_hat))
        throw std::domain_error("s_cestac_vs_reference: bad reference");
    const double rel = std::abs((exact_reference - mu_hat) / exact_reference);
    if (rel == 0.0)
        return 53.0;
    return -std::log2(rel);
}

double equivalent_probability(double shift, int n, double alpha) {
    if (n < 2)
        throw std::domain_error("equivalent_probability: n must be >= 2");
    (void)Probability(alpha);
    if (!std::isfinite(shift))
        throw std::domain_error("equivalent_probability: non-finite shift");
    const double chi2_low = chi2_quantile(alpha / 2.0, n - 1);
    const double arg = std::exp2(shift - 0.5 * std::log2((n - 1) / chi2_low));
    if (!std::isfinite(arg))
        throw std::domain_error("equivalent_probability: shift out of range");
    const double p = 2.0 * normal_cdf(arg) - 1.0;
    // keep the result inside the open interval; saturation means "over
    // 1 - 1e-16"
    return std::min(std::max(p, std::nextafter(0.0, 1.0)), std::nextafter(1.0, 0.0));
}

CadnaPreset cadna_preset() {
    CadnaPreset c;
    const double tau = student_quantile(1.0 - c.alpha / 2.0, c.n - 1);
    c.shift = std::log2(tau / std::sqrt(3.0));
    c.equivalent_p = equivalent_probability(c.shift, c.n, c.alpha);
    c.safety_margin_bits = std::log2(10.0);
    c.shifted_equivalent_p =
        equivalent_probability(c.shift + c.safety_margin_bits, c.n, c.alpha);
    return c;
}

LegacyEstimates legacy_estimates(double mu_hat, double sigma_hat, int n, double alpha) {
    LegacyEstimates e;
    e.s_mca = s_hat_mca(mu_hat, sigma_hat);
    e.s_cestac = s_hat_cestac(mu_hat, sigma_hat, n, alpha);
    e.n = n;
    e.alpha = alpha;
    // probability the CESTAC shift certifies at this n
    const double tau = student_quantile(1.0 - alpha / 2.0, n - 1);
    e.cadna_equivalent_p =
        equivalent_probability(std::log2(tau / std::sqrt(static_cast<double>(n))), n, alpha);
    return e;
}

}  // namespace sigbits
