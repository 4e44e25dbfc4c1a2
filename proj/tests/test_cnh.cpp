// Copyright (c) 2026 The sigbits authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "oracles.hpp"
#include "sigbits/cnh.hpp"
#include "sigbits/rng.hpp"

using namespace sigbits;

TEST_CASE("variance_ci pinned against the incomplete-gamma oracle") {
    // n=3, alpha=0.05: bounds are 2/chi2(0.975, 2) and 2/chi2(0.025, 2)
    const double lo_ref = static_cast<double>(2.0L / oracle::chi2_quantile_bisect(0.975L, 2));
    const double hi_ref = static_cast<double>(2.0L / oracle::chi2_quantile_bisect(0.025L, 2));
    CHECK(lo_ref == doctest::Approx(0.27110).epsilon(1e-3 / 0.27));
    CHECK(hi_ref == doctest::Approx(39.498).epsilon(1e-3 / 39.0));

    const auto iv = variance_ci(1.0, 3, 0.05);
    CHECK(iv.lower == doctest::Approx(0.27110).epsilon(1e-3 / 0.27));
    CHECK(iv.upper == doctest::Approx(39.498).epsilon(1e-3 / 39.0));
    CHECK(iv.lower == doctest::Approx(lo_ref).epsilon(1e-9));
    CHECK(iv.upper == doctest::Approx(hi_ref).epsilon(1e-9));
    CHECK(!iv.degenerate);

    // scale equivariance: sigma_hat = 2 quadruples both bounds
    const auto iv2 = variance_ci(2.0, 3, 0.05);
    CHECK(iv2.lower == doctest::Approx(4.0 * iv.lower).epsilon(1e-14));
    CHECK(iv2.upper == doctest::Approx(4.0 * iv.upper).epsilon(1e-14));

    const auto ivz = variance_ci(0.0, 10, 0.05);
    CHECK(ivz.degenerate);
    CHECK(ivz.lower == 0.0);
    CHECK(ivz.upper == 0.0);

    CHECK_THROWS_AS(variance_ci(1.0, 1, 0.05), std::domain_error);
}

TEST_CASE("variance_ci coverage Monte Carlo") {
    // 1000 seeded trials of n=30 N(0,1) draws; the true variance must land
    // inside the bilateral interval about 95% of the time.
    const int trials = 1000;
    const int n = 30;
    int covered = 0;
    std::vector<double> z(n);
    for (int t = 0; t < trials; ++t) {
        RngStream rng(52000 + t, 0);
        for (auto& v : z) v = normal_draw(rng);
        const auto iv = variance_ci(sample_stddev(z), n, 0.05);
        if (iv.lower <= 1.0 && 1.0 <= iv.upper) ++covered;
    }
    CHECK(covered >= 920);
    CHECK(covered <= 980);
}

TEST_CASE("significance_probability_cnh pinned values") {
    CHECK(significance_probability_cnh(0x1.0p-10, 10.0) ==
          doctest::Approx(0.6827).epsilon(1e-3 / 0.68));
    CHECK(significance_probability_cnh(0x1.0p-10, 0.0) >= 1.0 - 1e-12);
    // 2 F(1) - 1 against the erf-series oracle
    const double ref = static_cast<double>(2.0L * oracle::normal_cdf_series(1.0L) - 1.0L);
    CHECK(significance_probability_cnh(1.0, 0.0) == doctest::Approx(ref).epsilon(1e-12));
    CHECK(significance_probability_cnh(1.0, 0.0) == doctest::Approx(0.6827).epsilon(1e-3 / 0.68));
    CHECK_THROWS_AS(significance_probability_cnh(0.0, 5.0), std::domain_error);
}

TEST_CASE("significance probability strictly decreasing in k") {
    double prev = 2.0;
    for (int k = 0; k <= 53; ++k) {
        const double p = significance_probability_cnh(1.0, k);
        CHECK(p < prev);
        prev = p;
    }
}

TEST_CASE("delta_cnh reproduces tabulated shifts") {
    CHECK(delta_cnh(3, 0.9, 0.05) == doctest::Approx(3.370).epsilon(0.001 / 3.37));
    CHECK(delta_cnh(10000, 0.99, 0.05) == doctest::Approx(1.386).epsilon(0.001 / 1.386));
    // first column of the shift table: p = 0.66 at confidence 1-alpha = 0.66
    CHECK(delta_cnh(3, 0.66, 0.34) == doctest::Approx(1.145).epsilon(0.001 / 1.145));
    CHECK_THROWS_AS(delta_cnh(3, 1.0 - 1e-13, 0.05), std::domain_error);
}

TEST_CASE("significant_bits_cnh pinned values and scaling law") {
    ConfidenceParams bench(10000, 0.99, 0.05);
    const auto s = significant_bits_cnh(2.6714e-9, bench);
    CHECK(s.bits == doctest::Approx(27.1).epsilon(0.1 / 27.1));

    ConfidenceParams small(3, 0.9, 0.05);
    const auto s2 = significant_bits_cnh(0x1.0p-20, small);
    CHECK(s2.bits == doctest::Approx(16.63).epsilon(0.01 / 16.63));

    // exact shift identity under power-of-two scaling
    for (int m : {1, 3, 10}) {
        const auto scaled = significant_bits_cnh(std::ldexp(2.6714e-9, -m), bench);
        CHECK(scaled.raw == doctest::Approx(s.raw + m).epsilon(1e-12));
    }

    const auto exact = significant_bits_cnh(0.0, bench);
    CHECK(exact.bits == 53.0);
    CHECK(exact.exact);
}

TEST_CASE("shift structure is independent of sigma_hat") {
    ConfidenceParams params(42, 0.95, 0.05);
    RngStream rng(31, 0);
    const auto ref = significant_bits_cnh(1.0, params);
    for (int i = 0; i < 200; ++i) {
        const double sigma = std::exp((rng.next_unit() - 0.5) * 40.0);
        const auto s = significant_bits_cnh(sigma, params);
        CHECK(std::abs((s.raw + std::log2(sigma)) - ref.raw) <= 1e-12);
    }
}

TEST_CASE("contribution_probability_cnh pinned values") {
    // 2^-k == sigma: probability of contribution is 0.6995
    const auto at_sigma = contribution_probability_cnh(0x1.0p-7, 7);
    CHECK(at_sigma.p_estimate == doctest::Approx(0.6995).epsilon(1e-3 / 0.6995));

    const auto c = contribution_probability_cnh(1.0, 5);
    CHECK(c.p_estimate == doctest::Approx(0.50623).epsilon(1e-5 / 0.506));
    // cross-check against the stripe-integral oracle
    const double stripes = static_cast<double>(oracle::contribution_prob_stripes(1.0L, 5));
    CHECK(c.p_estimate == doctest::Approx(stripes).epsilon(2e-5));

    // envelope widths read off the error bound
    const double r3 = std::pow(0x1.0p-5, 3.0);
    const double sqrt2pi = std::sqrt(2.0 * std::acos(-1.0));
    CHECK(c.p_upper - c.p_estimate ==
          doctest::Approx(r3 * 4.0 * std::exp(-1.5) / (12.0 * sqrt2pi)).epsilon(1e-12));
    CHECK(c.p_estimate - c.p_lower ==
          doctest::Approx(r3 * (4.0 * std::exp(-1.5) + 1.0) / (12.0 * sqrt2pi)).epsilon(1e-12));

    // validity gate at sqrt(3) sigma
    CHECK_THROWS_AS(contribution_probability_cnh(1.0, -1), std::domain_error);
    CHECK_NOTHROW(contribution_probability_cnh(1.0, 0));
}

TEST_CASE("contribution envelope contains the stripe-integral oracle") {
    // Strict containment where the oracle noise is far below the envelope
    // width; beyond k ~ 10 the envelope shrinks as 8^-k and the oracle's
    // accumulated long-double rounding must be budgeted explicitly.
    for (int k = 2; k <= 20; ++k) {
        std::uint64_t evals = 0;
        const long double pk = oracle::contribution_prob_stripes(1.0L, k, &evals);
        const auto est = contribution_probability_cnh(1.0, k);
        const double o = static_cast<double>(pk);
        if (k <= 10) {
            CHECK(o >= est.p_lower);
            CHECK(o <= est.p_upper);
        } else {
            const double tol =
                4.0 * static_cast<double>(std::numeric_limits<long double>::epsilon()) *
                    static_cast<double>(evals) +
                1e-18;
            CHECK(o >= est.p_lower - tol);
            CHECK(o <= est.p_upper + tol);
        }
    }
}

TEST_CASE("contributing_bits_cnh pinned values") {
    ConfidenceParams cp(10000, 0.51, 0.05);
    const auto c = contributing_bits_cnh(2.6714e-9, cp);
    CHECK(c.bits == doctest::Approx(32.8).epsilon(0.1 / 32.8));

    // the p = 0.51 shift constant
    CHECK(notation_contribution_offset() == doctest::Approx(4.318108).epsilon(1e-6 / 4.3));

    for (int m : {2, 9}) {
        const auto scaled = contributing_bits_cnh(std::ldexp(2.6714e-9, -m), cp);
        CHECK(scaled.raw == doctest::Approx(c.raw + m).epsilon(1e-12));
    }

    CHECK_THROWS_AS(contributing_bits_cnh(1e-9, ConfidenceParams(100, 0.7, 0.05)),
                    std::domain_error);
    CHECK_THROWS_AS(contributing_bits_cnh(1e-9, ConfidenceParams(100, 0.9, 0.05)),
                    std::domain_error);
}

TEST_CASE("notation constants") {
    CHECK(notation_contribution_offset() == doctest::Approx(4.318108).epsilon(5e-7 / 4.3));
    CHECK(notation_significance_offset() == doctest::Approx(1.365037).epsilon(5e-7 / 1.365));
}

TEST_CASE("cnh_report on seeded normal errors reproduces the benchmark bound") {
    const int n = 10000;
    RngStream rng(777, 0);
    ErrorSampleSet z;
    z.kind = ErrorKind::relative;
    z.z.resize(n);
    for (auto& v : z.z) v = 2.6714e-9 * normal_draw(rng);

    const auto rep = cnh_report(z, ConfidenceParams(n, 0.99, 0.05));
    CHECK(rep.s_cnh.bits == doctest::Approx(27.1).epsilon(0.2 / 27.1));
    CHECK(rep.c_cnh.has_value());
    CHECK(rep.normality.has_value());
    CHECK(rep.normality->tested_n == 5000);
    CHECK(!rep.normality->rejected);

    // curve is decreasing, strictly so once below the saturation plateau
    // at 1.0, and the certified bound never exceeds the plug-in estimate
    for (size_t i = 1; i < rep.curve.size(); ++i) {
        if (rep.curve[i - 1].p_significant < 1.0)
            CHECK(rep.curve[i].p_significant < rep.curve[i - 1].p_significant);
        else
            CHECK(rep.curve[i].p_significant <= rep.curve[i - 1].p_significant);
    }
    for (const auto& pt : rep.curve)
        CHECK(pt.p_significant_lower <= pt.p_significant);
}

TEST_CASE("cnh_report degenerate and error paths") {
    ErrorSampleSet z;
    z.z = {0.0, 0.0, 0.0, 0.0};
    const auto rep = cnh_report(z, ConfidenceParams(4, 0.9, 0.05));
    CHECK(rep.s_cnh.bits == 53.0);
    CHECK(rep.s_cnh.exact);
    CHECK(rep.variance.degenerate);

    CHECK_THROWS_AS(cnh_report(z, ConfidenceParams(5, 0.9, 0.05)), std::invalid_argument);
}

TEST_CASE("certified significance coverage Monte Carlo") {
    // 1000 seeded trials, n = 30 draws from N(0, 2^-20), p = 0.9,
    // alpha = 0.05. The certified bound fails only if the true probability
    // P(|Z| <= 2^-s) dips below p, which the chi2 construction allows with
    // probability at most alpha.
    const int trials = 1000;
    const int n = 30;
    const double sigma = 0x1.0p-20;
    ConfidenceParams params(n, 0.9, 0.05);
    const double threshold = sigma * normal_quantile(0.5 * (0.9 + 1.0));
    int held = 0;
    std::vector<double> z(n);
    for (int t = 0; t < trials; ++t) {
        RngStream rng(64000 + t, 0);
        for (auto& v : z) v = sigma * normal_draw(rng);
        const auto s = significant_bits_cnh(sample_stddev(z), params);
        if (std::exp2(-s.raw) >= threshold) ++held;
    }
    CHECK(held >= 920);
}
