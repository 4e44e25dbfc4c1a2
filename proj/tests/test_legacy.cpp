// Copyright (c) 2026 The sigbits authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sigbits/legacy.hpp"
#include "sigbits/rng.hpp"

using namespace sigbits;

TEST_CASE("s_hat_mca pinned values") {
    CHECK(s_hat_mca(2.0, 0x1.0p-9).bits == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(s_hat_mca(-2.0, 0x1.0p-9).bits == doctest::Approx(10.0).epsilon(1e-14));
    // the benchmark's sampled moments
    CHECK(s_hat_mca(1.99999999909, 5.3427e-9).bits ==
          doctest::Approx(28.48).epsilon(0.01 / 28.48));

    const auto exact = s_hat_mca(1.0, 0.0);
    CHECK(exact.bits == 53.0);
    CHECK(exact.exact);
    CHECK_THROWS_AS(s_hat_mca(0.0, 1.0), std::domain_error);
}

TEST_CASE("s_hat_cestac pinned values and divergence") {
    CHECK(s_hat_cestac(1.99999999909, 5.3427e-9, 10000, 0.05).bits ==
          doctest::Approx(34.2).epsilon(0.1 / 34.2));

    // at n = 3 the estimator is the MCA count shifted by -1.313
    const auto mca = s_hat_mca(1.99999999909, 5.3427e-9);
    const auto ces3 = s_hat_cestac(1.99999999909, 5.3427e-9, 3, 0.05);
    CHECK(mca.bits - ces3.bits == doctest::Approx(1.313).epsilon(0.002 / 1.3));

    // quadrupling n adds exactly one bit, up to the tau_n drift
    const auto c1 = s_hat_cestac(1.99999999909, 5.3427e-9, 10000, 0.05);
    const auto c4 = s_hat_cestac(1.99999999909, 5.3427e-9, 40000, 0.05);
    CHECK(std::abs((c4.bits - c1.bits) - 1.0) <= 1e-3);
}

TEST_CASE("cestac minus mca shift is moment independent") {
    RngStream rng(808, 0);
    const double want = -std::log2(student_quantile(0.975, 28) / std::sqrt(29.0));
    for (int i = 0; i < 100; ++i) {
        const double mu = (rng.next_unit() - 0.5) * 100.0 + 1e-3;
        const double sigma = std::exp((rng.next_unit() - 0.5) * 30.0);
        const auto mca = s_hat_mca(mu, sigma);
        const auto ces = s_hat_cestac(mu, sigma, 29, 0.05);
        CHECK(std::abs((ces.raw - mca.raw) - want) <= 1e-12);
    }
}

TEST_CASE("sign flip invariance") {
    const auto a = s_hat_mca(1.75, 3e-7);
    const auto b = s_hat_mca(-1.75, 3e-7);
    CHECK(a.bits == b.bits);
    const auto c = s_hat_cestac(1.75, 3e-7, 5, 0.05);
    const auto d = s_hat_cestac(-1.75, 3e-7, 5, 0.05);
    CHECK(c.bits == d.bits);
}

TEST_CASE("equivalent_probability pinned values") {
    CHECK(equivalent_probability(1.313, 3, 0.05) ==
          doctest::Approx(0.308).epsilon(0.003 / 0.308));
    CHECK(equivalent_probability(1.313 + 3.322, 3, 0.05) >= 0.99);
    // saturation stays inside the open interval; overflowing shifts error out
    CHECK(equivalent_probability(40.0, 3, 0.05) < 1.0);
    CHECK_THROWS_AS(equivalent_probability(1e9, 3, 0.05), std::domain_error);
    CHECK_THROWS_AS(equivalent_probability(std::nan(""), 3, 0.05), std::domain_error);
}

TEST_CASE("equivalent_probability inverts delta_cnh") {
    RngStream rng(31337, 0);
    for (int i = 0; i < 200; ++i) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 500);
        const double p = 0.05 + 0.9 * rng.next_unit();
        const double alpha = 0.01 + 0.5 * rng.next_unit();
        const double delta = delta_cnh(n, p, alpha);
        CHECK(equivalent_probability(delta, n, alpha) ==
              doctest::Approx(p).epsilon(1e-9));
    }
}

TEST_CASE("equivalent_probability strictly increasing in shift") {
    double prev = 0.0;
    for (double shift = -3.0; shift <= 5.0; shift += 0.25) {
        const double p = equivalent_probability(shift, 3, 0.05);
        CHECK(p > prev);
        prev = p;
    }
}

TEST_CASE("cadna preset") {
    const auto c = cadna_preset();
    CHECK(c.n == 3);
    CHECK(c.shift == doctest::Approx(1.31).epsilon(0.005 / 1.31));
    CHECK(c.equivalent_p == doctest::Approx(0.308).epsilon(0.003 / 0.308));
    CHECK(c.shift + c.safety_margin_bits == doctest::Approx(4.63).epsilon(0.005 / 4.6));
    CHECK(c.shifted_equivalent_p >= 0.99);
}

TEST_CASE("s_cestac_vs_reference") {
    CHECK(s_cestac_vs_reference(2.0, 1.99999999909) ==
          doctest::Approx(31.0).epsilon(0.05 / 31.0));
    CHECK(s_cestac_vs_reference(2.0, 2.0) == 53.0);
    CHECK_THROWS_AS(s_cestac_vs_reference(0.0, 1.0), std::domain_error);
}
