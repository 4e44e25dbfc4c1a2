// Copyright (c) 2026 The sigbits authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <stdexcept>

namespace sigbits {

/// A probability constrained to the open interval (0, 1).
/// Quantile arguments and risk levels go through this check; empirical
/// frequencies (which may legitimately be 0 or 1) do not.
class Probability {
  public:
    explicit Probability(double value) : value_(value) {
        if (!(value > 0.0 && value < 1.0))
            throw std::domain_error("Probability must lie strictly inside (0, 1)");
    }

    double value() const { return value_; }
    operator double() const { return value_; }

  private:
    double value_;
};

/// Result of a quantile inversion: the value plus a bound on the relative
/// error actually achieved by the root-finder.
struct QuantileResult {
    double value;
    double achieved_accuracy;
};

//---------------------------------------------------------------------------
// Standard normal distribution

// CDF of N(0, 1). Throws std::domain_error for non-finite input.
double normal_cdf(double x);

// pdf of N(0, 1).
double normal_pdf(double x);

// Inverse CDF of N(0, 1), q in (0, 1).
double normal_quantile(double q);
QuantileResult normal_quantile_checked(double q);

//---------------------------------------------------------------------------
// Chi-square distribution

// Regularized lower incomplete gamma P(a, x). Series for x < a+1,
// continued fraction for the complement otherwise.
double regularized_gamma_p(double a, double x);

// CDF of chi-square with dof degrees of freedom.
double chi2_cdf(double x, int dof);

// Inverse CDF of chi-square, q in (0, 1), 1 <= dof <= 1e6.
double chi2_quantile(double q, int dof);
QuantileResult chi2_quantile_checked(double q, int dof);

//---------------------------------------------------------------------------
// Student t distribution

// CDF of Student t with dof >= 1 degrees of freedom (finite-sum form for
// integer dof, Abramowitz & Stegun 26.7.3/26.7.4).
double student_cdf(double t, int dof);

// Inverse CDF of Student t, q in (0, 1), dof >= 1.
double student_quantile(double q, int dof);
QuantileResult student_quantile_checked(double q, int dof);

//---------------------------------------------------------------------------
// Shapiro-Wilk normality test

struct ShapiroWilkResult {
    double w;        // W statistic in (0, 1]
    double p_value;  // clamped into (0, 1)
};

// Shapiro-Wilk W test, Royston's AS R94 approximation. Valid for
// 3 <= n <= 5000; throws std::domain_error outside that range or when the
// sample has zero range.
ShapiroWilkResult shapiro_wilk(std::span<const double> samples);

}  // namespace sigbits
