// Copyright (c) 2026 The sigbits authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "sigbits/cnh.hpp"

namespace sigbits {

// -log2|sigma_hat / mu_hat|, the signal-to-noise bit count. sigma_hat == 0
// reports the full mantissa with the exact flag set.
BitsEstimate s_hat_mca(double mu_hat, double sigma_hat);

// -log2(tau_n sigma_hat / (sqrt(n) |mu_hat|)) with tau_n the two-sided
// Student quantile at 1 - alpha/2 and n - 1 degrees of freedom. Kept for
// reinterpretation only: the bound diverges as n grows.
BitsEstimate s_hat_cestac(double mu_hat, double sigma_hat, int n, double alpha);

// Bits in common between a user-supplied exact reference and the sample
// average (the classical definition, computable only with a reference).
double s_cestac_vs_reference(double exact_reference, double mu_hat);

// Solves delta_cnh(n, p, alpha) = shift for p: the probability at which a
// legacy shift certifies significance. Saturates just below 1.
double equivalent_probability(double shift, int n, double alpha);

struct CadnaPreset {
    int n = 3;
    double alpha = 0.05;
    double shift = 0.0;          // -log2(tau_3 / sqrt 3), about 1.31
    double equivalent_p = 0.0;   // probability the -1.31 shift certifies
    double safety_margin_bits = 0.0;  // one decimal digit, log2(10)
    double shifted_equivalent_p = 0.0;  // probability after the margin
};

// The n = 3, 95 % configuration used by the classical runtime library,
// with and without its recommended one-decimal-digit safety margin.
CadnaPreset cadna_preset();

struct LegacyEstimates {
    BitsEstimate s_mca;
    BitsEstimate s_cestac;
    double cadna_equivalent_p = 0.0;
    int n = 0;
    double alpha = 0.0;
};

LegacyEstimates legacy_estimates(double mu_hat, double sigma_hat, int n, double alpha);

}  // namespace sigbits
