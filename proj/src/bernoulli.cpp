// Copyright (c) 2026 The sigbits authors
// SPDX-License-Identifier: Apache-2.0

#include "sigbits/bernoulli.hpp"

#include <cmath>
#include <stdexcept>

#include "sigbits/stats.hpp"

namespace sigbits {

namespace {

constexpr double kTwo63 = 9223372036854775808.0;  // 2^63

void require_nonempty(std::span<const double> z, const char* what) {
    if (z.empty())
        throw std::invalid_argument(std::string(what) + ": empty sample set");
}

// Counts of significance/contribution successes for every k in [0, k_max].
struct TrialCounts {
    std::vector<std::int64_t> significance;
    std::vector<std::int64_t> contribution;
};

TrialCounts count_trials_range(std::span<const double> z, int k_max,
                               size_t begin, size_t end) {
    TrialCounts c;
    c.significance.assign(k_max + 1, 0);
    c.contribution.assign(k_max + 1, 0);
    for (size_t i = begin; i < end; ++i) {
        for (int k = 0; k <= k_max; ++k) {
            if (significance_trial(z[i], k))
                ++c.significance[k];
            if (contribution_trial(z[i], k))
                ++c.contribution[k];
        }
    }
    return c;
}

BernoulliCurves curves_from_counts(const TrialCounts& counts, std::int64_t n,
                                   double alpha, int k_max) {
    BernoulliCurves out;
    out.significance.kind = CurveKind::significance;
    out.contribution.kind = CurveKind::contribution;
    for (int k = 0; k <= k_max; ++k) {
        for (auto [curve, ns] :
             {std::pair{&out.significance, counts.significance[k]},
              std::pair{&out.contribution, counts.contribution[k]}}) {
            BitCurveEntry e;
            e.k = k;
            e.successes = ns;
            e.trials = n;
            e.p_hat = static_cast<double>(ns) / static_cast<double>(n);
            const auto lb = bernoulli_lower_bound(ns, n, alpha);
            e.p_lower = lb.p_lower;
            e.method = lb.method;
            e.low_confidence = lb.low_confidence;
            curve->entries.push_back(e);
        }
    }
    return out;
}

}  // namespace

bool significance_trial(double z, int k) {
    if (!std::isfinite(z))
        throw std::invalid_argument("significance_trial: non-finite sample");
    return std::abs(z) <= std::exp2(-k);
}

bool contribution_trial(double z, int k) {
    if (!std::isfinite(z))
        throw std::invalid_argument("contribution_trial: non-finite sample");
    // ldexp never rounds for k >= 0; overflow lands on +inf and is caught
    // by the range check below.
    const double scaled = std::ldexp(std::abs(z), k);
    if (!(scaled < kTwo63))
        throw std::range_error("contribution_trial: 2^k |z| exceeds 2^63");
    const auto u = static_cast<std::uint64_t>(scaled);  // exact truncation
    return (u & 1ULL) == 0ULL;
}

std::int64_t required_samples(double p, double alpha) {
    (void)Probability(p);
    (void)Probability(alpha);
    const double la = std::log(alpha);
    const double lp = std::log(p);
    auto n = static_cast<std::int64_t>(std::ceil(la / lp));
    if (n < 1) n = 1;
    // settle FP border cases so that p^n <= alpha < p^(n-1) exactly holds
    // in terms of the same logarithms
    while (static_cast<double>(n) * lp > la)
        ++n;
    while (n > 1 && static_cast<double>(n - 1) * lp <= la)
        --n;
    return n;
}

BernoulliLowerBound bernoulli_lower_bound(std::int64_t successes,
                                          std::int64_t trials, double alpha) {
    if (trials < 1)
        throw std::domain_error("bernoulli_lower_bound: need at least one trial");
    if (successes < 0 || successes > trials)
        throw std::domain_error("bernoulli_lower_bound: successes out of range");
    (void)Probability(alpha);

    BernoulliLowerBound r;
    if (successes == trials) {
        // exact inversion of p^n >= alpha
        r.p_lower = std::exp(std::log(alpha) / static_cast<double>(trials));
        r.method = LowerBoundMethod::exact_all_success;
        r.low_confidence = false;
        return r;
    }
    const double ns = static_cast<double>(successes);
    const double n = static_cast<double>(trials);
    const double center = (ns + 2.0) / (n + 4.0);
    const double z = normal_quantile(1.0 - alpha);
    const double spread =
        std::sqrt((ns + 2.0) * (n - ns + 2.0) / std::pow(n + 4.0, 3.0));
    r.p_lower = std::min(std::max(center - z * spread, 0.0), 1.0);
    r.method = LowerBoundMethod::clt_adjusted;
    r.low_confidence = (successes < 5) || (trials - successes < 5);
    return r;
}

SHatB s_hat_b(std::span<const double> z) {
    require_nonempty(z, "s_hat_b");
    double zmax = 0.0;
    for (double v : z) {
        if (!std::isfinite(v))
            throw std::invalid_argument("s_hat_b: non-finite sample");
        zmax = std::max(zmax, std::abs(v));
    }
    SHatB r;
    if (zmax == 0.0) {
        r.bits = 53;
        r.exact = true;
        return r;
    }
    // zmax = m * 2^e with m in [0.5, 1): the largest k with zmax <= 2^-k is
    // 1 - e when zmax is a power of two, -e otherwise.
    int e = 0;
    const double m = std::abs(std::frexp(zmax, &e));
    const int k = (m == 0.5) ? 1 - e : -e;
    if (k < 1) {
        r.bits = 0;
        r.no_certified_bit = true;
        return r;
    }
    r.bits = std::min(k, 53);
    return r;
}

double s_hat_b_fractional(std::span<const double> z) {
    require_nonempty(z, "s_hat_b_fractional");
    double zmax = 0.0;
    for (double v : z) {
        if (!std::isfinite(v))
            throw std::invalid_argument("s_hat_b_fractional: non-finite sample");
        zmax = std::max(zmax, std::abs(v));
    }
    if (zmax == 0.0)
        return 53.0;
    return std::min(std::max(-std::log2(zmax), 0.0), 53.0);
}

BernoulliCurves bernoulli_curves_serial(std::span<const double> z, double alpha,
                                        int k_max) {
    require_nonempty(z, "bernoulli_curves");
    if (k_max < 0 || k_max > 53)
        throw std::domain_error("bernoulli_curves: k_max must lie in [0, 53]");
    const auto counts = count_trials_range(z, k_max, 0, z.size());
    return curves_from_counts(counts, static_cast<std::int64_t>(z.size()), alpha,
                              k_max);
}

BernoulliCurves bernoulli_curves(std::span<const double> z, double alpha,
                                 int k_max) {
    require_nonempty(z, "bernoulli_curves");
    if (k_max < 0 || k_max > 53)
        throw std::domain_error("bernoulli_curves: k_max must lie in [0, 53]");

    TrialCounts total;
    total.significance.assign(k_max + 1, 0);
    total.contribution.assign(k_max + 1, 0);
    const auto n = static_cast<std::int64_t>(z.size());
    bool bad_sample = false;    // exceptions must not unwind out of the region
    bool range_error = false;

#pragma omp parallel
    {
        TrialCounts local;
        local.significance.assign(k_max + 1, 0);
        local.contribution.assign(k_max + 1, 0);
#pragma omp for schedule(static) nowait
        for (std::int64_t i = 0; i < n; ++i) {
            if (!std::isfinite(z[i])) {
#pragma omp atomic write
                bad_sample = true;
                continue;
            }
            for (int k = 0; k <= k_max; ++k) {
                if (significance_trial(z[i], k))
                    ++local.significance[k];
                const double scaled = std::ldexp(std::abs(z[i]), k);
                if (!(scaled < kTwo63)) {
#pragma omp atomic write
                    range_error = true;
                    continue;
                }
                if ((static_cast<std::uint64_t>(scaled) & 1ULL) == 0ULL)
                    ++local.contribution[k];
            }
        }
#pragma omp critical
        {
            for (int k = 0; k <= k_max; ++k) {
                total.significance[k] += local.significance[k];
                total.contribution[k] += local.contribution[k];
            }
        }
    }
    if (bad_sample)
        throw std::invalid_argument("bernoulli_curves: non-finite sample");
    if (range_error)
        throw std::range_error("bernoulli_curves: 2^k |z| exceeds 2^63");
    return curves_from_counts(total, n, alpha, k_max);
}

}  // namespace sigbits
