// Copyright (c) 2026 The sigbits authors
// SPDX-License-Identifier: Apache-2.0

#include "sigbits/mca.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sigbits {

namespace {

// Error-free transformations: hi is the rounded result, hi + lo the exact
// one (for division, lo only carries the sign of the residual).
struct TwoFold {
    double hi;
    double lo;
};

TwoFold two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

TwoFold two_prod(double a, double b) {
    const double p = a * b;
    const double err = std::fma(a, b, -p);
    return {p, err};
}

// Exact division residual r = a - q*b; the true quotient is q + r/b, so the
// rounding direction is sign(r) * sign(b).
TwoFold two_div(double a, double b) {
    const double q = a / b;
    const double r = std::fma(-q, b, a);
    return {q, b > 0.0 ? r : -r};
}

TwoFold exact_op(double a, double b, ArithOp op) {
    switch (op) {
        case ArithOp::add: return two_sum(a, b);
        case ArithOp::sub: return two_sum(a, -b);
        case ArithOp::mul: return two_prod(a, b);
        case ArithOp::div:
            if (b == 0.0)
                throw std::domain_error("noisy_op: division by zero");
            return two_div(a, b);
    }
    throw std::logic_error("exact_op: bad op");
}

// Magnitude exponent of the exact value hi + lo. It equals the exponent of
// hi except when hi sits exactly on a binade boundary and lo pulls the
// exact value below it.
int exact_magnitude_exponent(double hi, double lo) {
    int e = 0;
    const double m = std::abs(std::frexp(hi, &e));
    if (m == 0.5 && lo != 0.0 && std::signbit(lo) != std::signbit(hi))
        return e - 1;
    return e;
}

// Noise at virtual precision t applied to the exact pair (hi, lo); the two
// small terms are accumulated before touching hi so only one rounding step
// remains.
double perturb_exact(double hi, double lo, int t, RngStream& rng) {
    if (hi == 0.0 && lo == 0.0)
        return 0.0;
    const double xi = rng.next_unit() - 0.5;
    const int e = exact_magnitude_exponent(hi, lo);
    return hi + (lo + std::ldexp(xi, e - t));
}

}  // namespace

std::string to_string(NoiseModel m) {
    switch (m) {
        case NoiseModel::ieee_nominal: return "ieee";
        case NoiseModel::mca_rr: return "mca_rr";
        case NoiseModel::mca_inbound: return "mca_inbound";
        case NoiseModel::mca_full: return "mca_full";
        case NoiseModel::cestac_random_round: return "cestac";
    }
    return "?";
}

NoiseModel noise_model_from_string(const std::string& name) {
    if (name == "ieee") return NoiseModel::ieee_nominal;
    if (name == "mca_rr") return NoiseModel::mca_rr;
    if (name == "mca_inbound") return NoiseModel::mca_inbound;
    if (name == "mca_full") return NoiseModel::mca_full;
    if (name == "cestac") return NoiseModel::cestac_random_round;
    throw std::invalid_argument("unknown noise model: " + name);
}

void NoiseConfig::validate() const {
    if (virtual_precision < 1 || virtual_precision > 53)
        throw std::domain_error("NoiseConfig: virtual precision must lie in [1, 53]");
}

int magnitude_exponent(double x) {
    if (x == 0.0 || !std::isfinite(x))
        throw std::domain_error("magnitude_exponent: need finite nonzero value");
    int e = 0;
    std::frexp(x, &e);
    return e;
}

double inexact_with(double x, int t, double xi) {
    if (t < 1 || t > 53)
        throw std::domain_error("inexact: virtual precision must lie in [1, 53]");
    if (!std::isfinite(x))
        throw std::invalid_argument("inexact: non-finite value");
    if (x == 0.0)
        return 0.0;
    return x + std::ldexp(xi, magnitude_exponent(x) - t);
}

double inexact(double x, int t, RngStream& rng) {
    return inexact_with(x, t, rng.next_unit() - 0.5);
}

double random_round(double hi, double lo, RngStream& rng) {
    if (lo == 0.0)
        return hi;
    if (rng.next_bit())
        return hi;
    const double toward = lo > 0.0 ? std::numeric_limits<double>::infinity()
                                   : -std::numeric_limits<double>::infinity();
    return std::nextafter(hi, toward);
}

double noisy_op(double a, double b, ArithOp op, const NoiseConfig& cfg, RngStream& rng) {
    cfg.validate();
    const int t = cfg.virtual_precision;
    switch (cfg.model) {
        case NoiseModel::ieee_nominal: {
            const auto r = exact_op(a, b, op);
            return r.hi;
        }
        case NoiseModel::mca_rr: {
            const auto r = exact_op(a, b, op);
            if (op == ArithOp::div) {
                // exact quotient is q + r/b; lo is only sign-exact, its
                // magnitude b-scaled residual
                const double q = r.hi;
                const double lo = r.lo / std::abs(b);
                return perturb_exact(q, lo, t, rng);
            }
            return perturb_exact(r.hi, r.lo, t, rng);
        }
        case NoiseModel::mca_inbound: {
            const double an = inexact(a, t, rng);
            const double bn = inexact(b, t, rng);
            const auto r = exact_op(an, bn, op);
            return r.hi;
        }
        case NoiseModel::mca_full: {
            const double an = inexact(a, t, rng);
            const double bn = inexact(b, t, rng);
            const auto r = exact_op(an, bn, op);
            if (op == ArithOp::div)
                return perturb_exact(r.hi, r.lo / std::abs(bn), t, rng);
            return perturb_exact(r.hi, r.lo, t, rng);
        }
        case NoiseModel::cestac_random_round: {
            const auto r = exact_op(a, b, op);
            return random_round(r.hi, r.lo, rng);
        }
    }
    throw std::logic_error("noisy_op: bad model");
}

std::array<double, 2> cramer_solve(const std::array<double, 4>& a,
                                   const std::array<double, 2>& b,
                                   const NoiseConfig& cfg, RngStream& rng) {
    auto mul = [&](double x, double y) { return noisy_op(x, y, ArithOp::mul, cfg, rng); };
    auto sub = [&](double x, double y) { return noisy_op(x, y, ArithOp::sub, cfg, rng); };
    auto div = [&](double x, double y) { return noisy_op(x, y, ArithOp::div, cfg, rng); };

    const double det = sub(mul(a[0], a[3]), mul(a[2], a[1]));
    const double det0 = sub(mul(b[0], a[3]), mul(b[1], a[1]));
    const double det1 = sub(mul(a[0], b[1]), mul(a[2], b[0]));
    if (det == 0.0)
        throw std::domain_error("cramer_solve: singular system");
    return {div(det0, det), div(det1, det)};
}

namespace {

std::string benchmark_name(Benchmark b) {
    return b == Benchmark::cramer_x0 ? "cramer_x0" : "cramer_x1";
}

double one_cramer_sample(Benchmark bench, const NoiseConfig& cfg, std::uint64_t i) {
    const KahanSystem sys;
    RngStream rng(cfg.seed, i);
    const auto x = cramer_solve(sys.a, sys.b, cfg, rng);
    return bench == Benchmark::cramer_x0 ? x[0] : x[1];
}

SampleSet make_set(Benchmark bench, int n, const NoiseConfig& cfg) {
    if (n < 1)
        throw std::invalid_argument("generate_samples: n must be >= 1");
    cfg.validate();
    SampleSet s;
    s.values.resize(n);
    s.seed = cfg.seed;
    s.generator = benchmark_name(bench) + "/" + to_string(cfg.model);
    s.virtual_precision =
        cfg.model == NoiseModel::ieee_nominal ? 0 : cfg.virtual_precision;
    return s;
}

}  // namespace

SampleSet generate_samples_serial(Benchmark bench, int n, const NoiseConfig& cfg) {
    auto s = make_set(bench, n, cfg);
    for (int i = 0; i < n; ++i)
        s.values[i] = one_cramer_sample(bench, cfg, static_cast<std::uint64_t>(i));
    return s;
}

SampleSet generate_samples(Benchmark bench, int n, const NoiseConfig& cfg) {
    auto s = make_set(bench, n, cfg);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i)
        s.values[i] = one_cramer_sample(bench, cfg, static_cast<std::uint64_t>(i));
    return s;
}

std::pair<SampleSet, SampleSet> cramer_sample_pair(int n, const NoiseConfig& cfg) {
    auto s0 = make_set(Benchmark::cramer_x0, n, cfg);
    auto s1 = make_set(Benchmark::cramer_x1, n, cfg);
    const KahanSystem sys;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        RngStream rng(cfg.seed, static_cast<std::uint64_t>(i));
        const auto x = cramer_solve(sys.a, sys.b, cfg, rng);
        s0.values[i] = x[0];
        s1.values[i] = x[1];
    }
    return {std::move(s0), std::move(s1)};
}

}  // namespace sigbits
