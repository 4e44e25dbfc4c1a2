// Copyright (c) 2026 The sigbits authors
// SPDX-License-Identifier: Apache-2.0

#include "sigbits/stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace sigbits {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880168872420969808;
constexpr double kSqrt2Pi = 2.50662827463100050241576528481104525;

// Safeguarded Newton iteration on an increasing CDF: keeps a bracket
// [lo, hi] with cdf(lo) < q < cdf(hi) and falls back to bisection whenever
// a Newton step leaves the bracket. Returns the root and an estimate of the
// achieved relative accuracy.
QuantileResult invert_cdf(const std::function<double(double)>& cdf,
                          const std::function<double(double)>& pdf,
                          double q, double lo, double hi, double x0) {
    double x = std::clamp(x0, lo, hi);
    double last_step = hi - lo;
    for (int it = 0; it < 200; ++it) {
        const double f = cdf(x) - q;
        if (f > 0.0)
            hi = x;
        else if (f < 0.0)
            lo = x;
        else
            return {x, 0.0};

        const double d = pdf(x);
        double next;
        if (d > 0.0) {
            next = x - f / d;
            if (!(next > lo && next < hi))  // Newton left the bracket
                next = 0.5 * (lo + hi);
        } else {
            next = 0.5 * (lo + hi);
        }
        last_step = std::abs(next - x);
        const double scale = std::max(std::abs(next), 1e-300);
        x = next;
        if (last_step <= 4.0 * std::numeric_limits<double>::epsilon() * scale)
            break;
    }
    const double rel = last_step / std::max(std::abs(x), 1e-300);
    return {x, std::max(rel, std::numeric_limits<double>::epsilon())};
}

// Acklam's rational approximation to the normal quantile; relative error
// below 1.2e-9 over (0, 1). Used as the starting point for refinement.
double normal_quantile_estimate(double q) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;

    if (q < plow) {
        const double u = std::sqrt(-2.0 * std::log(q));
        return (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
               ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
    }
    if (q > 1.0 - plow) {
        const double u = std::sqrt(-2.0 * std::log(1.0 - q));
        return -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
               ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
    }
    const double u = q - 0.5;
    const double r = u * u;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * u /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Lower incomplete gamma by power series, P(a, x) for x < a + 1.
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int n = 0; n < 2000000; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-17)
            break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper incomplete gamma by Lentz continued fraction, Q(a, x) for x >= a + 1.
double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 2000000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-17)
            break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Wilson-Hilferty starting point for the chi-square quantile.
double chi2_quantile_estimate(double q, int dof) {
    const double z = normal_quantile_estimate(q);
    const double k = static_cast<double>(dof);
    const double c = 2.0 / (9.0 * k);
    const double t = 1.0 - c + z * std::sqrt(c);
    double x = k * t * t * t;
    if (x <= 0.0)
        x = 0.5 * std::exp((std::log(q) + std::lgamma(0.5 * k) +
                            0.5 * k * std::numbers::ln2_v<double>) / (0.5 * k));
    return x;
}

double validated_open_probability(double q, const char* what) {
    if (!(q > 0.0 && q < 1.0))
        throw std::domain_error(std::string(what) + " must lie strictly inside (0, 1)");
    return q;
}

double poly(const double* c, int n, double x) {
    double r = c[0];
    double xp = 1.0;
    for (int i = 1; i < n; ++i) {
        xp *= x;
        r += c[i] * xp;
    }
    return r;
}

}  // namespace

//---------------------------------------------------------------------------

double normal_cdf(double x) {
    if (!std::isfinite(x))
        throw std::domain_error("normal_cdf: non-finite argument");
    return 0.5 * std::erfc(-x / kSqrt2);
}

double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / kSqrt2Pi;
}

QuantileResult normal_quantile_checked(double q) {
    validated_open_probability(q, "normal_quantile: q");
    const double x0 = normal_quantile_estimate(q);
    // cdf is monotone; +/-40 covers every probability representable in
    // binary64 with a wide margin.
    return invert_cdf([](double x) { return normal_cdf(x); },
                      [](double x) { return normal_pdf(x); },
                      q, -40.0, 40.0, x0);
}

double normal_quantile(double q) {
    return normal_quantile_checked(q).value;
}

//---------------------------------------------------------------------------

double regularized_gamma_p(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0) || !std::isfinite(x))
        throw std::domain_error("regularized_gamma_p: need a > 0 and finite x >= 0");
    if (x == 0.0)
        return 0.0;
    if (x < a + 1.0)
        return gamma_p_series(a, x);
    return 1.0 - gamma_q_contfrac(a, x);
}

double chi2_cdf(double x, int dof) {
    if (dof < 1)
        throw std::domain_error("chi2_cdf: dof must be >= 1");
    if (x <= 0.0)
        return 0.0;
    return regularized_gamma_p(0.5 * dof, 0.5 * x);
}

QuantileResult chi2_quantile_checked(double q, int dof) {
    validated_open_probability(q, "chi2_quantile: q");
    if (dof < 1 || dof > 1000000)
        throw std::domain_error("chi2_quantile: dof must lie in [1, 1e6]");

    double x0 = chi2_quantile_estimate(q, dof);
    double hi = std::max(x0 * 2.0, 1.0);
    while (chi2_cdf(hi, dof) < q)
        hi *= 2.0;
    const double a = 0.5 * dof;
    const double lognorm = a * std::numbers::ln2_v<double> + std::lgamma(a);
    auto pdf = [a, lognorm](double x) {
        if (x <= 0.0) return 0.0;
        return std::exp((a - 1.0) * std::log(x) - 0.5 * x - lognorm);
    };
    return invert_cdf([dof](double x) { return chi2_cdf(x, dof); }, pdf,
                      q, 0.0, hi, x0);
}

double chi2_quantile(double q, int dof) {
    return chi2_quantile_checked(q, dof).value;
}

//---------------------------------------------------------------------------

double student_cdf(double t, int dof) {
    if (dof < 1)
        throw std::domain_error("student_cdf: dof must be >= 1");
    if (!std::isfinite(t))
        throw std::domain_error("student_cdf: non-finite argument");
    if (t == 0.0)
        return 0.5;

    const double x = std::abs(t);
    const double nu = static_cast<double>(dof);
    // A(t|nu) = P(|T| <= t); accumulate the finite sum in long double, the
    // even case has up to nu/2 same-sign terms.
    const double theta = std::atan2(x, std::sqrt(nu));
    const long double c = std::sqrt(nu / (nu + x * x));  // cos(theta)
    const long double s = (x / std::sqrt(nu)) * c;       // sin(theta)
    const long double c2 = c * c;
    long double A;
    if (dof == 1) {
        A = 2.0L * theta / std::numbers::pi_v<long double>;
    } else if (dof % 2 == 0) {
        long double term = 1.0L;
        long double sum = term;
        for (int j = 1; 2 * j <= dof - 2; ++j) {
            term *= c2 * (2.0L * j - 1.0L) / (2.0L * j);
            sum += term;
            if (term < 1e-22L * sum)
                break;
        }
        A = s * sum;
    } else {
        long double term = c;
        long double sum = term;
        for (int j = 1; 2 * j + 1 <= dof - 2; ++j) {
            term *= c2 * (2.0L * j) / (2.0L * j + 1.0L);
            sum += term;
            if (term < 1e-22L * sum)
                break;
        }
        A = (2.0L / std::numbers::pi_v<long double>) * (theta + s * sum);
    }
    const double half = 0.5 * std::clamp(static_cast<double>(A), 0.0, 1.0);
    return t > 0.0 ? 0.5 + half : 0.5 - half;
}

QuantileResult student_quantile_checked(double q, int dof) {
    validated_open_probability(q, "student_quantile: q");
    if (dof < 1)
        throw std::domain_error("student_quantile: dof must be >= 1");
    if (q == 0.5)
        return {0.0, 0.0};

    const double nu = static_cast<double>(dof);
    if (dof == 1)
        return {std::tan(std::numbers::pi_v<double> * (q - 0.5)), 1e-15};
    if (dof == 2) {
        const double u = 2.0 * q - 1.0;
        return {u * std::sqrt(2.0 / (1.0 - u * u)), 1e-15};
    }

    // Cornish-Fisher expansion around the normal quantile as starting point.
    const double z = normal_quantile_estimate(q);
    const double z3 = z * z * z;
    const double z5 = z3 * z * z;
    double x0 = z + (z3 + z) / (4.0 * nu) +
                (5.0 * z5 + 16.0 * z3 + 3.0 * z) / (96.0 * nu * nu);

    double hi = std::max(std::abs(x0) * 2.0, 2.0);
    while (student_cdf(hi, dof) < std::max(q, 1.0 - q))
        hi *= 2.0;
    const double lognorm = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                           0.5 * std::log(nu * std::numbers::pi_v<double>);
    auto pdf = [nu, lognorm](double t) {
        return std::exp(lognorm - 0.5 * (nu + 1.0) * std::log1p(t * t / nu));
    };
    return invert_cdf([dof](double t) { return student_cdf(t, dof); }, pdf,
                      q, -hi, hi, x0);
}

double student_quantile(double q, int dof) {
    return student_quantile_checked(q, dof).value;
}

//---------------------------------------------------------------------------
// Shapiro-Wilk, Royston's 1995 AS R94 approximation (uncensored samples).

ShapiroWilkResult shapiro_wilk(std::span<const double> samples) {
    const int n = static_cast<int>(samples.size());
    if (n < 3)
        throw std::domain_error("shapiro_wilk: need at least 3 samples");
    if (n > 5000)
        throw std::domain_error("shapiro_wilk: approximation only valid up to n = 5000");

    std::vector<double> x(samples.begin(), samples.end());
    for (double v : x)
        if (!std::isfinite(v))
            throw std::domain_error("shapiro_wilk: non-finite sample");
    std::sort(x.begin(), x.end());

    const double range = x[n - 1] - x[0];
    if (!(range > 0.0) || range < 1e-300)
        throw std::domain_error("shapiro_wilk: sample has zero range");

    static const double c1[6] = {0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056};
    static const double c2[6] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
    static const double c3[4] = {0.5440, -0.39978, 0.025054, -6.714e-4};
    static const double c4[4] = {1.3822, -0.77857, 0.062767, -0.0020322};
    static const double c5[4] = {-1.5861, -0.31082, -0.083751, 0.0038915};
    static const double c6[3] = {-0.4803, -0.082676, 0.0030302};
    static const double g[2] = {-2.273, 0.459};

    const int nn2 = n / 2;
    std::vector<double> a(nn2);

    if (n == 3) {
        a[0] = std::sqrt(0.5);
    } else {
        const double an = static_cast<double>(n);
        // Blom scores for the lower half; the m[i] are negative.
        std::vector<double> m(nn2);
        double summ2 = 0.0;
        for (int i = 0; i < nn2; ++i) {
            m[i] = normal_quantile((i + 1 - 0.375) / (an + 0.25));
            summ2 += m[i] * m[i];
        }
        summ2 *= 2.0;
        const double ssumm2 = std::sqrt(summ2);
        const double rsn = 1.0 / std::sqrt(an);
        const double a1 = poly(c1, 6, rsn) - m[0] / ssumm2;

        int i1;
        double a2 = 0.0, fac;
        if (n > 5) {
            i1 = 2;
            a2 = poly(c2, 6, rsn) - m[1] / ssumm2;
            fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) /
                            (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
        } else {
            i1 = 1;
            fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
        }
        a[0] = a1;
        if (n > 5) a[1] = a2;
        for (int i = i1; i < nn2; ++i)
            a[i] = -m[i] / fac;
    }

    // Full antisymmetric coefficient vector against the ascending sample:
    // the first half gets -a, the upper half +a (mirrored), odd middle 0.
    // W is the squared correlation between coefficients and order statistics.
    double sa = 0.0, sx = 0.0;
    for (int i = 0; i < n; ++i)
        sx += x[i] / range;
    sx /= n;
    auto coeff = [&](int i) {
        if (i < nn2) return -a[i];
        if (i >= n - nn2) return a[n - 1 - i];
        return 0.0;
    };
    for (int i = 0; i < n; ++i)
        sa += coeff(i);
    sa /= n;

    double ssa = 0.0, ssx = 0.0, sax = 0.0;
    for (int i = 0; i < n; ++i) {
        const double asa = coeff(i) - sa;
        const double xsx = x[i] / range - sx;
        ssa += asa * asa;
        ssx += xsx * xsx;
        sax += asa * xsx;
    }

    // (1 - W) computed directly to avoid cancellation near W = 1.
    const double ssassx = std::sqrt(ssa * ssx);
    const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
    const double w = 1.0 - w1;

    double pw;
    if (n == 3) {
        const double pi6 = 1.90985931710274;    // 6/pi
        const double stqr = 1.04719755119660;   // asin(sqrt(3/4))
        pw = pi6 * (std::asin(std::sqrt(std::clamp(w, 0.0, 1.0))) - stqr);
        pw = std::clamp(pw, 0.0, 1.0);
    } else {
        const double an = static_cast<double>(n);
        double y = std::log(1.0 - w);
        double mu, sigma;
        if (n <= 11) {
            const double gamma = poly(g, 2, an);
            if (y >= gamma) {
                pw = 1e-99;
                return {w, std::clamp(pw, 1e-300, 1.0 - 1e-16)};
            }
            y = -std::log(gamma - y);
            mu = poly(c3, 4, an);
            sigma = std::exp(poly(c4, 4, an));
        } else {
            const double lx = std::log(an);
            mu = poly(c5, 4, lx);
            sigma = std::exp(poly(c6, 3, lx));
        }
        pw = 1.0 - normal_cdf((y - mu) / sigma);   // upper tail
    }
    return {w, std::clamp(pw, 1e-300, 1.0 - 1e-16)};
}

}  // namespace sigbits
