// Copyright (c) 2026 The sigbits authors
// SPDX-License-Identifier: Apache-2.0

#include "sigbits/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace sigbits {

using ordered_json = nlohmann::ordered_json;

std::string to_string(Estimator e) {
    switch (e) {
        case Estimator::cnh: return "cnh";
        case Estimator::bernoulli: return "bernoulli";
        case Estimator::mca: return "mca";
        case Estimator::cestac: return "cestac";
    }
    return "?";
}

Estimator estimator_from_string(const std::string& name) {
    if (name == "cnh") return Estimator::cnh;
    if (name == "bernoulli") return Estimator::bernoulli;
    if (name == "mca") return Estimator::mca;
    if (name == "cestac") return Estimator::cestac;
    throw std::invalid_argument("unknown estimator: " + name);
}

namespace {

ErrorSampleSet build_errors(const AnalysisConfig& cfg) {
    const int picked = (cfg.reference_samples ? 1 : 0) +
                       (cfg.reference_scalar ? 1 : 0) + (cfg.reference_mean ? 1 : 0);
    if (picked != 1)
        throw std::invalid_argument("analyze: exactly one reference must be chosen");
    if (cfg.reference_samples)
        return build_error_samples(cfg.samples, *cfg.reference_samples, cfg.error_kind);
    if (cfg.reference_scalar)
        return build_error_samples(cfg.samples, *cfg.reference_scalar, cfg.error_kind);
    return build_error_samples_vs_mean(cfg.samples, cfg.error_kind);
}

RecommendedNotation make_notation(const AnalysisConfig& cfg, double sigma_z,
                                  int e_y, double display_value) {
    RecommendedNotation note;
    // certified lower bound on -log2(sigma) from the chi2 interval
    const int n = static_cast<int>(cfg.samples.size());
    note.k = -std::log2(sigma_z) -
             0.5 * std::log2((n - 1) / chi2_quantile(cfg.alpha / 2.0, n - 1));

    const double extra = cfg.error_kind == ErrorKind::absolute ? e_y - 1.0 : 0.0;
    note.bits_to_keep =
        static_cast<long long>(std::ceil(note.k + extra + notation_contribution_offset()));
    note.error_exponent =
        static_cast<long long>(std::floor(note.k - notation_significance_offset()) + extra);

    const double err = std::exp2(-std::floor(note.k - notation_significance_offset()));
    note.error_magnitude =
        cfg.error_kind == ErrorKind::relative ? err * std::abs(display_value) : err;

    const int digits = std::max(
        1, std::min(17, static_cast<int>(std::ceil(
               (note.k + extra + notation_contribution_offset()) * std::log10(2.0)))));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, display_value);
    char ebuf[32];
    std::snprintf(ebuf, sizeof ebuf, "%.1e", note.error_magnitude);
    note.rendered = std::string(buf) + " +/- " + ebuf;
    return note;
}

const char* kind_name(ErrorKind k) {
    return k == ErrorKind::absolute ? "absolute" : "relative";
}

ordered_json bits_json(const BitsEstimate& b) {
    return ordered_json{{"bits", b.bits},
                        {"raw", b.raw},
                        {"clamped", b.clamped},
                        {"exact", b.exact}};
}

ordered_json curve_json(const BitCurve& c) {
    ordered_json arr = ordered_json::array();
    for (const auto& e : c.entries) {
        arr.push_back(ordered_json{
            {"k", e.k},
            {"successes", e.successes},
            {"trials", e.trials},
            {"p_hat", e.p_hat},
            {"p_lower", e.p_lower},
            {"method", e.method == LowerBoundMethod::exact_all_success
                           ? "exact_all_success"
                           : "clt_adjusted"},
            {"low_confidence", e.low_confidence}});
    }
    return arr;
}

}  // namespace

SignificanceReport analyze(const AnalysisConfig& cfg) {
    if (cfg.samples.size() < 2)
        throw std::invalid_argument("analyze: need at least 2 samples");
    if (cfg.estimators.empty())
        throw std::invalid_argument("analyze: empty estimator set");
    if (cfg.k_max < 0 || cfg.k_max > 53)
        throw std::domain_error("analyze: k_max must lie in [0, 53]");
    (void)Probability(cfg.p);
    (void)Probability(cfg.alpha);

    SignificanceReport rep;
    rep.n = static_cast<int>(cfg.samples.size());
    rep.input_path = cfg.input_path;
    rep.reference_path = cfg.reference_path;
    rep.provenance = cfg.provenance;
    rep.error_kind = cfg.error_kind;
    rep.estimators = cfg.estimators;
    rep.p = cfg.p;
    rep.alpha = cfg.alpha;
    rep.contribution_p = cfg.contribution_p;
    rep.k_max = cfg.k_max;

    const auto z = build_errors(cfg);
    rep.reference_description = z.reference_description;
    rep.normalization_exponent = z.normalization_exponent;
    rep.warnings = z.warnings;

    rep.mean_x = sample_mean(cfg.samples);
    rep.sigma_x = sample_stddev(cfg.samples);

    const double sigma_z = sample_stddev(z.z);
    const auto required = required_samples(cfg.p, cfg.alpha);
    if (rep.n < required)
        rep.warnings.push_back(
            "sample count " + std::to_string(rep.n) +
            " is below the distribution-free requirement of " + std::to_string(required) +
            " for p = " + std::to_string(cfg.p) + ", confidence = " +
            std::to_string(1.0 - cfg.alpha));

    if (cfg.estimators.count(Estimator::cnh)) {
        ConfidenceParams params(rep.n, cfg.p, cfg.alpha);
        auto cnh = cnh_report(z, params, cfg.contribution_p);
        // the error-set warnings are already in rep.warnings
        cnh.warnings.erase(cnh.warnings.begin(),
                           cnh.warnings.begin() +
                               static_cast<long>(z.warnings.size()));
        for (const auto& w : cnh.warnings)
            rep.warnings.push_back(w);
        rep.cnh = std::move(cnh);
    }

    if (cfg.estimators.count(Estimator::bernoulli)) {
        BernoulliReport b;
        b.s_b = s_hat_b(z.z);
        b.s_b_fractional = s_hat_b_fractional(z.z);
        b.required_n = required;
        b.enough_samples = rep.n >= required;
        b.curves = bernoulli_curves(z.z, cfg.alpha, cfg.k_max);
        if (b.s_b.no_certified_bit)
            rep.warnings.push_back("no bit could be certified (an error sample exceeds 1/2)");
        rep.bernoulli = std::move(b);
    }

    if (cfg.estimators.count(Estimator::mca) || cfg.estimators.count(Estimator::cestac)) {
        LegacyReport l;
        if (rep.mean_x == 0.0) {
            rep.warnings.push_back("legacy estimators skipped: sample mean is zero");
        } else {
            if (cfg.estimators.count(Estimator::mca))
                l.s_mca = s_hat_mca(rep.mean_x, rep.sigma_x);
            if (cfg.estimators.count(Estimator::cestac)) {
                l.s_cestac = s_hat_cestac(rep.mean_x, rep.sigma_x, rep.n, cfg.alpha);
                const double tau = student_quantile(1.0 - cfg.alpha / 2.0, rep.n - 1);
                l.cestac_equivalent_p = equivalent_probability(
                    std::log2(tau / std::sqrt(static_cast<double>(rep.n))), rep.n,
                    cfg.alpha);
                if (cfg.reference_scalar)
                    l.s_cestac_definition1 =
                        s_cestac_vs_reference(*cfg.reference_scalar, rep.mean_x);
            }
        }
        rep.legacy = std::move(l);
    }

    if (sigma_z > 0.0) {
        const double display = cfg.reference_scalar ? *cfg.reference_scalar : rep.mean_x;
        rep.notation = make_notation(cfg, sigma_z, z.normalization_exponent, display);
    } else {
        rep.warnings.push_back("all error samples are exactly zero; notation omitted");
    }
    return rep;
}

std::string to_json(const SignificanceReport& r) {
    ordered_json j;
    j["schema"] = r.schema;

    ordered_json inputs;
    inputs["n"] = r.n;
    inputs["input_path"] = r.input_path;
    inputs["reference_path"] = r.reference_path;
    inputs["reference"] = r.reference_description;
    inputs["provenance"] = r.provenance;
    inputs["error_kind"] = kind_name(r.error_kind);
    ordered_json est = ordered_json::array();
    for (const auto& e : r.estimators)
        est.push_back(to_string(e));
    inputs["estimators"] = est;
    inputs["p"] = r.p;
    inputs["alpha"] = r.alpha;
    inputs["contribution_p"] = r.contribution_p;
    inputs["k_max"] = r.k_max;
    j["inputs"] = inputs;

    ordered_json moments;
    moments["mean"] = r.mean_x;
    moments["stddev"] = r.sigma_x;
    moments["normalization_exponent"] = r.normalization_exponent;
    j["sample_moments"] = moments;

    if (r.cnh) {
        const auto& c = *r.cnh;
        ordered_json jc;
        jc["p"] = c.p;
        jc["alpha"] = c.alpha;
        jc["n"] = c.n;
        jc["sigma_hat"] = c.sigma_hat;
        jc["mean_z"] = c.mean_z;
        jc["variance_interval"] = ordered_json{{"lower", c.variance.lower},
                                               {"upper", c.variance.upper},
                                               {"degenerate", c.variance.degenerate}};
        jc["delta"] = c.delta;
        jc["s_cnh"] = bits_json(c.s_cnh);
        if (c.c_cnh) {
            jc["contribution_p"] = c.contribution_p;
            jc["c_cnh"] = bits_json(*c.c_cnh);
        }
        if (c.normality) {
            jc["normality"] = ordered_json{{"tested_n", c.normality->tested_n},
                                           {"W", c.normality->w},
                                           {"p_value", c.normality->p_value},
                                           {"rejected", c.normality->rejected}};
        }
        ordered_json curve = ordered_json::array();
        for (const auto& pt : c.curve) {
            ordered_json jp{{"k", pt.k},
                            {"p_significant", pt.p_significant},
                            {"p_significant_lower", pt.p_significant_lower}};
            if (pt.contribution_valid) {
                jp["p_contributing"] = pt.contribution.p_estimate;
                jp["p_contributing_lower"] = pt.contribution_lower;
            }
            curve.push_back(jp);
        }
        jc["curve"] = curve;
        j["cnh"] = jc;
    }

    if (r.bernoulli) {
        const auto& b = *r.bernoulli;
        ordered_json jb;
        jb["s_b"] = b.s_b.bits;
        jb["no_certified_bit"] = b.s_b.no_certified_bit;
        jb["exact"] = b.s_b.exact;
        jb["s_b_fractional"] = b.s_b_fractional;
        jb["required_n"] = b.required_n;
        jb["enough_samples"] = b.enough_samples;
        jb["significance_curve"] = curve_json(b.curves.significance);
        jb["contribution_curve"] = curve_json(b.curves.contribution);
        j["bernoulli"] = jb;
    }

    if (r.legacy) {
        const auto& l = *r.legacy;
        ordered_json jl;
        if (l.s_mca)
            jl["s_mca"] = bits_json(*l.s_mca);
        if (l.s_cestac) {
            jl["s_cestac"] = bits_json(*l.s_cestac);
            jl["s_cestac_note"] = "legacy, diverges as n grows";
            jl["cestac_equivalent_p"] = l.cestac_equivalent_p;
        }
        if (l.s_cestac_definition1)
            jl["s_cestac_vs_reference"] = *l.s_cestac_definition1;
        j["legacy"] = jl;
    }

    if (r.notation) {
        j["notation"] = ordered_json{{"k", r.notation->k},
                                     {"bits_to_keep", r.notation->bits_to_keep},
                                     {"error_exponent", r.notation->error_exponent},
                                     {"error_magnitude", r.notation->error_magnitude},
                                     {"rendered", r.notation->rendered}};
    }

    j["warnings"] = r.warnings;
    return j.dump(2) + "\n";
}

std::string to_text(const SignificanceReport& r) {
    std::ostringstream os;
    char buf[128];
    os << "samples: " << r.n << " (" << kind_name(r.error_kind) << " error vs "
       << r.reference_description << ")\n";
    std::snprintf(buf, sizeof buf, "mean = %.17g, stddev = %.6e\n", r.mean_x, r.sigma_x);
    os << buf;
    std::snprintf(buf, sizeof buf, "p = %g, confidence = %g\n", r.p, 1.0 - r.alpha);
    os << buf;

    if (r.cnh) {
        std::snprintf(buf, sizeof buf, "s_cnh  = %.2f bits%s\n", r.cnh->s_cnh.bits,
                      r.cnh->s_cnh.exact ? " (exact match)" : "");
        os << buf;
        if (r.cnh->c_cnh) {
            std::snprintf(buf, sizeof buf, "c_cnh  = %.2f bits (contribution p = %g)\n",
                          r.cnh->c_cnh->bits, r.cnh->contribution_p);
            os << buf;
        }
        if (r.cnh->normality) {
            std::snprintf(buf, sizeof buf,
                          "normality: W = %.4f, p = %.3g over %d samples%s\n",
                          r.cnh->normality->w, r.cnh->normality->p_value,
                          r.cnh->normality->tested_n,
                          r.cnh->normality->rejected ? "  [rejected]" : "");
            os << buf;
        }
    }
    if (r.bernoulli) {
        std::snprintf(buf, sizeof buf, "s_b    = %d bits (fractional %.2f)%s\n",
                      r.bernoulli->s_b.bits, r.bernoulli->s_b_fractional,
                      r.bernoulli->s_b.no_certified_bit ? "  [no certified bit]" : "");
        os << buf;
        if (!r.bernoulli->enough_samples) {
            std::snprintf(buf, sizeof buf, "         (needs %lld samples at these p, alpha)\n",
                          static_cast<long long>(r.bernoulli->required_n));
            os << buf;
        }
    }
    if (r.legacy) {
        if (r.legacy->s_mca) {
            std::snprintf(buf, sizeof buf, "s_mca  = %.2f bits\n", r.legacy->s_mca->bits);
            os << buf;
        }
        if (r.legacy->s_cestac) {
            std::snprintf(buf, sizeof buf,
                          "s_cestac = %.2f bits (legacy, diverges as n grows; certifies p "
                          "= %.3f)\n",
                          r.legacy->s_cestac->bits, r.legacy->cestac_equivalent_p);
            os << buf;
        }
        if (r.legacy->s_cestac_definition1) {
            std::snprintf(buf, sizeof buf, "s_cestac(reference) = %.2f bits\n",
                          *r.legacy->s_cestac_definition1);
            os << buf;
        }
    }
    if (r.notation)
        os << "recommended notation: " << r.notation->rendered << "\n";
    for (const auto& w : r.warnings)
        os << "warning: " << w << "\n";
    return os.str();
}

std::string curves_csv(const SignificanceReport& r) {
    std::ostringstream os;
    os << "k,kind,successes,trials,p_hat,p_lower\n";
    char buf[160];
    if (r.bernoulli) {
        for (const auto* curve :
             {&r.bernoulli->curves.significance, &r.bernoulli->curves.contribution}) {
            const char* kind =
                curve->kind == CurveKind::significance ? "significance" : "contribution";
            for (const auto& e : curve->entries) {
                std::snprintf(buf, sizeof buf, "%d,%s,%lld,%lld,%.17g,%.17g\n", e.k, kind,
                              static_cast<long long>(e.successes),
                              static_cast<long long>(e.trials), e.p_hat, e.p_lower);
                os << buf;
            }
        }
    }
    if (r.cnh) {
        for (const auto& pt : r.cnh->curve) {
            std::snprintf(buf, sizeof buf, "%d,cnh_significance,0,0,%.17g,%.17g\n", pt.k,
                          pt.p_significant, pt.p_significant_lower);
            os << buf;
            if (pt.contribution_valid) {
                std::snprintf(buf, sizeof buf, "%d,cnh_contribution,0,0,%.17g,%.17g\n",
                              pt.k, pt.contribution.p_estimate, pt.contribution_lower);
                os << buf;
            }
        }
    }
    return os.str();
}

}  // namespace sigbits
