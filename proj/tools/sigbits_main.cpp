// Copyright (c) 2026 The sigbits authors
// SPDX-License-Identifier: Apache-2.0
//
// sigbits: certify how many bits of a stochastically perturbed
// floating-point computation are significant or contributing, with explicit
// probability and confidence.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sigbits/mca.hpp"
#include "sigbits/report.hpp"
#include "sigbits/sample_io.hpp"
#include "sigbits/tables.hpp"

namespace {

using namespace sigbits;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitStrictWarnings = 2;

void write_or_print(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out.good())
        throw std::runtime_error("cannot write " + path);
    out << content;
}

std::set<Estimator> parse_estimators(const std::string& csv) {
    std::set<Estimator> out;
    std::string cur;
    for (char c : csv + ",") {
        if (c == ',') {
            if (!cur.empty())
                out.insert(estimator_from_string(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (out.empty())
        throw CLI::ValidationError("--estimators", "empty estimator set");
    return out;
}

struct AnalyzeFlags {
    std::string input;
    std::string reference = "mean";
    std::string reference_file;
    std::string error_kind = "relative";
    std::string estimators = "cnh,bernoulli,mca,cestac";
    double p = 0.95;
    double confidence = 0.95;
    double contribution_p = 0.51;
    int k_max = 53;
    bool strict = false;
    std::string format = "text";
    std::string output;
};

void add_analysis_flags(CLI::App* cmd, AnalyzeFlags& f, bool with_format) {
    cmd->add_option("-i,--input", f.input, "sample file, one value per line")->required();
    cmd->add_option("--reference", f.reference,
                    "'mean' or a scalar literal (decimal or hex float)");
    cmd->add_option("--reference-file", f.reference_file,
                    "paired reference sample file (overrides --reference)");
    cmd->add_option("--error", f.error_kind, "error kind: relative | absolute")
        ->check(CLI::IsMember({"relative", "absolute"}));
    cmd->add_option("--estimators", f.estimators,
                    "comma list from cnh,bernoulli,mca,cestac");
    cmd->add_option("-p,--p", f.p, "target probability")->check(CLI::Range(1e-12, 1.0));
    cmd->add_option("-c,--confidence", f.confidence, "confidence level 1 - alpha")
        ->check(CLI::Range(1e-12, 1.0));
    cmd->add_option("--contribution-p", f.contribution_p,
                    "probability for contributing-bit bounds (0.5, 0.7)");
    cmd->add_option("--kmax", f.k_max, "largest bit rank (24 for binary32 streams)")
        ->check(CLI::Range(0, 53));
    cmd->add_flag("--strict", f.strict, "exit 2 when the report carries warnings");
    if (with_format)
        cmd->add_option("--format", f.format, "text | json")
            ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("-o,--output", f.output, "output path (default stdout)");
}

AnalysisConfig config_from_flags(const AnalyzeFlags& f) {
    AnalysisConfig cfg;
    auto samples = read_samples(f.input);
    cfg.samples = std::move(samples.values);
    cfg.input_path = f.input;
    if (!f.reference_file.empty()) {
        cfg.reference_samples = read_samples(f.reference_file).values;
        cfg.reference_path = f.reference_file;
    } else if (f.reference == "mean") {
        cfg.reference_mean = true;
    } else {
        cfg.reference_scalar = parse_sample_value(f.reference);
    }
    cfg.error_kind =
        f.error_kind == "absolute" ? ErrorKind::absolute : ErrorKind::relative;
    cfg.estimators = parse_estimators(f.estimators);
    cfg.p = f.p;
    cfg.alpha = 1.0 - f.confidence;
    cfg.contribution_p = f.contribution_p;
    cfg.k_max = f.k_max;
    cfg.strict = f.strict;
    return cfg;
}

int finish_report(const SignificanceReport& rep, const AnalyzeFlags& f,
                  const std::string& content) {
    write_or_print(f.output, content);
    if (f.strict && !rep.warnings.empty()) {
        for (const auto& w : rep.warnings)
            std::cerr << "strict: " << w << "\n";
        return kExitStrictWarnings;
    }
    return kExitOk;
}

int cmd_analyze(const AnalyzeFlags& f) {
    const auto cfg = config_from_flags(f);
    const auto rep = analyze(cfg);
    return finish_report(rep, f, f.format == "json" ? to_json(rep) : to_text(rep));
}

int cmd_curves(const AnalyzeFlags& f) {
    const auto cfg = config_from_flags(f);
    const auto rep = analyze(cfg);
    return finish_report(rep, f, curves_csv(rep));
}

int cmd_sample_size(double p, double confidence) {
    std::cout << required_samples(p, 1.0 - confidence) << "\n";
    return kExitOk;
}

int cmd_tables(const std::string& which, const std::string& out_dir,
               const std::string& format) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const bool csv = format == "csv";
    const std::string ext = csv ? ".csv" : ".txt";
    if (which == "nsamples" || which == "both") {
        const auto t = make_nsamples_table(default_nsamples_spec());
        const auto path = (fs::path(out_dir) / ("nsamples" + ext)).string();
        write_or_print(path, csv ? to_csv(t) : to_text(t));
        std::cout << path << "\n";
    }
    if (which == "shift" || which == "both") {
        const auto t = make_shift_table(default_shift_spec());
        const auto path = (fs::path(out_dir) / ("shift" + ext)).string();
        write_or_print(path, csv ? to_csv(t) : to_text(t));
        std::cout << path << "\n";
    }
    return kExitOk;
}

struct DemoFlags {
    int n = 10000;
    std::string model = "mca_rr";
    int t = 52;
    std::uint64_t seed = 42;
    bool seed_given = false;
    std::string out_dir = ".";
    bool exact = false;
    double p = 0.95;
    double confidence = 0.95;
    std::string format = "text";
};

int cmd_demo_cramer(const DemoFlags& f) {
    namespace fs = std::filesystem;
    if (f.n < 1)
        throw CLI::ValidationError("--n", "need at least one sample");
    NoiseConfig cfg;
    cfg.model = noise_model_from_string(f.model);
    cfg.virtual_precision = f.t;
    cfg.seed = f.seed;
    if (!f.seed_given) {
        if (const char* env = std::getenv("SIGBITS_SEED"))
            cfg.seed = std::strtoull(env, nullptr, 10);
    }
    cfg.validate();

    fs::create_directories(f.out_dir);
    const auto [x0, x1] = cramer_sample_pair(f.n, cfg);
    const auto p0 = (fs::path(f.out_dir) / "cramer_x0.txt").string();
    const auto p1 = (fs::path(f.out_dir) / "cramer_x1.txt").string();
    write_samples(p0, x0, f.exact);
    write_samples(p1, x1, f.exact);

    AnalysisConfig acfg;
    acfg.samples = x0.values;
    acfg.reference_mean = true;
    acfg.error_kind = ErrorKind::relative;
    acfg.p = f.p;
    acfg.alpha = 1.0 - f.confidence;
    acfg.input_path = p0;
    acfg.provenance = x0.generator + " seed=" + std::to_string(cfg.seed) +
                      " t=" + std::to_string(cfg.virtual_precision);
    const auto rep = analyze(acfg);
    const auto rp = (fs::path(f.out_dir) / "cramer_report.json").string();
    write_or_print(rp, to_json(rep));

    std::cout << p0 << "\n" << p1 << "\n" << rp << "\n";
    if (f.format == "text")
        std::cout << to_text(rep);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certify significant and contributing bits of stochastic "
                 "floating-point computations"};
    app.require_subcommand(1);

    AnalyzeFlags analyze_flags;
    auto* analyze_cmd =
        app.add_subcommand("analyze", "run estimators over a sample file");
    add_analysis_flags(analyze_cmd, analyze_flags, true);

    AnalyzeFlags curves_flags;
    auto* curves_cmd =
        app.add_subcommand("curves", "emit per-bit curve data as CSV");
    add_analysis_flags(curves_cmd, curves_flags, false);

    double ss_p = 0.95, ss_conf = 0.95;
    auto* ss_cmd = app.add_subcommand("sample-size",
                                      "samples needed for an all-success certificate");
    ss_cmd->add_option("-p,--p", ss_p, "target probability")->required();
    ss_cmd->add_option("-c,--confidence", ss_conf, "confidence level")->required();

    std::string tables_which = "both", tables_out = ".", tables_format = "csv";
    auto* tables_cmd = app.add_subcommand("tables", "emit the reference tables");
    tables_cmd->add_option("--which", tables_which, "nsamples | shift | both")
        ->check(CLI::IsMember({"nsamples", "shift", "both"}));
    tables_cmd->add_option("--out", tables_out, "output directory");
    tables_cmd->add_option("--format", tables_format, "csv | text")
        ->check(CLI::IsMember({"csv", "text"}));

    DemoFlags demo;
    auto* demo_cmd = app.add_subcommand(
        "demo-cramer", "sample the ill-conditioned 2x2 benchmark and analyze it");
    demo_cmd->add_option("-n,--n", demo.n, "number of runs");
    demo_cmd->add_option("--model", demo.model,
                         "ieee | mca_rr | mca_inbound | mca_full | cestac");
    demo_cmd->add_option("-t,--t", demo.t, "virtual precision")->check(CLI::Range(1, 53));
    auto* seed_opt = demo_cmd->add_option("--seed", demo.seed,
                                          "RNG seed (SIGBITS_SEED overrides the default)");
    demo_cmd->add_option("--out", demo.out_dir, "output directory");
    demo_cmd->add_flag("--exact", demo.exact, "write samples as hex floats");
    demo_cmd->add_option("-p,--p", demo.p, "target probability");
    demo_cmd->add_option("-c,--confidence", demo.confidence, "confidence level");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(analyze_cmd))
            return cmd_analyze(analyze_flags);
        if (app.got_subcommand(curves_cmd))
            return cmd_curves(curves_flags);
        if (app.got_subcommand(ss_cmd))
            return cmd_sample_size(ss_p, ss_conf);
        if (app.got_subcommand(tables_cmd))
            return cmd_tables(tables_which, tables_out, tables_format);
        if (app.got_subcommand(demo_cmd)) {
            demo.seed_given = seed_opt->count() > 0;
            return cmd_demo_cramer(demo);
        }
    } catch (const std::exception& e) {
        std::cerr << "sigbits: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
