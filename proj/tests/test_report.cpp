// Copyright (c) 2026 The sigbits authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <sstream>
#include <filesystem>
#include <json.hpp>

#include "sigbits/mca.hpp"
#include "sigbits/report.hpp"
#include "sigbits/sample_io.hpp"

using namespace sigbits;

namespace {

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("sample files round trip bit-identically") {
    NoiseConfig cfg{NoiseModel::mca_full, 30, 5};
    auto s = generate_samples(Benchmark::cramer_x0, 200, cfg);
    s.values.push_back(0.0);
    s.values.push_back(-0.0);
    s.values.push_back(0x1.fffffffffffffp+100);
    s.values.push_back(0x1.0p-1060);  // subnormal
    s.values.push_back(-3.5e-300);

    for (bool hex : {false, true}) {
        const auto path = temp_file(hex ? "sigbits_io_hex.txt" : "sigbits_io_dec.txt");
        write_samples(path.string(), s, hex);
        const auto back = read_samples(path.string());
        REQUIRE(back.values.size() == s.values.size());
        for (size_t i = 0; i < s.values.size(); ++i) {
            CHECK(std::memcmp(&back.values[i], &s.values[i], sizeof(double)) == 0);
        }
        std::filesystem::remove(path);
    }
}

TEST_CASE("sample file parsing accepts both literal forms and rejects junk") {
    CHECK(parse_sample_value("1.5") == 1.5);
    CHECK(parse_sample_value("  -0x1.8p+1 ") == -3.0);
    CHECK(parse_sample_value("1e-320") == 1e-320);
    CHECK_THROWS(parse_sample_value("1.5banana"));
    CHECK_THROWS(parse_sample_value("inf"));
    CHECK_THROWS(parse_sample_value(""));

    const auto path = temp_file("sigbits_io_bad.txt");
    {
        std::FILE* f = std::fopen(path.string().c_str(), "w");
        std::fputs("# comment\n1.0\n\nnot a number\n", f);
        std::fclose(f);
    }
    CHECK_THROWS(read_samples(path.string()));
    std::filesystem::remove(path);
    CHECK_THROWS(read_samples("/no/such/dir/missing.txt"));
}

TEST_CASE("analyze composes the estimators on benchmark samples") {
    NoiseConfig cfg{NoiseModel::mca_rr, 52, 42};
    AnalysisConfig a;
    a.samples = generate_samples(Benchmark::cramer_x0, 10000, cfg).values;
    a.reference_mean = true;
    a.p = 0.99;
    a.alpha = 0.05;

    const auto rep = analyze(a);
    REQUIRE(rep.cnh.has_value());
    REQUIRE(rep.bernoulli.has_value());
    REQUIRE(rep.legacy.has_value());
    CHECK(rep.legacy->s_mca->bits == doctest::Approx(28.48).epsilon(0.25 / 28.5));
    CHECK(rep.cnh->s_cnh.bits == doctest::Approx(27.1).epsilon(0.25 / 27.1));
    CHECK(rep.bernoulli->enough_samples);
    REQUIRE(rep.notation.has_value());
    // ceil(k + 4.318108) with k just above 28.4 keeps 33 bits, i.e. 10
    // decimal digits, and annotates with 2^-27
    CHECK(rep.notation->bits_to_keep == 33);
    CHECK(rep.notation->error_exponent == 27);
    CHECK(rep.notation->rendered.find("+/-") != std::string::npos);
}

TEST_CASE("analyze input validation") {
    AnalysisConfig a;
    a.samples = {1.0};
    a.reference_mean = true;
    CHECK_THROWS_AS(analyze(a), std::invalid_argument);

    a.samples = {1.0, 2.0};
    a.estimators.clear();
    CHECK_THROWS_AS(analyze(a), std::invalid_argument);

    AnalysisConfig b;
    b.samples = {1.0, 2.0};
    b.reference_mean = true;
    b.reference_scalar = 1.0;
    CHECK_THROWS_AS(analyze(b), std::invalid_argument);

    AnalysisConfig c;
    c.samples = {1.0, 2.0};
    CHECK_THROWS_AS(analyze(c), std::invalid_argument);  // no reference at all

    AnalysisConfig d;
    d.samples = {1.0, 2.0, 3.0};
    d.reference_samples = std::vector<double>{1.0, 2.0};
    CHECK_THROWS_AS(analyze(d), std::invalid_argument);  // length mismatch
}

TEST_CASE("analyze against a paired reference") {
    NoiseConfig cfg{NoiseModel::mca_rr, 52, 1};
    NoiseConfig cfg2{NoiseModel::mca_rr, 52, 2};
    AnalysisConfig a;
    a.samples = generate_samples(Benchmark::cramer_x0, 400, cfg).values;
    a.reference_samples = generate_samples(Benchmark::cramer_x0, 400, cfg2).values;
    a.p = 0.9;
    const auto rep = analyze(a);
    CHECK(rep.reference_description == "paired");
    // X and Y i.i.d.: the error variance doubles, costing about half a bit
    CHECK(rep.bernoulli->s_b.bits >= 24);
    CHECK(rep.bernoulli->s_b.bits <= 28);
}

TEST_CASE("analyze with an exact scalar reference reports the classical bound") {
    AnalysisConfig a;
    std::vector<double> samples(100);
    RngStream rng(2, 0);
    for (auto& v : samples) v = 2.0 + 1e-9 * normal_draw(rng);
    a.samples = samples;
    a.reference_scalar = 2.0;
    const auto rep = analyze(a);
    REQUIRE(rep.legacy.has_value());
    REQUIRE(rep.legacy->s_cestac_definition1.has_value());
    CHECK(*rep.legacy->s_cestac_definition1 > 20.0);
    CHECK(rep.reference_description == "scalar");
}

TEST_CASE("json output is deterministic, parseable, and carries the schema") {
    NoiseConfig cfg{NoiseModel::mca_rr, 52, 3};
    AnalysisConfig a;
    a.samples = generate_samples(Benchmark::cramer_x0, 500, cfg).values;
    a.reference_mean = true;
    const auto r1 = to_json(analyze(a));
    const auto r2 = to_json(analyze(a));
    CHECK(r1 == r2);
    CHECK(r1.find("timestamp") == std::string::npos);

    const auto j = nlohmann::json::parse(r1);
    CHECK(j["schema"] == "sigbits/1");
    CHECK(j["inputs"]["n"] == 500);
    CHECK(j["cnh"]["s_cnh"]["bits"].is_number());
    CHECK(j["bernoulli"]["significance_curve"].size() == 54);
    CHECK(j["legacy"].contains("s_mca"));
    CHECK(j["notation"]["rendered"].is_string());
}

TEST_CASE("curves csv layout") {
    NoiseConfig cfg{NoiseModel::mca_rr, 52, 4};
    AnalysisConfig a;
    a.samples = generate_samples(Benchmark::cramer_x0, 299, cfg).values;
    a.reference_mean = true;
    a.p = 0.99;
    const auto csv = curves_csv(analyze(a));
    CHECK(csv.rfind("k,kind,successes,trials,p_hat,p_lower", 0) == 0);
    CHECK(csv.find(",significance,") != std::string::npos);
    CHECK(csv.find(",contribution,") != std::string::npos);
    CHECK(csv.find(",cnh_significance,") != std::string::npos);

    // significance successes non-increasing down the file
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);
    long long prev = -1;
    while (std::getline(is, line)) {
        if (line.find(",significance,") == std::string::npos)
            continue;
        const auto a1 = line.find(',', line.find(',', 0) + 1);
        const auto a2 = line.find(',', a1 + 1);
        const long long succ = std::stoll(line.substr(a1 + 1, a2 - a1 - 1));
        if (prev >= 0)
            CHECK(succ <= prev);
        prev = succ;
    }
}

TEST_CASE("estimator name round trip") {
    for (auto e : {Estimator::cnh, Estimator::bernoulli, Estimator::mca, Estimator::cestac})
        CHECK(estimator_from_string(to_string(e)) == e);
    CHECK_THROWS(estimator_from_string("bogus"));
}
