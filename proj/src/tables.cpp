// Copyright (c) 2026 The sigbits authors
// SPDX-License-Identifier: Apache-2.0

#include "sigbits/tables.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "sigbits/bernoulli.hpp"
#include "sigbits/cnh.hpp"

namespace sigbits {

namespace {

std::string num_str(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string shift_str(double v) {
    // three decimals, ties to even under the default FP rounding mode
    const double r = std::nearbyint(v * 1000.0) / 1000.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", r);
    return std::string(buf);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_num(const std::string& s, const char* what) {
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (...) {
        throw std::runtime_error(std::string("bad number in ") + what + ": '" + s + "'");
    }
}

void require_sorted(const std::vector<double>& v, const char* what) {
    if (v.empty())
        throw std::invalid_argument(std::string(what) + ": empty axis");
    for (size_t i = 1; i < v.size(); ++i)
        if (!(v[i] >= v[i - 1]))
            throw std::invalid_argument(std::string(what) + ": axis not ascending");
}

}  // namespace

NsamplesTable default_nsamples_spec() {
    NsamplesTable t;
    t.probabilities = {0.66, 0.75, 0.8, 0.85, 0.9, 0.95, 0.99, 0.995, 0.999};
    t.confidences = {0.66, 0.75, 0.8, 0.85, 0.9, 0.95, 0.99, 0.995, 0.999};
    return t;
}

ShiftTable default_shift_spec() {
    ShiftTable t;
    t.probabilities = {0.66, 0.66, 0.75, 0.75, 0.75, 0.9,  0.9,   0.9,
                       0.95, 0.95, 0.95, 0.99, 0.99, 0.99, 0.995, 0.995,
                       0.995, 0.999, 0.999};
    t.confidences = {0.66, 0.75, 0.66, 0.75, 0.9,  0.75, 0.9,   0.95,
                     0.9,  0.95, 0.99, 0.95, 0.99, 0.995, 0.99, 0.995,
                     0.999, 0.995, 0.999};
    t.sample_sizes = {3,   4,   5,   6,    8,    9,    10,   12,  14,
                      15,  20,  22,  25,   29,   30,   40,   45,  50,
                      59,  75,  90,  100,  200,  299,  300,  459, 500,
                      528, 750, 919, 1000, 1058, 1379, 5296, 6905, 10000};
    return t;
}

NsamplesTable make_nsamples_table(NsamplesTable spec) {
    require_sorted(spec.probabilities, "nsamples probabilities");
    require_sorted(spec.confidences, "nsamples confidences");
    spec.cells.assign(spec.confidences.size(), {});
    for (size_t r = 0; r < spec.confidences.size(); ++r) {
        spec.cells[r].resize(spec.probabilities.size());
        for (size_t c = 0; c < spec.probabilities.size(); ++c)
            spec.cells[r][c] =
                required_samples(spec.probabilities[c], 1.0 - spec.confidences[r]);
    }
    return spec;
}

ShiftTable make_shift_table(ShiftTable spec) {
    if (spec.probabilities.size() != spec.confidences.size())
        throw std::invalid_argument("shift table: column axes differ in length");
    if (spec.probabilities.empty() || spec.sample_sizes.empty())
        throw std::invalid_argument("shift table: empty axis");
    for (size_t i = 1; i < spec.sample_sizes.size(); ++i)
        if (spec.sample_sizes[i] <= spec.sample_sizes[i - 1])
            throw std::invalid_argument("shift table: sample sizes not ascending");
    spec.cells.assign(spec.sample_sizes.size(), {});
    for (size_t r = 0; r < spec.sample_sizes.size(); ++r) {
        spec.cells[r].resize(spec.probabilities.size());
        for (size_t c = 0; c < spec.probabilities.size(); ++c)
            spec.cells[r][c] = delta_cnh(spec.sample_sizes[r], spec.probabilities[c],
                                         1.0 - spec.confidences[c]);
    }
    return spec;
}

std::string to_csv(const NsamplesTable& t) {
    std::ostringstream os;
    os << "confidence";
    for (double p : t.probabilities)
        os << ',' << num_str(p);
    os << '\n';
    for (size_t r = 0; r < t.confidences.size(); ++r) {
        os << num_str(t.confidences[r]);
        for (auto v : t.cells[r])
            os << ',' << v;
        os << '\n';
    }
    return os.str();
}

std::string to_csv(const ShiftTable& t) {
    std::ostringstream os;
    os << "p";
    for (double p : t.probabilities)
        os << ',' << num_str(p);
    os << "\nconfidence";
    for (double c : t.confidences)
        os << ',' << num_str(c);
    os << '\n';
    for (size_t r = 0; r < t.sample_sizes.size(); ++r) {
        os << t.sample_sizes[r];
        for (double v : t.cells[r])
            os << ',' << shift_str(v);
        os << '\n';
    }
    return os.str();
}

std::string to_text(const NsamplesTable& t) {
    std::ostringstream os;
    os << "samples needed for an all-success certificate\n";
    os << "confidence \\ p";
    for (double p : t.probabilities)
        os << '\t' << num_str(p);
    os << '\n';
    for (size_t r = 0; r < t.confidences.size(); ++r) {
        os << num_str(t.confidences[r]);
        for (auto v : t.cells[r])
            os << '\t' << v;
        os << '\n';
    }
    return os.str();
}

std::string to_text(const ShiftTable& t) {
    std::ostringstream os;
    os << "shift subtracted from -log2(sigma_hat)\n";
    os << "n \\ (p, confidence)";
    for (size_t c = 0; c < t.probabilities.size(); ++c)
        os << '\t' << '(' << num_str(t.probabilities[c]) << ", "
           << num_str(t.confidences[c]) << ')';
    os << '\n';
    for (size_t r = 0; r < t.sample_sizes.size(); ++r) {
        os << t.sample_sizes[r];
        for (double v : t.cells[r])
            os << '\t' << shift_str(v);
        os << '\n';
    }
    return os.str();
}

NsamplesTable parse_nsamples_csv(const std::string& content) {
    std::istringstream is(content);
    std::string line;
    NsamplesTable t;
    if (!std::getline(is, line))
        throw std::runtime_error("nsamples csv: empty file");
    auto header = split_csv_line(line);
    for (size_t i = 1; i < header.size(); ++i)
        t.probabilities.push_back(parse_num(header[i], "nsamples header"));
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        auto parts = split_csv_line(line);
        if (parts.size() != header.size())
            throw std::runtime_error("nsamples csv: ragged row");
        t.confidences.push_back(parse_num(parts[0], "nsamples row"));
        std::vector<std::int64_t> row;
        for (size_t i = 1; i < parts.size(); ++i)
            row.push_back(static_cast<std::int64_t>(parse_num(parts[i], "nsamples cell")));
        t.cells.push_back(std::move(row));
    }
    return t;
}

ShiftTable parse_shift_csv(const std::string& content) {
    std::istringstream is(content);
    std::string line;
    ShiftTable t;
    if (!std::getline(is, line))
        throw std::runtime_error("shift csv: empty file");
    auto prow = split_csv_line(line);
    if (!std::getline(is, line))
        throw std::runtime_error("shift csv: missing confidence header");
    auto crow = split_csv_line(line);
    if (prow.size() != crow.size())
        throw std::runtime_error("shift csv: ragged headers");
    for (size_t i = 1; i < prow.size(); ++i) {
        t.probabilities.push_back(parse_num(prow[i], "shift p header"));
        t.confidences.push_back(parse_num(crow[i], "shift confidence header"));
    }
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        auto parts = split_csv_line(line);
        if (parts.size() != prow.size())
            throw std::runtime_error("shift csv: ragged row");
        t.sample_sizes.push_back(static_cast<int>(parse_num(parts[0], "shift row")));
        std::vector<double> row;
        for (size_t i = 1; i < parts.size(); ++i)
            row.push_back(parse_num(parts[i], "shift cell"));
        t.cells.push_back(std::move(row));
    }
    return t;
}

std::vector<CellMismatch> compare_nsamples(const NsamplesTable& computed,
                                           const NsamplesTable& reference) {
    std::vector<CellMismatch> out;
    if (computed.cells.size() != reference.cells.size())
        throw std::invalid_argument("compare_nsamples: shape mismatch");
    for (size_t r = 0; r < computed.cells.size(); ++r) {
        if (computed.cells[r].size() != reference.cells[r].size())
            throw std::invalid_argument("compare_nsamples: shape mismatch");
        for (size_t c = 0; c < computed.cells[r].size(); ++c) {
            if (computed.cells[r][c] != reference.cells[r][c]) {
                out.push_back({"confidence=" + num_str(computed.confidences[r]),
                               "p=" + num_str(computed.probabilities[c]),
                               static_cast<double>(reference.cells[r][c]),
                               static_cast<double>(computed.cells[r][c])});
            }
        }
    }
    return out;
}

std::vector<CellMismatch> compare_shift(const ShiftTable& computed,
                                        const ShiftTable& reference, double tol) {
    std::vector<CellMismatch> out;
    if (computed.cells.size() != reference.cells.size())
        throw std::invalid_argument("compare_shift: shape mismatch");
    for (size_t r = 0; r < computed.cells.size(); ++r) {
        if (computed.cells[r].size() != reference.cells[r].size())
            throw std::invalid_argument("compare_shift: shape mismatch");
        for (size_t c = 0; c < computed.cells[r].size(); ++c) {
            const double want = reference.cells[r][c];
            const double got = computed.cells[r][c];
            if (!(std::abs(want - got) <= tol)) {
                out.push_back({"n=" + std::to_string(computed.sample_sizes[r]),
                               "p=" + num_str(computed.probabilities[c]) +
                                   ",conf=" + num_str(computed.confidences[c]),
                               want, got});
            }
        }
    }
    return out;
}

}  // namespace sigbits
