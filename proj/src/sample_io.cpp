// Copyright (c) 2026 The sigbits authors
// SPDX-License-Identifier: Apache-2.0

#include "sigbits/sample_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace sigbits {

double parse_sample_value(const std::string& text) {
    size_t begin = text.find_first_not_of(" \t");
    size_t end = text.find_last_not_of(" \t\r");
    if (begin == std::string::npos)
        throw std::runtime_error("empty sample value");
    const std::string body = text.substr(begin, end - begin + 1);
    // strtod accepts both decimal and 0x... hexadecimal floats
    const char* cstr = body.c_str();
    char* stop = nullptr;
    const double v = std::strtod(cstr, &stop);
    if (stop != cstr + body.size())
        throw std::runtime_error("unparsable sample value: '" + body + "'");
    if (!std::isfinite(v))
        throw std::runtime_error("non-finite sample value: '" + body + "'");
    return v;
}

std::string format_sample_value(double v, bool exact_hex) {
    char buf[64];
    if (exact_hex) {
        char* p = buf;
        if (std::signbit(v)) {
            *p++ = '-';
            v = -v;
        }
        *p++ = '0';
        *p++ = 'x';
        const auto r = std::to_chars(p, buf + sizeof buf, v, std::chars_format::hex);
        return std::string(buf, r.ptr);
    }
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

SampleSet read_samples(const std::string& path) {
    std::ifstream in(path);
    if (!in.good())
        throw std::runtime_error("cannot open sample file: " + path);
    SampleSet s;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        try {
            s.values.push_back(parse_sample_value(line));
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return s;
}

void write_samples(const std::string& path, const SampleSet& samples, bool exact_hex) {
    std::ofstream out(path);
    if (!out.good())
        throw std::runtime_error("cannot write sample file: " + path);
    if (!samples.generator.empty())
        out << "# generator: " << samples.generator << "\n";
    if (samples.virtual_precision > 0)
        out << "# virtual_precision: " << samples.virtual_precision << "\n";
    out << "# seed: " << samples.seed << "\n";
    for (double v : samples.values)
        out << format_sample_value(v, exact_hex) << "\n";
    if (!out.good())
        throw std::runtime_error("short write: " + path);
}

}  // namespace sigbits
