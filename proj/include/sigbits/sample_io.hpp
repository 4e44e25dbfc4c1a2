// Copyright (c) 2026 The sigbits authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "sigbits/error_model.hpp"

namespace sigbits {

// One value per line, UTF-8. '#' lines are comments (the writer stores
// provenance there). Values parse as decimal or C hexadecimal floats; the
// writer emits shortest round-trip decimals, or hex floats when exact is
// set. Both forms re-read bit-identically.
SampleSet read_samples(const std::string& path);
void write_samples(const std::string& path, const SampleSet& samples, bool exact_hex = false);

// Single-value parsing with the same grammar (used for CLI scalars too).
double parse_sample_value(const std::string& text);
std::string format_sample_value(double v, bool exact_hex);

}  // namespace sigbits
