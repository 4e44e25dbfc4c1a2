// Copyright (c) 2026 The sigbits authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace sigbits {

// Grid of required sample counts: one row per confidence level, one column
// per target probability.
struct NsamplesTable {
    std::vector<double> probabilities;  // columns, ascending
    std::vector<double> confidences;    // rows, ascending
    std::vector<std::vector<std::int64_t>> cells;
};

// Grid of centered-normality shifts: one row per sample count, one column
// per (probability, confidence) pair.
struct ShiftTable {
    std::vector<double> probabilities;  // per column
    std::vector<double> confidences;    // per column, same length
    std::vector<int> sample_sizes;      // rows, ascending
    std::vector<std::vector<double>> cells;  // full precision
};

// The published grids.
NsamplesTable default_nsamples_spec();
ShiftTable default_shift_spec();

// Fill the cells of a spec (cells may be empty on input).
NsamplesTable make_nsamples_table(NsamplesTable spec);
ShiftTable make_shift_table(ShiftTable spec);

// Renderings: CSV matches the golden-file layout; text is column aligned.
// Shift cells print with three decimals, ties to even.
std::string to_csv(const NsamplesTable& t);
std::string to_csv(const ShiftTable& t);
std::string to_text(const NsamplesTable& t);
std::string to_text(const ShiftTable& t);

// Parse tables back from the CSV layout (used against golden files).
NsamplesTable parse_nsamples_csv(const std::string& content);
ShiftTable parse_shift_csv(const std::string& content);

struct CellMismatch {
    std::string row;
    std::string column;
    double expected = 0.0;
    double actual = 0.0;
};

// Cell-by-cell comparison; integers must match exactly, shifts to within
// tol of the reference before rounding.
std::vector<CellMismatch> compare_nsamples(const NsamplesTable& computed,
                                           const NsamplesTable& reference);
std::vector<CellMismatch> compare_shift(const ShiftTable& computed,
                                        const ShiftTable& reference,
                                        double tol = 0.001);

}  // namespace sigbits
