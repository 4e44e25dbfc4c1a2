// Copyright (c) 2026 The sigbits authors
// SPDX-License-Identifier: Apache-2.0

#include "sigbits/rng.hpp"

#include "sigbits/stats.hpp"

namespace sigbits {

double normal_draw(RngStream& rng) {
    // next_unit() is in [0, 1); shift the open endpoint away from 0.
    const double u = rng.next_unit() + 0x1.0p-54;
    return normal_quantile(u);
}

}  // namespace sigbits
