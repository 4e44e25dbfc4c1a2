// Copyright (c) 2026 The sigbits authors
// SPDX-License-Identifier: Apache-2.0
//
// Timing harness for the data-parallel kernels: benchmark sample generation
// and per-bit trial counting, each in its serial reference form and in the
// OpenMP form, with a cross-check that both produce identical output.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sigbits/bernoulli.hpp"
#include "sigbits/error_model.hpp"
#include "sigbits/mca.hpp"

using namespace sigbits;

namespace {

template <typename F>
double time_ms(F&& f, int reps) {
    using clock = std::chrono::steady_clock;
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = clock::now();
        f();
        const auto t1 = clock::now();
        best = std::min(best,
                        std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 200000;
    const int reps = 3;

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif
    std::printf("samples: %d\n\n", n);

    NoiseConfig cfg{NoiseModel::mca_rr, 52, 42};

    SampleSet serial, parallel;
    const double gen_serial =
        time_ms([&] { serial = generate_samples_serial(Benchmark::cramer_x0, n, cfg); },
                reps);
    const double gen_parallel =
        time_ms([&] { parallel = generate_samples(Benchmark::cramer_x0, n, cfg); }, reps);
    if (serial.values != parallel.values) {
        std::fprintf(stderr, "FATAL: parallel generation diverged from the reference\n");
        return 1;
    }
    std::printf("generate_samples    serial %8.2f ms   parallel %8.2f ms   speedup %.2fx\n",
                gen_serial, gen_parallel, gen_serial / gen_parallel);

    const auto z = build_error_samples_vs_mean(serial.values, ErrorKind::relative);
    BernoulliCurves cs, cp;
    const double curve_serial =
        time_ms([&] { cs = bernoulli_curves_serial(z.z, 0.05); }, reps);
    const double curve_parallel = time_ms([&] { cp = bernoulli_curves(z.z, 0.05); }, reps);
    for (int k = 0; k <= 53; ++k) {
        if (cs.significance.entries[k].successes != cp.significance.entries[k].successes ||
            cs.contribution.entries[k].successes != cp.contribution.entries[k].successes) {
            std::fprintf(stderr, "FATAL: parallel counting diverged from the reference\n");
            return 1;
        }
    }
    std::printf("bernoulli_curves    serial %8.2f ms   parallel %8.2f ms   speedup %.2fx\n",
                curve_serial, curve_parallel, curve_serial / curve_parallel);
    return 0;
}
