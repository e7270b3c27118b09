// Serial-vs-parallel benchmark for the data-parallel kernels: Monte Carlo
// section sampling, distribution-function level grids, and h_p u-sweeps.
// The parallel paths are block-deterministic, so the serial run doubles as
// a correctness reference (bitwise equality asserted here).

#include "lpsect/ball_inequality.hpp"
#include "lpsect/sections.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

using namespace lpsect;

namespace {

double now_s() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

void set_threads(int n) {
#ifdef _OPENMP
    omp_set_num_threads(n);
#else
    (void)n;
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace

int main(int argc, char** argv) {
    const uint64_t samples = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1000000;
    const int nthreads = max_threads();
    QuadratureSpec spec;
    spec.rel_tol = 1e-8;
    spec.abs_tol = 1e-9;

    std::printf("kernel,serial_s,parallel_s,speedup,threads,match\n");

    // Monte Carlo sampling
    {
        const PExponent p = PExponent::make(6.0);
        const Direction a = Direction::k_diagonal(3, 3);
        double t0 = now_s();
        const SectionEstimate serial = section_mc_serial(p, a, samples, 2024);
        const double ts = now_s() - t0;
        set_threads(nthreads);
        t0 = now_s();
        const SectionEstimate parallel = section_mc(p, a, samples, 2024);
        const double tp = now_s() - t0;
        std::printf("section_mc,%.3f,%.3f,%.2f,%d,%s\n", ts, tp, ts / tp, nthreads,
                    serial.value == parallel.value ? "bitwise" : "MISMATCH");
    }

    // distribution-function level grid
    {
        const PExponent p = PExponent::make(30.0);
        std::vector<double> xs;
        for (int i = 0; i <= 120; ++i)
            xs.push_back(2e-4 * std::pow(0.2 / 2e-4, i / 120.0));
        set_threads(1);
        double t0 = now_s();
        const DistributionCurve serial = distribution_F(p, xs, spec);
        const double ts = now_s() - t0;
        set_threads(nthreads);
        t0 = now_s();
        const DistributionCurve parallel = distribution_F(p, xs, spec);
        const double tp = now_s() - t0;
        std::printf("distribution_F,%.3f,%.3f,%.2f,%d,%s\n", ts, tp, ts / tp, nthreads,
                    serial.value_lo == parallel.value_lo
                            && serial.value_hi == parallel.value_hi
                        ? "bitwise"
                        : "MISMATCH");
    }

    // h_p over a u grid (cells parallelized inside each evaluation)
    {
        const PExponent p = PExponent::make(30.0);
        const std::vector<double> us{2, 3, 4, 8, 16, 64};
        set_threads(1);
        double t0 = now_s();
        std::vector<double> serial;
        for (double u : us) serial.push_back(h_p(p, u, spec).value);
        const double ts = now_s() - t0;
        set_threads(nthreads);
        t0 = now_s();
        std::vector<double> parallel;
        for (double u : us) parallel.push_back(h_p(p, u, spec).value);
        const double tp = now_s() - t0;
        std::printf("h_p_sweep,%.3f,%.3f,%.2f,%d,%s\n", ts, tp, ts / tp, nthreads,
                    serial == parallel ? "bitwise" : "MISMATCH");
    }

    return 0;
}
