#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <vector>

#include "fracdim/estimators.hpp"
#include "fracdim/generators.hpp"
#include "fracdim/reference.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

// Times the OpenMP kernels against their serial reference twins on
// representative workloads and checks that both produce identical bits.

namespace {

using namespace fracdim;

double time_median_ms(const std::function<void()>& fn, int reps) {
    std::vector<double> times;
    times.reserve(reps);
    for (int i = 0; i < reps; ++i) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        const auto stop = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = a.size() == b.size() ? 0.0 : std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        worst = std::max(worst, std::fabs(a[i] - b[i]));
    }
    return worst;
}

void report(const char* name, double serial_ms, double parallel_ms, double diff) {
    std::printf("%-24s %10.2f %10.2f %8.2fx   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, diff == 0.0 ? "bit-identical" : "DIFFERS");
}

}  // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
    const std::size_t wf_points = quick ? 20000 : 314160;
    const std::size_t path_len = quick ? 16384 : 262144;
    const int reps = quick ? 3 : 5;

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif
    std::printf("%-24s %10s %10s %9s\n", "kernel", "serial ms", "omp ms", "speedup");

    {
        const WeierstrassSpec spec{1.5, wf_points, 1021};
        TimeSeries serial, parallel;
        const double t_serial = time_median_ms([&] { serial = reference::weierstrass(spec); }, reps);
        const double t_parallel = time_median_ms([&] { parallel = weierstrass(spec); }, reps);
        report("weierstrass", t_serial, t_parallel, max_abs_diff(serial.samples, parallel.samples));
    }

    const TimeSeries path = fbm({0.5, path_len, 7});
    {
        EstimateResult serial, parallel;
        const double t_serial = time_median_ms([&] { serial = reference::higuchi(path); }, reps);
        const double t_parallel = time_median_ms([&] { parallel = higuchi(path); }, reps);
        report("higuchi", t_serial, t_parallel,
               std::fabs(serial.dimension - parallel.dimension));
    }
    {
        EstimateResult serial, parallel;
        const double t_serial = time_median_ms([&] { serial = reference::ghe(path); }, reps);
        const double t_parallel = time_median_ms([&] { parallel = ghe(path); }, reps);
        report("ghe", t_serial, t_parallel, std::fabs(serial.dimension - parallel.dimension));
    }
    {
        EstimateResult serial, parallel;
        const double t_serial = time_median_ms([&] { serial = reference::dfa(path); }, reps);
        const double t_parallel = time_median_ms([&] { parallel = dfa(path); }, reps);
        report("dfa", t_serial, t_parallel, std::fabs(serial.dimension - parallel.dimension));
    }
    return 0;
}
