// Compares the serial reference kernels against the OpenMP ones, plus one
// end-to-end solve in each mode. Run: ./bench_kernels [N] [repeats]

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <omp.h>

#include "fnls/kernels.hpp"
#include "fnls/random_fields.hpp"
#include "fnls/solvers.hpp"

using fnls::kernels::cplx;

namespace {

struct Timing {
    double serial_ns;
    double parallel_ns;
};

template <class F>
double time_ns(int repeats, F&& body) {
    body(); // warm up
    const double t0 = omp_get_wtime();
    for (int r = 0; r < repeats; ++r) body();
    const double t1 = omp_get_wtime();
    return (t1 - t0) / repeats * 1e9;
}

void report(const char* name, const Timing& t) {
    std::printf("%-24s serial %12.0f ns   omp %12.0f ns   speedup %5.2fx\n", name, t.serial_ns,
                t.parallel_ns, t.serial_ns / t.parallel_ns);
}

} // namespace

int main(int argc, char** argv) {
    const std::size_t n = argc > 1 ? std::stoul(argv[1]) : (1u << 20);
    const int repeats = argc > 2 ? std::stoi(argv[2]) : 20;
    std::printf("n = %zu, repeats = %d, omp_max_threads = %d\n\n", n, repeats,
                omp_get_max_threads());

    std::vector<cplx> u(n), w(n);
    std::vector<double> table(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(n);
        u[i] = cplx{std::cos(7.0 * x), std::sin(3.0 * x)};
        table[i] = 1.0 + x * x;
    }

    namespace ks = fnls::kernels::serial;
    namespace kp = fnls::kernels::parallel;

    report("multiply_real", {time_ns(repeats, [&] { ks::multiply_real(u, table); }),
                             time_ns(repeats, [&] { kp::multiply_real(u, table); })});
    report("cubic", {time_ns(repeats, [&] { ks::cubic(u, w); }),
                     time_ns(repeats, [&] { kp::cubic(u, w); })});
    report("intensity_phase_rotate",
           {time_ns(repeats, [&] { ks::intensity_phase_rotate(u, 1e-3); }),
            time_ns(repeats, [&] { kp::intensity_phase_rotate(u, 1e-3); })});
    report("sum_abs2", {time_ns(repeats, [&] { volatile double s = ks::sum_abs2(u); (void)s; }),
                        time_ns(repeats, [&] { volatile double s = kp::sum_abs2(u); (void)s; })});
    report("sum_abs4", {time_ns(repeats, [&] { volatile double s = ks::sum_abs4(u); (void)s; }),
                        time_ns(repeats, [&] { volatile double s = kp::sum_abs4(u); (void)s; })});
    report("weighted_sum_abs2",
           {time_ns(repeats, [&] { volatile double s = ks::weighted_sum_abs2(table, u); (void)s; }),
            time_ns(repeats, [&] { volatile double s = kp::weighted_sum_abs2(table, u); (void)s; })});
    report("dot_re", {time_ns(repeats, [&] { volatile double s = ks::dot_re(u, w); (void)s; }),
                      time_ns(repeats, [&] { volatile double s = kp::dot_re(u, w); (void)s; })});

    // Whole-solver comparison at a production-sized grid.
    const fnls::Grid grid{40.0 * 3.14159265358979323846, 2048};
    const auto solve_once = [&] {
        auto p = fnls::solve_traveling_profile(0.75, 1.0, grid);
        volatile double r = p.residual;
        (void)r;
    };
    fnls::kernels::set_execution(fnls::kernels::Execution::serial);
    const double solve_serial = time_ns(3, solve_once);
    fnls::kernels::set_execution(fnls::kernels::Execution::parallel);
    const double solve_parallel = time_ns(3, solve_once);
    report("solve_traveling(2048)", {solve_serial, solve_parallel});
    return 0;
}
