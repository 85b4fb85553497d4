#include "fnls/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <vector>

#include <omp.h>

namespace fnls::kernels {

namespace {

std::atomic<Execution> g_mode{Execution::parallel};

struct Range {
    std::size_t begin;
    std::size_t end;
};

Range chunk(std::size_t n, int nthreads, int t) {
    const std::size_t q = n / static_cast<std::size_t>(nthreads);
    const std::size_t r = n % static_cast<std::size_t>(nthreads);
    const auto tt = static_cast<std::size_t>(t);
    const std::size_t begin = tt * q + std::min(tt, r);
    return {begin, begin + q + (tt < r ? 1 : 0)};
}

// Runs `partial(begin, end)` on per-thread chunks and sums the results in
// thread-index order.
template <class F>
double reduce_chunked(std::size_t n, F&& partial) {
    const int nt = omp_get_max_threads();
    if (nt <= 1 || n < 1024) return partial(std::size_t{0}, n);
    std::vector<double> parts(static_cast<std::size_t>(nt), 0.0);
#pragma omp parallel num_threads(nt)
    {
        const int t = omp_get_thread_num();
        const Range r = chunk(n, nt, t);
        parts[static_cast<std::size_t>(t)] = partial(r.begin, r.end);
    }
    double total = 0.0;
    for (double p : parts) total += p;
    return total;
}

} // namespace

Execution execution() noexcept { return g_mode.load(std::memory_order_relaxed); }
void set_execution(Execution mode) noexcept { g_mode.store(mode, std::memory_order_relaxed); }

// ---------------------------------------------------------------- serial --

namespace serial {

void multiply_real(std::span<cplx> v, std::span<const double> m) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= m[i];
}

void multiply_complex(std::span<cplx> v, std::span<const cplx> m) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= m[i];
}

void scale(std::span<cplx> v, cplx s) {
    for (auto& x : v) x *= s;
}

void add_scaled(std::span<cplx> y, cplx a, std::span<const cplx> x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

void cubic(std::span<const cplx> u, std::span<cplx> out) {
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = std::norm(u[i]) * u[i];
}

void intensity_phase_rotate(std::span<cplx> u, double a) {
    for (auto& x : u) x *= std::polar(1.0, a * std::norm(x));
}

double sum_abs2(std::span<const cplx> v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return s;
}

double sum_abs4(std::span<const cplx> v) {
    double s = 0.0;
    for (const auto& x : v) {
        const double n = std::norm(x);
        s += n * n;
    }
    return s;
}

double weighted_sum_abs2(std::span<const double> w, std::span<const cplx> v) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += w[i] * std::norm(v[i]);
    return s;
}

double dot_re(std::span<const cplx> a, std::span<const cplx> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    return s;
}

double weighted_dot_re(std::span<const double> w, std::span<const cplx> a,
                       std::span<const cplx> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += w[i] * (a[i].real() * b[i].real() + a[i].imag() * b[i].imag());
    return s;
}

double max_abs(std::span<const cplx> v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::norm(x));
    return std::sqrt(m);
}

} // namespace serial

// -------------------------------------------------------------- parallel --

namespace parallel {

void multiply_real(std::span<cplx> v, std::span<const double> m) {
    const auto n = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] *= m[static_cast<std::size_t>(i)];
}

void multiply_complex(std::span<cplx> v, std::span<const cplx> m) {
    const auto n = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] *= m[static_cast<std::size_t>(i)];
}

void scale(std::span<cplx> v, cplx s) {
    const auto n = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] *= s;
}

void add_scaled(std::span<cplx> y, cplx a, std::span<const cplx> x) {
    const auto n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        y[static_cast<std::size_t>(i)] += a * x[static_cast<std::size_t>(i)];
}

void cubic(std::span<const cplx> u, std::span<cplx> out) {
    const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto j = static_cast<std::size_t>(i);
        out[j] = std::norm(u[j]) * u[j];
    }
}

void intensity_phase_rotate(std::span<cplx> u, double a) {
    const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        auto& x = u[static_cast<std::size_t>(i)];
        x *= std::polar(1.0, a * std::norm(x));
    }
}

double sum_abs2(std::span<const cplx> v) {
    return reduce_chunked(v.size(), [&](std::size_t b, std::size_t e) {
        return serial::sum_abs2(v.subspan(b, e - b));
    });
}

double sum_abs4(std::span<const cplx> v) {
    return reduce_chunked(v.size(), [&](std::size_t b, std::size_t e) {
        return serial::sum_abs4(v.subspan(b, e - b));
    });
}

double weighted_sum_abs2(std::span<const double> w, std::span<const cplx> v) {
    return reduce_chunked(v.size(), [&](std::size_t b, std::size_t e) {
        return serial::weighted_sum_abs2(w.subspan(b, e - b), v.subspan(b, e - b));
    });
}

double dot_re(std::span<const cplx> a, std::span<const cplx> b) {
    return reduce_chunked(a.size(), [&](std::size_t bg, std::size_t e) {
        return serial::dot_re(a.subspan(bg, e - bg), b.subspan(bg, e - bg));
    });
}

double weighted_dot_re(std::span<const double> w, std::span<const cplx> a,
                       std::span<const cplx> b) {
    return reduce_chunked(a.size(), [&](std::size_t bg, std::size_t e) {
        return serial::weighted_dot_re(w.subspan(bg, e - bg), a.subspan(bg, e - bg),
                                       b.subspan(bg, e - bg));
    });
}

double max_abs(std::span<const cplx> v) {
    const int nt = omp_get_max_threads();
    if (nt <= 1 || v.size() < 1024) return serial::max_abs(v);
    std::vector<double> parts(static_cast<std::size_t>(nt), 0.0);
#pragma omp parallel num_threads(nt)
    {
        const int t = omp_get_thread_num();
        const Range r = chunk(v.size(), nt, t);
        parts[static_cast<std::size_t>(t)] = serial::max_abs(v.subspan(r.begin, r.end - r.begin));
    }
    double m = 0.0;
    for (double p : parts) m = std::max(m, p);
    return m;
}

} // namespace parallel

// -------------------------------------------------------------- dispatch --

#define FNLS_DISPATCH(fn, ...)                               \
    do {                                                     \
        if (execution() == Execution::parallel)              \
            return parallel::fn(__VA_ARGS__);                \
        return serial::fn(__VA_ARGS__);                      \
    } while (0)

void multiply_real(std::span<cplx> v, std::span<const double> m) { FNLS_DISPATCH(multiply_real, v, m); }
void multiply_complex(std::span<cplx> v, std::span<const cplx> m) { FNLS_DISPATCH(multiply_complex, v, m); }
void scale(std::span<cplx> v, cplx s) { FNLS_DISPATCH(scale, v, s); }
void add_scaled(std::span<cplx> y, cplx a, std::span<const cplx> x) { FNLS_DISPATCH(add_scaled, y, a, x); }
void cubic(std::span<const cplx> u, std::span<cplx> out) { FNLS_DISPATCH(cubic, u, out); }
void intensity_phase_rotate(std::span<cplx> u, double a) { FNLS_DISPATCH(intensity_phase_rotate, u, a); }
double sum_abs2(std::span<const cplx> v) { FNLS_DISPATCH(sum_abs2, v); }
double sum_abs4(std::span<const cplx> v) { FNLS_DISPATCH(sum_abs4, v); }
double weighted_sum_abs2(std::span<const double> w, std::span<const cplx> v) { FNLS_DISPATCH(weighted_sum_abs2, w, v); }
double dot_re(std::span<const cplx> a, std::span<const cplx> b) { FNLS_DISPATCH(dot_re, a, b); }
double weighted_dot_re(std::span<const double> w, std::span<const cplx> a, std::span<const cplx> b) { FNLS_DISPATCH(weighted_dot_re, w, a, b); }
double max_abs(std::span<const cplx> v) { FNLS_DISPATCH(max_abs, v); }

#undef FNLS_DISPATCH

} // namespace fnls::kernels
