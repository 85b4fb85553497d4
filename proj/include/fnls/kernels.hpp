#pragma once

#include <complex>
#include <span>

// Data-parallel inner loops used throughout the library. Every kernel has a
// serial reference implementation and an OpenMP one; the active mode is a
// process-wide switch. Reductions are chunked per thread and combined in
// thread order, so results are reproducible run to run for a fixed thread
// count (serial and parallel sums may differ in the last ulps).

namespace fnls::kernels {

using cplx = std::complex<double>;

enum class Execution { serial, parallel };

Execution execution() noexcept;
void set_execution(Execution mode) noexcept;

// Pointwise kernels (in place unless noted).
void multiply_real(std::span<cplx> v, std::span<const double> m);
void multiply_complex(std::span<cplx> v, std::span<const cplx> m);
void scale(std::span<cplx> v, cplx s);
void add_scaled(std::span<cplx> y, cplx a, std::span<const cplx> x); // y += a*x
void cubic(std::span<const cplx> u, std::span<cplx> out);            // |u|^2 u
void intensity_phase_rotate(std::span<cplx> u, double a);            // u *= exp(i a |u|^2)

// Reductions.
double sum_abs2(std::span<const cplx> v);
double sum_abs4(std::span<const cplx> v);
double weighted_sum_abs2(std::span<const double> w, std::span<const cplx> v);
double dot_re(std::span<const cplx> a, std::span<const cplx> b); // Re sum conj(a)*b
double weighted_dot_re(std::span<const double> w, std::span<const cplx> a,
                       std::span<const cplx> b);
double max_abs(std::span<const cplx> v);

// Serial reference implementations, kept callable for tests and benchmarks.
namespace serial {
void multiply_real(std::span<cplx> v, std::span<const double> m);
void multiply_complex(std::span<cplx> v, std::span<const cplx> m);
void scale(std::span<cplx> v, cplx s);
void add_scaled(std::span<cplx> y, cplx a, std::span<const cplx> x);
void cubic(std::span<const cplx> u, std::span<cplx> out);
void intensity_phase_rotate(std::span<cplx> u, double a);
double sum_abs2(std::span<const cplx> v);
double sum_abs4(std::span<const cplx> v);
double weighted_sum_abs2(std::span<const double> w, std::span<const cplx> v);
double dot_re(std::span<const cplx> a, std::span<const cplx> b);
double weighted_dot_re(std::span<const double> w, std::span<const cplx> a,
                       std::span<const cplx> b);
double max_abs(std::span<const cplx> v);
} // namespace serial

// OpenMP implementations.
namespace parallel {
void multiply_real(std::span<cplx> v, std::span<const double> m);
void multiply_complex(std::span<cplx> v, std::span<const cplx> m);
void scale(std::span<cplx> v, cplx s);
void add_scaled(std::span<cplx> y, cplx a, std::span<const cplx> x);
void cubic(std::span<const cplx> u, std::span<cplx> out);
void intensity_phase_rotate(std::span<cplx> u, double a);
double sum_abs2(std::span<const cplx> v);
double sum_abs4(std::span<const cplx> v);
double weighted_sum_abs2(std::span<const double> w, std::span<const cplx> v);
double dot_re(std::span<const cplx> a, std::span<const cplx> b);
double weighted_dot_re(std::span<const double> w, std::span<const cplx> a,
                       std::span<const cplx> b);
double max_abs(std::span<const cplx> v);
} // namespace parallel

} // namespace fnls::kernels
