#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fnls/kernels.hpp"

// The OpenMP kernels must agree with the serial reference implementations.
// Reductions may differ in summation order, hence the 1e-13 relative slack.

using namespace fnls::kernels;

namespace {

std::vector<cplx> test_vector(std::size_t n, unsigned salt) {
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(i + salt) * 0.37;
        v[i] = cplx{std::sin(1.3 * x) + 0.2, std::cos(0.7 * x) - 0.1};
    }
    return v;
}

std::vector<double> test_weights(std::size_t n) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = 0.5 + std::fmod(static_cast<double>(i) * 0.618, 2.0);
    return w;
}

} // namespace

TEST_CASE("pointwise kernels: serial vs OpenMP") {
    const std::size_t n = 4099; // odd size exercises chunking remainders
    const auto u0 = test_vector(n, 3);
    const auto w = test_weights(n);

    SUBCASE("multiply_real") {
        auto a = u0, b = u0;
        serial::multiply_real(a, w);
        parallel::multiply_real(b, w);
        for (std::size_t i = 0; i < n; ++i) CHECK(a[i] == b[i]);
    }
    SUBCASE("scale and add_scaled") {
        auto a = u0, b = u0;
        serial::scale(a, cplx{0.3, -1.1});
        parallel::scale(b, cplx{0.3, -1.1});
        for (std::size_t i = 0; i < n; ++i) CHECK(a[i] == b[i]);
        const auto x = test_vector(n, 11);
        serial::add_scaled(a, cplx{-0.7, 0.2}, x);
        parallel::add_scaled(b, cplx{-0.7, 0.2}, x);
        for (std::size_t i = 0; i < n; ++i) CHECK(a[i] == b[i]);
    }
    SUBCASE("cubic") {
        std::vector<cplx> a(n), b(n);
        serial::cubic(u0, a);
        parallel::cubic(u0, b);
        for (std::size_t i = 0; i < n; ++i) CHECK(a[i] == b[i]);
    }
    SUBCASE("intensity_phase_rotate preserves modulus") {
        auto a = u0, b = u0;
        serial::intensity_phase_rotate(a, 0.37);
        parallel::intensity_phase_rotate(b, 0.37);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(a[i] == b[i]);
            CHECK(std::abs(a[i]) == doctest::Approx(std::abs(u0[i])).epsilon(1e-14));
        }
    }
}

TEST_CASE("reductions: serial vs OpenMP") {
    for (std::size_t n : {16384ul, 16411ul}) {
        const auto u = test_vector(n, 5);
        const auto v = test_vector(n, 29);
        const auto w = test_weights(n);
        CHECK(parallel::sum_abs2(u) == doctest::Approx(serial::sum_abs2(u)).epsilon(1e-13));
        CHECK(parallel::sum_abs4(u) == doctest::Approx(serial::sum_abs4(u)).epsilon(1e-13));
        CHECK(parallel::weighted_sum_abs2(w, u) ==
              doctest::Approx(serial::weighted_sum_abs2(w, u)).epsilon(1e-13));
        CHECK(parallel::dot_re(u, v) == doctest::Approx(serial::dot_re(u, v)).epsilon(1e-12));
        CHECK(parallel::weighted_dot_re(w, u, v) ==
              doctest::Approx(serial::weighted_dot_re(w, u, v)).epsilon(1e-12));
        CHECK(parallel::max_abs(u) == serial::max_abs(u));
    }
}

TEST_CASE("dispatch respects the execution switch") {
    const auto saved = execution();
    set_execution(Execution::serial);
    CHECK(execution() == Execution::serial);
    set_execution(Execution::parallel);
    CHECK(execution() == Execution::parallel);
    const auto u = test_vector(2048, 1);
    CHECK(sum_abs2(u) == doctest::Approx(serial::sum_abs2(u)).epsilon(1e-13));
    set_execution(saved);
}
