#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fnls/evolution.hpp"
#include "fnls/kernels.hpp"
#include "fnls/random_fields.hpp"
#include "fnls/solvers.hpp"
#include "fnls/transform.hpp"

using namespace fnls;
using std::numbers::pi;

namespace {

Field steps(Field u, double sigma, double dt, long n) {
    for (long i = 0; i < n; ++i) u = strang_step(u, sigma, dt);
    return u;
}

} // namespace

TEST_CASE("plane waves evolve exactly") {
    const Grid g{4.0 * pi, 128};
    const double sigma = 0.75, amp = 1.3, xi0 = 2.0;
    Field u = sample(g, [&](double x) { return amp * std::polar(1.0, xi0 * x); });
    const double t = 1.0;
    const long n = 1000;
    u = steps(std::move(u), sigma, t / static_cast<double>(n), n);
    const double freq = std::pow(xi0, 2.0 * sigma) - amp * amp;
    const Field exact = sample(g, [&](double x) {
        return amp * std::polar(1.0, xi0 * x - freq * t);
    });
    CHECK(linf_norm(u - exact) <= 1e-10 * amp);
}

TEST_CASE("zero field stays zero") {
    const Grid g{4.0 * pi, 64};
    const Field u = steps(Field(g), 0.8, 1e-2, 50);
    CHECK(l2_norm(u) == 0.0);
}

TEST_CASE("second-order accuracy under step halving") {
    const Grid g{8.0 * pi, 256};
    const double sigma = 0.75, t = 0.5;
    Field u0 = random_smooth_field(g, 3);
    kernels::scale(u0.view(), cplx{0.5 / linf_norm(u0), 0.0});

    const Field ref = steps(u0, sigma, t / 4096.0, 4096);
    const Field coarse = steps(u0, sigma, t / 128.0, 128);
    const Field fine = steps(u0, sigma, t / 256.0, 256);
    const double e_coarse = l2_norm(coarse - ref);
    const double e_fine = l2_norm(fine - ref);
    CHECK(e_coarse / e_fine >= 3.0);
    CHECK(e_coarse / e_fine <= 5.5);
}

TEST_CASE("traveling initial data") {
    const Grid grid{40.0 * pi, 2048};
    const auto q1 = solve_traveling_profile(0.75, 1.0, grid);

    SUBCASE("k = 0 slice is the profile itself") {
        const auto q0 = solve_static_ground_state(0.75, 1.0, grid);
        const Field u0 = make_traveling_initial(q0);
        CHECK(l2_norm(u0 - to_physical(q0.field)) == 0.0);
    }

    SUBCASE("modulation preserves mass and shifts momentum by k * mass") {
        const Field u0 = make_traveling_initial(q1);
        const Field q = to_physical(q1.field);
        CHECK(kernels::sum_abs2(u0.view()) == doctest::Approx(kernels::sum_abs2(q.view())).epsilon(1e-14));

        const auto momentum = [&](const Field& f) {
            const Field spec = to_spectral(f);
            double m = 0.0;
            for (std::size_t j = 0; j < spec.size(); ++j)
                if (j != grid.size() / 2) m += grid.frequency(j) * std::norm(spec.values[j]);
            return m * grid.dxi();
        };
        const double mass = kernels::sum_abs2(q.view()) * grid.dx();
        CHECK(momentum(u0) ==
              doctest::Approx(momentum(q) + q1.k * mass).epsilon(1e-10));
    }
}

TEST_CASE("conservation laws on a soliton segment") {
    const Grid grid{40.0 * pi, 2048};
    const auto q1 = solve_traveling_profile(0.75, 1.0, grid);
    const Field u0 = make_traveling_initial(q1);

    EvolutionConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_final = 0.3;
    cfg.observe_every = 30;
    const auto report = evolve(u0, 0.75, cfg, &q1);

    REQUIRE(report.times.size() >= 3);
    for (std::size_t i = 1; i < report.times.size(); ++i) {
        CHECK(report.times[i] > report.times[i - 1]);
        CHECK(std::abs(report.mass[i] - report.mass[0]) <= 1e-8 * report.mass[0]);
        CHECK(std::abs(report.energy[i] - report.energy[0]) <=
              1e-6 * std::abs(report.energy[0]));
        CHECK(std::abs(report.momentum[i] - report.momentum[0]) <=
              1e-8 * std::abs(report.momentum[0]));
        CHECK(report.shape_error[i] <= 1e-3);
    }
    CHECK(report.mass.size() == report.times.size());
    CHECK(report.center.size() == report.times.size());

    // The ansatz translates at 2 sigma |k|^{2s-2} k = 1.5.
    CHECK(report.center_velocity == doctest::Approx(1.5).epsilon(0.01));
}

TEST_CASE("pseudo-Galilean boost") {
    const Grid g{20.0 * pi, 1024};

    SUBCASE("k = 0 is the identity") {
        const Field f = random_smooth_field(g, 9);
        const Field b = pseudo_galilean_boost(f, 0.75, 0.0, 0.7);
        CHECK(l2_norm(b - f) == 0.0);
    }

    SUBCASE("t = 0 is pure modulation") {
        const Field f = random_smooth_field(g, 10);
        const Field b = pseudo_galilean_boost(f, 0.75, 1.0, 0.0);
        Field expected = f;
        for (std::size_t i = 0; i < g.size(); ++i)
            expected.values[i] *= std::polar(1.0, g.node(i));
        CHECK(l2_norm(b - expected) <= 1e-12 * l2_norm(f));
    }

    SUBCASE("classical case commutes with the flow to splitting accuracy") {
        const auto q = solve_static_ground_state(1.0, 1.0, g);
        const Field u0 = to_physical(q.field);
        const double k = 0.5, t = 0.5, dt = 1e-3;
        const long n = 500;

        Field path_a = pseudo_galilean_boost(u0, 1.0, k, 0.0);
        path_a = steps(std::move(path_a), 1.0, dt, n);
        Field path_b = steps(u0, 1.0, dt, n);
        path_b = pseudo_galilean_boost(path_b, 1.0, k, t);
        const double defect = l2_norm(path_a - path_b) / l2_norm(u0);
        CHECK(defect <= 1e-4);

        // and the defect shrinks like dt^2
        Field path_a2 = pseudo_galilean_boost(u0, 1.0, k, 0.0);
        path_a2 = steps(std::move(path_a2), 1.0, dt / 2.0, 2 * n);
        Field path_b2 = steps(u0, 1.0, dt / 2.0, 2 * n);
        path_b2 = pseudo_galilean_boost(path_b2, 1.0, k, t);
        const double defect2 = l2_norm(path_a2 - path_b2) / l2_norm(u0);
        CHECK(defect2 <= 0.3 * defect);
    }
}

TEST_CASE("input validation") {
    const Grid g{4.0 * pi, 64};
    const Field f = random_smooth_field(g, 2);
    CHECK_THROWS_AS(strang_step(to_spectral(f), 0.75, 1e-3), std::invalid_argument);
    EvolutionConfig bad;
    bad.dt = -1.0;
    CHECK_THROWS_AS(evolve(f, 0.75, bad), std::invalid_argument);
    EvolutionConfig bad2;
    bad2.observe_every = 0;
    CHECK_THROWS_AS(evolve(f, 0.75, bad2), std::invalid_argument);
}
