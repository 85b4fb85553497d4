#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "fnls/io.hpp"
#include "fnls/random_fields.hpp"
#include "fnls/solvers.hpp"

using namespace fnls;
using std::numbers::pi;

namespace {

SolitonProfile make_profile() {
    const Grid g{40.0 * pi, 1024};
    return solve_traveling_profile(0.75, 1.0, g);
}

} // namespace

TEST_CASE("JSON round trip is bit exact") {
    const auto p = make_profile();
    std::stringstream buf;
    write_profile_json(p, buf);
    const auto q = read_profile_json(buf);

    CHECK(q.sigma == p.sigma);
    CHECK(q.omega == p.omega);
    CHECK(q.k == p.k);
    CHECK(q.residual == p.residual);
    CHECK(q.iterations == p.iterations);
    CHECK(q.method == p.method);
    CHECK(q.field.grid.half_length() == p.field.grid.half_length());
    REQUIRE(q.field.size() == p.field.size());
    for (std::size_t i = 0; i < p.field.size(); ++i) CHECK(q.field.values[i] == p.field.values[i]);
}

TEST_CASE("CSV round trip") {
    const auto p = make_profile();
    std::stringstream buf;
    write_profile_csv(p, buf);

    SUBCASE("row count is samples plus header") {
        std::size_t rows = 0, comments = 0;
        std::string line;
        std::stringstream copy(buf.str());
        while (std::getline(copy, line)) {
            if (line.starts_with("#"))
                ++comments;
            else
                ++rows;
        }
        CHECK(rows == p.field.size() + 1);
        CHECK(comments >= 8);
    }

    SUBCASE("payload and residual survive") {
        const auto q = read_profile_csv(buf);
        CHECK(q.sigma == p.sigma);
        CHECK(q.omega == p.omega);
        REQUIRE(q.field.size() == p.field.size());
        for (std::size_t i = 0; i < p.field.size(); ++i) {
            CHECK(std::abs(q.field.values[i].real() - p.field.values[i].real()) <=
                  1e-15 * std::abs(p.field.values[i].real()));
            CHECK(std::abs(q.field.values[i].imag() - p.field.values[i].imag()) <=
                  1e-15 * std::max(1.0, std::abs(p.field.values[i].imag())));
        }
        // Recomputing the defining-equation defect must reproduce the stored
        // metadata.
        CHECK(residual_norm(q) == doctest::Approx(p.residual).epsilon(1e-12));
    }
}

TEST_CASE("17-digit formatting round-trips doubles") {
    for (double v : {1.0 / 3.0, std::sqrt(2.0), 6.02e23, -1.7e-308, 0.1}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("trajectory CSV layout") {
    TrajectoryReport r;
    r.times = {0.0, 0.5};
    r.mass = {4.0, 4.0};
    r.energy = {-1.0, -1.0};
    r.momentum = {0.25, 0.25};
    r.center = {0.0, 0.75};
    r.shape_error = {0.0, 1e-4};
    r.phase = {0.0, 0.0};
    std::stringstream buf;
    write_trajectory_csv(r, buf);
    std::string header;
    std::getline(buf, header);
    CHECK(header == "t,mass,energy,momentum,center,shape_error");
    std::string row;
    std::getline(buf, row);
    CHECK(row.starts_with("0,4,"));
    std::getline(buf, row);
    CHECK(row.starts_with("0.5,4,"));
}

TEST_CASE("unwritable path reported") {
    const auto p = make_profile();
    CHECK_THROWS_AS(write_profile(p, "/nonexistent-dir/profile.json", FileFormat::json),
                    std::runtime_error);
}

TEST_CASE("diagnostics JSON uses the stable field names") {
    DiagnosticsReport rep;
    rep.sigma = 0.75;
    rep.pohozaev_defects = {1e-8, 2e-8};
    rep.c_value = 0.3;
    rep.h_curve = {{0.95, 0.8}};
    rep.gn_margin = 1e-4;
    rep.sech_linf_error = 1e-7;
    rep.interpolation_defect = 0.0;
    std::stringstream buf;
    write_diagnostics_json(rep, buf);
    const std::string s = buf.str();
    for (const char* key : {"\"pohozaev_defects\"", "\"c_value\"", "\"h_curve\"", "\"gn_margin\"",
                            "\"sech_linf_error\"", "\"interpolation_defect\""})
        CHECK(s.find(key) != std::string::npos);
}
