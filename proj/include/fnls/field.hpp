#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "fnls/grid.hpp"

namespace fnls {

using cplx = std::complex<double>;

enum class Representation { physical, spectral };

/// Complex-valued function sampled on a Grid, in either physical or spectral
/// representation. Treated as an immutable value by the library: operations
/// return new Fields.
struct Field {
    Grid grid;
    std::vector<cplx> values;
    Representation rep = Representation::physical;

    Field(Grid g, Representation r = Representation::physical)
        : grid(std::move(g)), values(grid.size(), cplx{0.0, 0.0}), rep(r) {}

    Field(Grid g, std::vector<cplx> v, Representation r = Representation::physical);

    std::size_t size() const { return values.size(); }
    std::span<const cplx> view() const { return values; }
    std::span<cplx> view() { return values; }

    bool finite() const;
};

/// Samples f(x) at the grid nodes (physical representation).
Field sample(const Grid& grid, const std::function<cplx(double)>& f);
Field sample_real(const Grid& grid, const std::function<double(double)>& f);

// Value arithmetic used by the solvers and tests.
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(cplx s, const Field& f);

double l2_norm(const Field& f);       // sqrt(sum |u|^2 * measure)
double linf_norm(const Field& f);
double inner_re(const Field& a, const Field& b); // Re <a, b> with the grid measure

/// Circularly shifts physical samples by `offset` grid nodes.
Field roll(const Field& f, std::ptrdiff_t offset);

/// Relative deviation from the mirror symmetry u(-x) = u(x).
double evenness_defect(const Field& f);

} // namespace fnls
