#include "fnls/field.hpp"

#include <cmath>
#include <stdexcept>

#include "fnls/kernels.hpp"

namespace fnls {

Field::Field(Grid g, std::vector<cplx> v, Representation r)
    : grid(std::move(g)), values(std::move(v)), rep(r) {
    if (values.size() != grid.size())
        throw std::invalid_argument("Field: sample count does not match grid");
}

bool Field::finite() const {
    for (const auto& z : values)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

Field sample(const Grid& grid, const std::function<cplx(double)>& f) {
    Field out(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) out.values[i] = f(grid.node(i));
    return out;
}

Field sample_real(const Grid& grid, const std::function<double(double)>& f) {
    Field out(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) out.values[i] = cplx{f(grid.node(i)), 0.0};
    return out;
}

namespace {

void check_compatible(const Field& a, const Field& b) {
    if (!(a.grid == b.grid) || a.rep != b.rep)
        throw std::invalid_argument("Field: incompatible operands");
}

} // namespace

Field operator+(const Field& a, const Field& b) {
    check_compatible(a, b);
    Field out = a;
    kernels::add_scaled(out.view(), cplx{1.0, 0.0}, b.view());
    return out;
}

Field operator-(const Field& a, const Field& b) {
    check_compatible(a, b);
    Field out = a;
    kernels::add_scaled(out.view(), cplx{-1.0, 0.0}, b.view());
    return out;
}

Field operator*(cplx s, const Field& f) {
    Field out = f;
    kernels::scale(out.view(), s);
    return out;
}

double l2_norm(const Field& f) {
    const double measure = f.rep == Representation::physical ? f.grid.dx() : f.grid.dxi();
    return std::sqrt(kernels::sum_abs2(f.view()) * measure);
}

double linf_norm(const Field& f) { return kernels::max_abs(f.view()); }

double inner_re(const Field& a, const Field& b) {
    check_compatible(a, b);
    const double measure = a.rep == Representation::physical ? a.grid.dx() : a.grid.dxi();
    return kernels::dot_re(a.view(), b.view()) * measure;
}

Field roll(const Field& f, std::ptrdiff_t offset) {
    if (f.rep != Representation::physical)
        throw std::invalid_argument("roll: physical representation required");
    const auto n = static_cast<std::ptrdiff_t>(f.size());
    Field out(f.grid, f.rep);
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        std::ptrdiff_t j = (i + offset) % n;
        if (j < 0) j += n;
        out.values[static_cast<std::size_t>(j)] = f.values[static_cast<std::size_t>(i)];
    }
    return out;
}

double evenness_defect(const Field& f) {
    if (f.rep != Representation::physical)
        throw std::invalid_argument("evenness_defect: physical representation required");
    const std::size_t n = f.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i == 0 ? 0 : n - i; // index of -x_i
        num += std::norm(f.values[i] - f.values[j]);
        den += std::norm(f.values[i]);
    }
    if (den == 0.0) return 0.0;
    return std::sqrt(num / den);
}

} // namespace fnls
