#include "fnls/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fnls {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

} // namespace

Grid::Grid(double half_length, std::size_t n_points) {
    if (!(half_length > 0.0) || !std::isfinite(half_length))
        throw std::invalid_argument("Grid: half_length must be positive and finite");
    if (n_points < 16)
        throw std::invalid_argument("Grid: need at least 16 points");
    if (!is_power_of_two(n_points))
        throw std::invalid_argument("Grid: n_points must be a power of two");

    auto impl = std::make_shared<Impl>();
    impl->half_length = half_length;
    impl->dx = 2.0 * half_length / static_cast<double>(n_points);
    impl->dxi = std::numbers::pi / half_length;
    impl->nodes.resize(n_points);
    impl->frequencies.resize(n_points);
    const auto n = static_cast<std::ptrdiff_t>(n_points);
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        impl->nodes[static_cast<std::size_t>(i)] =
            -half_length + static_cast<double>(i) * impl->dx;
        const std::ptrdiff_t m = i < n / 2 ? i : i - n;
        impl->frequencies[static_cast<std::size_t>(i)] =
            impl->dxi * static_cast<double>(m);
    }
    impl_ = std::move(impl);
}

} // namespace fnls
