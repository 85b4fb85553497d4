#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace fnls {

/// Uniform periodic grid on [-L, L) together with its discrete frequency set.
///
/// Nodes are x_i = -L + i*dx with dx = 2L/N. Frequencies are stored in
/// transform-native order: index j maps to the integer mode m = j for
/// j < N/2 and m = j - N otherwise, with xi_j = (pi/L)*m. Copies are cheap
/// (shared immutable state).
class Grid {
public:
    Grid(double half_length, std::size_t n_points);

    double half_length() const { return impl_->half_length; }
    std::size_t size() const { return impl_->nodes.size(); }
    double dx() const { return impl_->dx; }
    /// Frequency spacing pi/L (the spectral measure).
    double dxi() const { return impl_->dxi; }
    double nyquist() const { return impl_->dxi * static_cast<double>(size() / 2); }

    std::span<const double> nodes() const { return impl_->nodes; }
    std::span<const double> frequencies() const { return impl_->frequencies; }

    double node(std::size_t i) const { return impl_->nodes[i]; }
    double frequency(std::size_t j) const { return impl_->frequencies[j]; }

    /// Index of the node closest to x = 0 (exactly N/2 on this layout).
    std::size_t center_index() const { return size() / 2; }

    bool operator==(const Grid& other) const {
        return impl_ == other.impl_ ||
               (impl_->half_length == other.impl_->half_length &&
                impl_->nodes.size() == other.impl_->nodes.size());
    }

private:
    struct Impl {
        double half_length;
        double dx;
        double dxi;
        std::vector<double> nodes;
        std::vector<double> frequencies;
    };
    std::shared_ptr<const Impl> impl_;
};

} // namespace fnls
