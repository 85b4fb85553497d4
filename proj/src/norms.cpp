#include "fnls/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "fnls/kernels.hpp"
#include "fnls/transform.hpp"

namespace fnls {

NormBundle norms(const Field& f, const SymbolParams& params) {
    if (!f.finite()) throw std::invalid_argument("norms: non-finite field");
    const Field phys = to_physical(f);
    const Field spec = to_spectral(f);
    const double dx = f.grid.dx();
    const double dxi = f.grid.dxi();
    const auto freqs = f.grid.frequencies();

    NormBundle out;
    out.l2 = std::sqrt(kernels::sum_abs2(phys.view()) * dx);
    out.l4 = std::pow(kernels::sum_abs4(phys.view()) * dx, 0.25);

    std::vector<double> w(freqs.size());
    for (std::size_t j = 0; j < w.size(); ++j)
        w[j] = std::pow(std::abs(freqs[j]), 2.0 * params.sigma);
    out.hsigma = std::sqrt(kernels::weighted_sum_abs2(w, spec.view()) * dxi);

    for (std::size_t j = 0; j < w.size(); ++j) w[j] = freqs[j] * freqs[j];
    out.h1 = std::sqrt(kernels::weighted_sum_abs2(w, spec.view()) * dxi);

    const auto pk = symbol_table(params, f.grid);
    out.pk_half = std::sqrt(std::max(0.0, kernels::weighted_sum_abs2(pk, spec.view()) * dxi));
    return out;
}

} // namespace fnls
