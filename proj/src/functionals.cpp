#include "fnls/functionals.hpp"

#include <cmath>
#include <stdexcept>

#include "fnls/kernels.hpp"
#include "fnls/transform.hpp"

namespace fnls {

FunctionalBreakdown eval_weinstein(const Field& f, double sigma, double theta) {
    if (!(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("eval_weinstein: theta must lie in (0, 1)");
    const SymbolParams params{sigma, 1.0};
    FunctionalBreakdown out;
    out.theta = theta;
    out.alpha = 1.0 / std::sqrt(sigma * (2.0 * sigma - 1.0));
    out.norms = norms(f, params);
    const double l4_4 = std::pow(out.norms.l4, 4.0);
    if (!(l4_4 > 0.0))
        throw std::invalid_argument("eval_weinstein: field has zero L^4 norm");
    out.w1 = std::pow(out.norms.l2, (4.0 * sigma - 1.0) / sigma) *
             std::pow(out.norms.pk_half, 1.0 / sigma) / l4_4;
    out.w2 = out.alpha * std::pow(out.norms.l2, 3.0) * out.norms.pk_half / l4_4;
    out.w3 = std::pow(out.w1, 1.0 - theta) * std::pow(out.w2, theta);
    out.w_total = out.w1 + out.w2 - out.w3;
    return out;
}

BracketCoefficients bracket_coefficients(const FunctionalBreakdown& w, double sigma) {
    const double theta = w.theta;
    const double q = (4.0 * sigma - 1.0) / sigma;
    const double l2_2 = w.norms.l2 * w.norms.l2;
    const double pk_2 = w.norms.pk_half * w.norms.pk_half;
    const double l4_4 = std::pow(w.norms.l4, 4.0);

    BracketCoefficients c;
    c.c_mass = (q * w.w1 + 3.0 * w.w2 - (q * (1.0 - theta) + 3.0 * theta) * w.w3) / l2_2;
    c.c_pk = (w.w1 / sigma + w.w2 - ((1.0 - theta) / sigma + theta) * w.w3) / pk_2;
    c.c_quartic = 4.0 * (w.w1 + w.w2 - w.w3) / l4_4;
    return c;
}

Field variational_gradient(const Field& f, double sigma, double theta) {
    const Field phys = to_physical(f);
    const FunctionalBreakdown w = eval_weinstein(phys, sigma, theta);
    const BracketCoefficients c = bracket_coefficients(w, sigma);

    Field pk_u = apply_multiplier(phys, symbol_table(SymbolParams{sigma, 1.0}, f.grid));
    Field cubic_u(f.grid);
    kernels::cubic(phys.view(), cubic_u.view());

    Field g = cplx{c.c_mass, 0.0} * phys;
    kernels::add_scaled(g.view(), cplx{c.c_pk, 0.0}, pk_u.view());
    kernels::add_scaled(g.view(), cplx{-c.c_quartic, 0.0}, cubic_u.view());
    return g;
}

ELCoefficients el_coefficients(const Field& f, double sigma, double theta) {
    const FunctionalBreakdown w = eval_weinstein(to_physical(f), sigma, theta);
    const BracketCoefficients c = bracket_coefficients(w, sigma);
    if (!(c.c_pk > 0.0))
        throw std::domain_error("el_coefficients: nonpositive P_1 bracket (theta too small)");
    ELCoefficients out;
    out.a = c.c_mass / c.c_pk;
    out.b = c.c_quartic / c.c_pk;
    out.omega = std::pow(out.a, 1.0 / (2.0 * sigma));
    return out;
}

double ell_function(double s, double theta) {
    if (s < 0.0) throw std::invalid_argument("ell_function: s must be nonnegative");
    if (!(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("ell_function: theta must lie in (0, 1)");
    return 1.0 + s - std::pow(s, theta);
}

double h_theta(double c, double sigma, double theta) {
    if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("h_theta: c must lie in (0, 1)");
    const double alpha = 1.0 / std::sqrt(sigma * (2.0 * sigma - 1.0));
    const double first = std::pow(c, 1.0 / (2.0 * sigma));
    const double second =
        std::sqrt(c) * std::pow(4.0 * sigma - 1.0, (1.0 - sigma) / (2.0 * sigma)) * alpha;
    return first + second - std::pow(first, 1.0 - theta) * std::pow(second, theta);
}

} // namespace fnls
