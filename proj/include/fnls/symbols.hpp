#pragma once

#include <utility>
#include <vector>

#include "fnls/grid.hpp"

namespace fnls {

/// Parameters of the traveling-frame dispersion symbol
///     p_k(xi) = |xi + k|^{2 sigma} - |k|^{2 sigma} - 2 sigma |k|^{2 sigma - 2} k xi.
/// k = 0 is the static special case: the symbol degenerates to |xi|^{2 sigma}
/// (the |k|^{2 sigma - 2} term has no limit, so the static operator is defined
/// directly). For k != 0 the symbol is positive definite only for
/// sigma > 1/2; sigma = 1 is admitted as the classical oracle case. The
/// static case accepts sigma in (1/4, 1], where its ground state exists.
struct SymbolParams {
    double sigma;
    double k;
    SymbolParams(double sigma_, double k_);
};

/// p_k(xi) (order 0) or its first or second derivative. The second
/// derivative is singular at xi = -k when sigma < 1; that evaluation throws.
double eval_symbol(const SymbolParams& params, double xi, int order = 0);

/// Symmetrization g(xi) = (p_1(xi) + p_1(-xi)) / 2; even in xi.
double symmetrized_g(double sigma, double xi);

/// Defect symbol of the pseudo-Galilean transformation:
///     E(xi) = |xi - v|^{2 sigma} - |xi|^{2 sigma} - |v|^{2 sigma}
///             + 2 sigma |v|^{2(sigma-1)} v xi.
/// Vanishes identically at sigma = 1 (exact Galilean invariance).
double error_symbol(double sigma, double v, double xi);

/// p_k evaluated at every grid frequency, transform-native order.
std::vector<double> symbol_table(const SymbolParams& params, const Grid& grid);

/// Numerical check of the symbol's comparability and upper bounds over a
/// grid's frequency range.
struct BoundsReport {
    /// Range of p_k(xi) / [sigma(2 sigma - 1)|k|^{2 sigma - 2} xi^2]
    /// over 0 < |xi| <= |k|/2.
    std::pair<double, double> low_freq_ratio_range;
    /// Range of p_k(xi) / |xi|^{2 sigma} over |xi| >= |k|/2 within the grid.
    std::pair<double, double> high_freq_ratio_range;
    /// max over grid frequencies of p_1(xi) - 3^{2 sigma} |xi|^{2 sigma};
    /// nonpositive when the k = 1 upper bound holds.
    double upper_bound_margin;
    /// min of p_k'' over grid frequencies (the singular node xi = -k, if on
    /// the grid, is skipped).
    double convexity_min;
};

/// Requires k != 0. Throws if convexity fails or the k = 1 upper bound is
/// violated (either would indicate a symbol evaluation bug).
BoundsReport bounds_report(const SymbolParams& params, const Grid& grid);

} // namespace fnls
