#include "fnls/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fnls {

namespace {

// |x|^{2 sigma - 2} x written as sign(x) |x|^{2 sigma - 1}, which has the
// correct limit 0 at x = 0 for sigma > 1/2.
double signed_pow_2sm1(double x, double sigma) {
    if (x == 0.0) return 0.0;
    return std::copysign(std::pow(std::abs(x), 2.0 * sigma - 1.0), x);
}

} // namespace

SymbolParams::SymbolParams(double sigma_, double k_) : sigma(sigma_), k(k_) {
    if (!std::isfinite(sigma) || !std::isfinite(k))
        throw std::invalid_argument("SymbolParams: non-finite parameter");
    if (k == 0.0) {
        if (!(sigma > 0.25 && sigma <= 1.0))
            throw std::invalid_argument("SymbolParams: static case needs sigma in (0.25, 1]");
    } else if (!(sigma > 0.5 && sigma <= 1.0)) {
        throw std::invalid_argument(
            "SymbolParams: sigma must lie in (0.5, 1]; the symbol degenerates otherwise");
    }
}

double eval_symbol(const SymbolParams& params, double xi, int order) {
    const double s = params.sigma;
    const double k = params.k;
    if (k == 0.0) {
        switch (order) {
        case 0: return std::pow(std::abs(xi), 2.0 * s);
        case 1: return 2.0 * s * signed_pow_2sm1(xi, s);
        case 2:
            if (xi == 0.0 && s < 1.0)
                throw std::domain_error("eval_symbol: second derivative singular at xi = -k");
            return 2.0 * s * (2.0 * s - 1.0) * std::pow(std::abs(xi), 2.0 * s - 2.0);
        default: throw std::invalid_argument("eval_symbol: order must be 0, 1 or 2");
        }
    }
    const double a = std::abs(xi + k);
    switch (order) {
    case 0:
        return std::pow(a, 2.0 * s) - std::pow(std::abs(k), 2.0 * s) -
               2.0 * s * signed_pow_2sm1(k, s) * xi;
    case 1:
        return 2.0 * s * (signed_pow_2sm1(xi + k, s) - signed_pow_2sm1(k, s));
    case 2:
        if (a == 0.0 && s < 1.0)
            throw std::domain_error("eval_symbol: second derivative singular at xi = -k");
        return 2.0 * s * (2.0 * s - 1.0) * std::pow(a, 2.0 * s - 2.0);
    default:
        throw std::invalid_argument("eval_symbol: order must be 0, 1 or 2");
    }
}

double symmetrized_g(double sigma, double xi) {
    const double a = std::abs(xi);
    // Linear terms of p_1(xi) and p_1(-xi) cancel.
    return 0.5 * (std::pow(std::abs(a + 1.0), 2.0 * sigma) +
                  std::pow(std::abs(a - 1.0), 2.0 * sigma)) -
           1.0;
}

double error_symbol(double sigma, double v, double xi) {
    return std::pow(std::abs(xi - v), 2.0 * sigma) - std::pow(std::abs(xi), 2.0 * sigma) -
           std::pow(std::abs(v), 2.0 * sigma) + 2.0 * sigma * signed_pow_2sm1(v, sigma) * xi;
}

std::vector<double> symbol_table(const SymbolParams& params, const Grid& grid) {
    const auto freqs = grid.frequencies();
    std::vector<double> table(freqs.size());
    for (std::size_t j = 0; j < freqs.size(); ++j) table[j] = eval_symbol(params, freqs[j], 0);
    return table;
}

BoundsReport bounds_report(const SymbolParams& params, const Grid& grid) {
    if (params.k == 0.0)
        throw std::invalid_argument("bounds_report: k must be nonzero");
    const double s = params.sigma;
    const double k = params.k;
    const double low_scale = s * (2.0 * s - 1.0) * std::pow(std::abs(k), 2.0 * s - 2.0);
    const SymbolParams unit{s, 1.0};
    const double three_pow = std::pow(3.0, 2.0 * s);

    constexpr double inf = std::numeric_limits<double>::infinity();
    BoundsReport report{{inf, -inf}, {inf, -inf}, -inf, inf};

    for (double xi : grid.frequencies()) {
        if (xi != 0.0) {
            const double p1 = eval_symbol(unit, xi, 0);
            report.upper_bound_margin =
                std::max(report.upper_bound_margin, p1 - three_pow * std::pow(std::abs(xi), 2.0 * s));

            const double p = eval_symbol(params, xi, 0);
            if (std::abs(xi) <= std::abs(k) / 2.0) {
                const double r = p / (low_scale * xi * xi);
                report.low_freq_ratio_range.first = std::min(report.low_freq_ratio_range.first, r);
                report.low_freq_ratio_range.second = std::max(report.low_freq_ratio_range.second, r);
            }
            if (std::abs(xi) >= std::abs(k) / 2.0) {
                const double r = p / std::pow(std::abs(xi), 2.0 * s);
                report.high_freq_ratio_range.first = std::min(report.high_freq_ratio_range.first, r);
                report.high_freq_ratio_range.second = std::max(report.high_freq_ratio_range.second, r);
            }
        }
        if (xi + k != 0.0 || s == 1.0)
            report.convexity_min = std::min(report.convexity_min, eval_symbol(params, xi, 2));
    }

    if (report.convexity_min < 0.0)
        throw std::runtime_error("bounds_report: convexity violated");
    if (report.upper_bound_margin > 1e-10)
        throw std::runtime_error("bounds_report: k = 1 upper bound violated");
    return report;
}

} // namespace fnls
