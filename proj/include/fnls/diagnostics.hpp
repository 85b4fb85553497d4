#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fnls/solvers.hpp"

namespace fnls {

/// Relative defects of the two ground-state integral identities
///     ||Q||_{Hdot^s}^2 = ||Q||_{L^2}^2 / (4s - 1),
///     ||Q||_{L^4}^4    = 4s ||Q||_{L^2}^2 / (4s - 1).
/// Requires a static (k = 0) profile at omega = 1.
std::pair<double, double> pohozaev_report(const SolitonProfile& p);

/// The frequency-splitting constant c = ||P_1^{1/2} Q||^2 / || |grad|^s Q ||^2
/// of a static ground state, plus the curve theta -> h(theta, c). Asserts
/// 0 < c < 1 and min h < 1 (throws otherwise).
struct ConcentrationReport {
    double c = 0.0;
    std::vector<std::pair<double, double>> h_curve;
    /// c - (2^{2s-1} - 1); meaningful for even profiles, where the
    /// symmetrized-symbol argument applies. Not asserted here.
    double c_upper_bound_margin = 0.0;
    bool c_upper_bound_checked = false;
};

ConcentrationReport concentration_constants(const SolitonProfile& static_profile,
                                            std::span<const double> theta_samples);

/// min over `trials` seeded random smooth fields u of W(u) - W(minimizer).
/// Nonnegative (up to roundoff) when the profile really is the minimizer.
double gn_minimality(const SolitonProfile& minimizer, int trials, std::uint64_t seed);

/// Comparison of the sigma-quotient evaluated on the classical (sigma = 1)
/// ground state against the fractional one, plus the frequency-interpolation
/// defect of the classical profile.
struct CrossSigmaReport {
    double interpolation_defect = 0.0; // max(0, hs^2 - l2^{2-2s} h1^{2s}) for Q_(1)
    double quotient_of_classical = 0.0;
    double quotient_of_fractional = 0.0;
    double gap = 0.0; // classical minus fractional; strictly positive
    double sech_linf_error = 0.0;
};

CrossSigmaReport cross_sigma_comparison(double sigma, const Grid& grid,
                                        const SolverOptions& opts = {});

/// Everything the `check` command reports for one sigma.
struct DiagnosticsReport {
    double sigma = 0.0;
    std::pair<double, double> pohozaev_defects;
    double c_value = 0.0;
    std::vector<std::pair<double, double>> h_curve;
    double gn_margin = 0.0;
    std::optional<double> sech_linf_error;
    double interpolation_defect = 0.0;
    double c_upper_bound_margin = 0.0;
    bool c_upper_bound_checked = false;
    double quotient_gap = 0.0;
    double static_residual = 0.0;
    double traveling_residual = 0.0;
    double minimizer_agreement = 0.0; // orbit distance petviashvili vs flow
    bool passed = false;
};

struct CheckSettings {
    double theta = 0.95;
    int gn_trials = 100;
    std::uint64_t seed = 2024;
    SolverOptions solver;
};

DiagnosticsReport run_diagnostics(double sigma, const Grid& grid, const CheckSettings& settings);

} // namespace fnls
