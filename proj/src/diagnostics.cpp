#include "fnls/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "fnls/functionals.hpp"
#include "fnls/random_fields.hpp"
#include "fnls/transform.hpp"

namespace fnls {

std::pair<double, double> pohozaev_report(const SolitonProfile& p) {
    if (p.k != 0.0)
        throw std::invalid_argument("pohozaev_report: static ground state required");
    if (std::abs(p.omega - 1.0) > 1e-12)
        throw std::invalid_argument("pohozaev_report: identities are stated at omega = 1");
    const double s = p.sigma;
    const NormBundle nb = norms(p.field, SymbolParams{s, 0.0});
    const double l2_2 = nb.l2 * nb.l2;
    const double target_h = l2_2 / (4.0 * s - 1.0);
    const double target_4 = 4.0 * s * l2_2 / (4.0 * s - 1.0);
    const double d1 = std::abs(nb.hsigma * nb.hsigma - target_h) / target_h;
    const double d2 = std::abs(std::pow(nb.l4, 4.0) - target_4) / target_4;
    return {d1, d2};
}

ConcentrationReport concentration_constants(const SolitonProfile& static_profile,
                                            std::span<const double> theta_samples) {
    if (static_profile.k != 0.0)
        throw std::invalid_argument("concentration_constants: static ground state required");
    const double s = static_profile.sigma;
    if (!(s > 0.5 && s < 1.0))
        throw std::invalid_argument("concentration_constants: sigma must lie in (0.5, 1)");

    const NormBundle nb = norms(static_profile.field, SymbolParams{s, 1.0});
    const double hs2 = nb.hsigma * nb.hsigma;
    if (!(hs2 > 0.0)) throw std::invalid_argument("concentration_constants: zero field");

    ConcentrationReport out;
    out.c = nb.pk_half * nb.pk_half / hs2;
    if (!(out.c > 0.0 && out.c < 1.0))
        throw std::runtime_error(
            "concentration_constants: c outside (0, 1) — resolution failure or symbol bug");

    double h_min = 1e300;
    for (double th : theta_samples) {
        const double h = h_theta(out.c, s, th);
        out.h_curve.emplace_back(th, h);
        h_min = std::min(h_min, h);
    }
    if (!theta_samples.empty() && !(h_min < 1.0))
        throw std::runtime_error("concentration_constants: h(theta) never drops below 1");

    if (static_profile.evenness < 1e-6) {
        out.c_upper_bound_checked = true;
        out.c_upper_bound_margin = out.c - (std::pow(2.0, 2.0 * s - 1.0) - 1.0);
    }
    return out;
}

double gn_minimality(const SolitonProfile& minimizer, int trials, std::uint64_t seed) {
    const double s = minimizer.sigma;
    const double theta = minimizer.theta.value_or(0.95);
    const double w_min = eval_weinstein(minimizer.field, s, theta).w_total;
    double margin = 1e300;
    for (int i = 0; i < trials; ++i) {
        const Field u = random_smooth_field(minimizer.field.grid, seed + static_cast<std::uint64_t>(i));
        margin = std::min(margin, eval_weinstein(u, s, theta).w_total - w_min);
    }
    return margin;
}

namespace {

double sigma_quotient(const NormBundle& nb, double sigma) {
    return std::pow(nb.l2, (4.0 * sigma - 1.0) / sigma) * std::pow(nb.hsigma, 1.0 / sigma) /
           std::pow(nb.l4, 4.0);
}

double sech_linf(const SolitonProfile& classical) {
    const Field q = to_physical(classical.field);
    double worst = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double exact = std::sqrt(2.0) / std::cosh(q.grid.node(i));
        worst = std::max(worst, std::abs(q.values[i].real() - exact) + std::abs(q.values[i].imag()));
    }
    return worst / std::sqrt(2.0);
}

} // namespace

CrossSigmaReport cross_sigma_comparison(double sigma, const Grid& grid, const SolverOptions& opts) {
    if (!(sigma > 0.5 && sigma < 1.0))
        throw std::invalid_argument("cross_sigma_comparison: sigma must lie in (0.5, 1)");
    const SolitonProfile q_frac = solve_static_ground_state(sigma, 1.0, grid, opts);
    const SolitonProfile q_clas = solve_static_ground_state(1.0, 1.0, grid, opts);

    const NormBundle nb_clas = norms(q_clas.field, SymbolParams{sigma, 0.0});
    const NormBundle nb_frac = norms(q_frac.field, SymbolParams{sigma, 0.0});

    CrossSigmaReport out;
    out.interpolation_defect =
        std::max(0.0, nb_clas.hsigma * nb_clas.hsigma -
                          std::pow(nb_clas.l2, 2.0 - 2.0 * sigma) * std::pow(nb_clas.h1, 2.0 * sigma));
    out.quotient_of_classical = sigma_quotient(nb_clas, sigma);
    out.quotient_of_fractional = sigma_quotient(nb_frac, sigma);
    out.gap = out.quotient_of_classical - out.quotient_of_fractional;
    out.sech_linf_error = sech_linf(q_clas);
    return out;
}

DiagnosticsReport run_diagnostics(double sigma, const Grid& grid, const CheckSettings& settings) {
    DiagnosticsReport rep;
    rep.sigma = sigma;

    const SolitonProfile q_static = solve_static_ground_state(sigma, 1.0, grid, settings.solver);
    rep.static_residual = q_static.residual;
    rep.pohozaev_defects = pohozaev_report(q_static);

    std::vector<double> thetas;
    for (int i = 0; i <= 20; ++i) thetas.push_back(0.9 + 0.099 * static_cast<double>(i) / 20.0);
    const ConcentrationReport conc = concentration_constants(q_static, thetas);
    rep.c_value = conc.c;
    rep.h_curve = conc.h_curve;
    rep.c_upper_bound_margin = conc.c_upper_bound_margin;
    rep.c_upper_bound_checked = conc.c_upper_bound_checked;

    SolverOptions flow_opts = settings.solver;
    flow_opts.residual_tol = std::max(settings.solver.residual_tol, 1e-9);
    const SolitonProfile minimizer =
        gradient_flow_minimize(sigma, settings.theta, grid, flow_opts);
    rep.gn_margin = gn_minimality(minimizer, settings.gn_trials, settings.seed);

    const SolitonProfile q_trav =
        solve_traveling_profile(sigma, minimizer.omega, grid, settings.solver);
    rep.traveling_residual = q_trav.residual;
    rep.minimizer_agreement =
        l2_norm(to_physical(minimizer.field) - to_physical(q_trav.field)) / l2_norm(q_trav.field);

    const CrossSigmaReport cross = cross_sigma_comparison(sigma, grid, settings.solver);
    rep.interpolation_defect = cross.interpolation_defect;
    rep.quotient_gap = cross.gap;
    rep.sech_linf_error = cross.sech_linf_error;

    double h_min = 1e300;
    for (const auto& [th, h] : rep.h_curve) h_min = std::min(h_min, h);

    rep.passed = rep.pohozaev_defects.first <= 1e-6 && rep.pohozaev_defects.second <= 1e-6 &&
                 rep.c_value > 0.0 && rep.c_value < 1.0 && h_min < 1.0 &&
                 rep.gn_margin >= -1e-9 && *rep.sech_linf_error <= 1e-6 &&
                 rep.interpolation_defect <= 1e-10 && rep.quotient_gap > 0.0 &&
                 rep.static_residual <= 1e-8 && rep.traveling_residual <= 1e-8 &&
                 rep.minimizer_agreement <= 1e-5;
    return rep;
}

} // namespace fnls
