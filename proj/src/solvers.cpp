#include "fnls/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fnls/kernels.hpp"
#include "fnls/transform.hpp"

namespace fnls {

namespace {

Field default_guess(const Grid& grid) {
    return sample_real(grid, [](double x) { return std::exp(-x * x); });
}

// Global phase and translation gauge: peak sample real positive, located at
// the node nearest x = 0.
void fix_gauge(Field& f) {
    const std::size_t n = f.size();
    std::size_t peak = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::norm(f.values[i]);
        if (a > best) {
            best = a;
            peak = i;
        }
    }
    const auto shift =
        static_cast<std::ptrdiff_t>(f.grid.center_index()) - static_cast<std::ptrdiff_t>(peak);
    if (shift != 0) f = roll(f, shift);
    const cplx v = f.values[f.grid.center_index()];
    const double mag = std::abs(v);
    if (mag > 0.0) kernels::scale(f.view(), std::conj(v) / mag);
}

double imag_fraction_of(const Field& f) {
    double im = 0.0, tot = 0.0;
    for (const auto& z : f.values) {
        im += z.imag() * z.imag();
        tot += std::norm(z);
    }
    return tot > 0.0 ? std::sqrt(im / tot) : 0.0;
}

void finish_profile(SolitonProfile& p) {
    fix_gauge(p.field);
    p.imag_fraction = imag_fraction_of(p.field);
    p.evenness = evenness_defect(p.field);
    p.residual = residual_norm(p);
}

void validate_options(const SolverOptions& opts) {
    if (!(opts.residual_tol > 0.0)) throw std::invalid_argument("SolverOptions: residual_tol <= 0");
    if (!(opts.petviashvili_gamma > 1.0 && opts.petviashvili_gamma < 2.0))
        throw std::invalid_argument("SolverOptions: gamma must lie in (1, 2)");
    if (!(opts.damping > 0.0 && opts.damping <= 1.0))
        throw std::invalid_argument("SolverOptions: damping must lie in (0, 1]");
    if (!(opts.flow_step > 0.0)) throw std::invalid_argument("SolverOptions: flow_step <= 0");
    if (opts.max_iterations < 1) throw std::invalid_argument("SolverOptions: max_iterations < 1");
}

// Stabilized fixed-point iteration for (P + omega^{2s}) u = |u|^2 u with the
// standard normalization quotient M = <(P + omega^{2s})u, u> / <|u|^2 u, u>.
SolitonProfile petviashvili(double sigma, double omega, double k, const Grid& grid,
                            const SolverOptions& opts) {
    validate_options(opts);
    if (!(omega > 0.0)) throw std::invalid_argument("petviashvili: omega must be positive");
    const SymbolParams params{sigma, k};
    const double omega_pow = std::pow(omega, 2.0 * sigma);

    std::vector<double> lin = symbol_table(params, grid);
    std::vector<double> inv_lin(lin.size());
    for (std::size_t j = 0; j < lin.size(); ++j) {
        lin[j] += omega_pow;
        inv_lin[j] = 1.0 / lin[j];
    }

    Field u = opts.initial_guess ? to_physical(*opts.initial_guess) : default_guess(grid);
    if (!(u.grid == grid)) throw std::invalid_argument("petviashvili: guess grid mismatch");
    const double dx = grid.dx();
    const double dxi = grid.dxi();

    SolitonProfile out{Field(grid), sigma, omega, k, 0.0, 0, SolveMethod::petviashvili};
    for (int iter = 1; iter <= opts.max_iterations; ++iter) {
        Field w(grid);
        kernels::cubic(u.view(), w.view());
        Field u_hat = to_spectral(u);
        Field w_hat = to_spectral(w);

        const double l2u = std::sqrt(kernels::sum_abs2(u_hat.view()) * dxi);
        const double quad = kernels::weighted_sum_abs2(lin, u_hat.view()) * dxi;
        const double quartic = kernels::sum_abs4(u.view()) * dx;
        if (!(quartic > 0.0) || !std::isfinite(quad) || l2u < 1e-14)
            throw ConvergenceError("petviashvili: iterate collapsed to zero");
        const double m = quad / quartic;

        // Residual of the current iterate, measured spectrally.
        double defect2 = 0.0;
        for (std::size_t j = 0; j < lin.size(); ++j)
            defect2 += std::norm(lin[j] * u_hat.values[j] - w_hat.values[j]);
        const double rel_res = std::sqrt(defect2 * dxi) / l2u;
        if (rel_res <= opts.residual_tol) {
            out.field = std::move(u);
            out.iterations = iter - 1;
            finish_profile(out);
            return out;
        }

        const double gain = std::pow(m, opts.petviashvili_gamma);
        for (std::size_t j = 0; j < lin.size(); ++j)
            w_hat.values[j] *= gain * inv_lin[j];
        Field next = transform(w_hat, Direction::inverse);
        if (opts.damping < 1.0) {
            kernels::scale(next.view(), cplx{opts.damping, 0.0});
            kernels::add_scaled(next.view(), cplx{1.0 - opts.damping, 0.0}, u.view());
        }
        u = std::move(next);
        if (!u.finite()) throw ConvergenceError("petviashvili: iterate became non-finite");
    }
    throw ConvergenceError("petviashvili: no convergence within max_iterations");
}

} // namespace

double residual_norm(const SolitonProfile& p) {
    const Field u = to_physical(p.field);
    const double l2u = l2_norm(u);
    if (!(l2u > 0.0)) throw std::invalid_argument("residual_norm: zero field");
    const SymbolParams params{p.sigma, p.k};
    const double omega_pow = std::pow(p.omega, 2.0 * p.sigma);
    std::vector<double> lin = symbol_table(params, p.field.grid);
    for (auto& v : lin) v += omega_pow;
    Field lu = apply_multiplier(u, lin);
    Field w(u.grid);
    kernels::cubic(u.view(), w.view());
    return l2_norm(lu - w) / l2u;
}

SolitonProfile solve_static_ground_state(double sigma, double omega, const Grid& grid,
                                         const SolverOptions& opts) {
    if (!(sigma > 0.25 && sigma <= 1.0))
        throw std::invalid_argument("solve_static_ground_state: sigma must lie in (0.25, 1]");
    return petviashvili(sigma, omega, 0.0, grid, opts);
}

SolitonProfile solve_traveling_profile(double sigma, double omega, const Grid& grid,
                                       const SolverOptions& opts) {
    if (!(sigma > 0.5 && sigma <= 1.0))
        throw std::invalid_argument("solve_traveling_profile: sigma must lie in (0.5, 1]");
    return petviashvili(sigma, omega, 1.0, grid, opts);
}

namespace {

// Work area for the variational descent. The descent direction is the
// gradient preconditioned by (P_1 + shift)^{-1}; the scale coordinate
// s = log(||P_1^{1/2}u||^2 / ||u||^2) parametrizes the profile family along
// which the functional can be flat or saddle-shaped.
struct FlowContext {
    Grid grid;
    double sigma;
    double theta;
    std::vector<double> p1;
    double dxi;
};

struct FlowState {
    double value = 0.0;
    double a = 0.0;
    double b = 0.0;
    double residual = 0.0;  // EL defect of P_1 u + a u - b |u|^2 u, relative
    double log_ratio = 0.0; // s coordinate
    double gg = 0.0;        // <G, M^{-1} G>
    double cg = 0.0;        // <c, M^{-1} G>,  c = grad of log_ratio
    double cc = 0.0;        // <c, M^{-1} c>
    Field pre_grad;         // M^{-1} G
    Field pre_constraint;   // M^{-1} c
    FlowState() : pre_grad(Grid{1.0, 16}), pre_constraint(Grid{1.0, 16}) {}
    explicit FlowState(const Grid& g) : pre_grad(g), pre_constraint(g) {}

    double mu() const { return cc > 0.0 ? cg / cc : 0.0; }
    // squared norm of the slice-tangential gradient part, M^{-1} metric
    double tangent2() const { return std::max(0.0, gg - (cc > 0.0 ? cg * cg / cc : 0.0)); }
};

Field preconditioned(const FlowContext& ctx, const Field& f, double shift) {
    Field hat = to_spectral(f);
    for (std::size_t j = 0; j < hat.size(); ++j) hat.values[j] /= ctx.p1[j] + shift;
    return transform(hat, Direction::inverse);
}

FlowState flow_analyze(const FlowContext& ctx, const Field& v) {
    const FunctionalBreakdown w = eval_weinstein(v, ctx.sigma, ctx.theta);
    const BracketCoefficients br = bracket_coefficients(w, ctx.sigma);
    if (!(br.c_pk > 0.0))
        throw ConvergenceError("gradient_flow_minimize: nonpositive P_1 bracket");

    FlowState s(ctx.grid);
    s.value = w.w_total;
    s.a = br.c_mass / br.c_pk;
    s.b = br.c_quartic / br.c_pk;

    Field p1_v = apply_multiplier(v, ctx.p1);
    Field cubic_v(ctx.grid);
    kernels::cubic(v.view(), cubic_v.view());

    Field grad = cplx{br.c_mass, 0.0} * v;
    kernels::add_scaled(grad.view(), cplx{br.c_pk, 0.0}, p1_v.view());
    kernels::add_scaled(grad.view(), cplx{-br.c_quartic, 0.0}, cubic_v.view());

    Field defect = p1_v;
    kernels::add_scaled(defect.view(), cplx{s.a, 0.0}, v.view());
    kernels::add_scaled(defect.view(), cplx{-s.b, 0.0}, cubic_v.view());
    s.residual = l2_norm(defect) / l2_norm(v);

    const double l2_2 = w.norms.l2 * w.norms.l2;
    const double pk_2 = w.norms.pk_half * w.norms.pk_half;
    s.log_ratio = std::log(pk_2 / l2_2);
    Field constraint = cplx{2.0 / pk_2, 0.0} * p1_v;
    kernels::add_scaled(constraint.view(), cplx{-2.0 / l2_2, 0.0}, v.view());

    const double shift = std::max(s.a, 1e-3);
    s.pre_grad = preconditioned(ctx, grad, shift);
    s.pre_constraint = preconditioned(ctx, constraint, shift);
    s.gg = inner_re(grad, s.pre_grad);
    s.cg = inner_re(constraint, s.pre_grad);
    s.cc = inner_re(constraint, s.pre_constraint);
    return s;
}

// Moves v along dir so that log(pk^2/l2^2) hits target exactly; both
// quadratic forms are quadratics in the step, so this is a closed-form root.
bool restore_scale(const FlowContext& ctx, Field& v, const Field& dir, double target) {
    const Field v_hat = to_spectral(v);
    const Field d_hat = to_spectral(dir);
    const double dxi = ctx.dxi;
    double a0 = 0, a1 = 0, a2 = 0, b0 = 0, b1 = 0, b2 = 0;
    for (std::size_t j = 0; j < v_hat.size(); ++j) {
        const double p = ctx.p1[j];
        const cplx uv = v_hat.values[j];
        const cplx dv = d_hat.values[j];
        const double cross = uv.real() * dv.real() + uv.imag() * dv.imag();
        a0 += p * std::norm(uv);
        a1 += p * cross;
        a2 += p * std::norm(dv);
        b0 += std::norm(uv);
        b1 += cross;
        b2 += std::norm(dv);
    }
    a0 *= dxi; a1 *= dxi; a2 *= dxi; b0 *= dxi; b1 *= dxi; b2 *= dxi;
    const double r = std::exp(target);
    // (a2 - r b2) t^2 + 2 (a1 - r b1) t + (a0 - r b0) = 0
    const double qa = a2 - r * b2, qb = 2.0 * (a1 - r * b1), qc = a0 - r * b0;
    double t = 0.0;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (std::abs(qa) < 1e-300) {
        if (qb == 0.0) return std::abs(qc) < 1e-12 * (a0 + r * b0);
        t = -qc / qb;
    } else {
        if (disc < 0.0) return false;
        const double root = std::sqrt(disc);
        const double t1 = (-qb + root) / (2.0 * qa);
        const double t2 = (-qb - root) / (2.0 * qa);
        t = std::abs(t1) < std::abs(t2) ? t1 : t2;
    }
    kernels::add_scaled(v.view(), cplx{t, 0.0}, dir.view());
    return true;
}

struct InnerResult {
    Field u;
    FlowState state;
    bool stationary = false; // tangential gradient flushed out
};

// Minimizes W on the slice {log_ratio = s_target} by projected
// preconditioned descent with an Armijo backtracking line search.
InnerResult slice_minimize(const FlowContext& ctx, Field u, double s_target, int budget,
                           double tangent_tol, const SolverOptions& opts, int& observer_iter) {
    if (!restore_scale(ctx, u, flow_analyze(ctx, u).pre_constraint, s_target))
        throw ConvergenceError("gradient_flow_minimize: cannot reach the requested scale slice");
    kernels::scale(u.view(), cplx{1.0 / l2_norm(u), 0.0});
    FlowState st = flow_analyze(ctx, u);
    double step = opts.flow_step;
    for (int it = 0; it < budget; ++it) {
        const double tan2 = st.tangent2();
        if (std::sqrt(tan2) <= tangent_tol || st.residual <= opts.residual_tol)
            return {std::move(u), std::move(st), true};

        // Direction: slice-tangential part of the preconditioned gradient.
        const double beta = st.cc > 0.0 ? st.cg / st.cc : 0.0;
        Field dir = cplx{-1.0, 0.0} * st.pre_grad;
        kernels::add_scaled(dir.view(), cplx{beta, 0.0}, st.pre_constraint.view());

        bool accepted = false;
        Field trial(ctx.grid);
        FlowState trial_state;
        for (int bt = 0; bt < 50; ++bt) {
            trial = u;
            kernels::add_scaled(trial.view(), cplx{step * opts.damping, 0.0}, dir.view());
            if (restore_scale(ctx, trial, st.pre_constraint, s_target)) {
                const double tl2 = l2_norm(trial);
                if (tl2 > 0.0) {
                    kernels::scale(trial.view(), cplx{1.0 / tl2, 0.0});
                    trial_state = flow_analyze(ctx, trial);
                    if (trial_state.value <= st.value - 1e-4 * step * tan2) {
                        accepted = true;
                        break;
                    }
                }
            }
            step *= 0.5;
        }
        if (!accepted) return {std::move(u), std::move(st), false};
        u = std::move(trial);
        st = std::move(trial_state);
        if (opts.flow_observer) opts.flow_observer(observer_iter++, st.value);
        if (step < 1.0) step *= 1.5;
    }
    return {std::move(u), std::move(st), false};
}

} // namespace

SolitonProfile gradient_flow_minimize(double sigma, double theta, const Grid& grid,
                                      const SolverOptions& opts) {
    validate_options(opts);
    if (!(sigma > 0.5 && sigma <= 1.0))
        throw std::invalid_argument("gradient_flow_minimize: sigma must lie in (0.5, 1]");
    if (!(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("gradient_flow_minimize: theta must lie in (0, 1)");

    FlowContext ctx{grid, sigma, theta, symbol_table(SymbolParams{sigma, 1.0}, grid), grid.dxi()};
    Field u = opts.initial_guess ? to_physical(*opts.initial_guess) : default_guess(grid);
    if (!(u.grid == grid)) throw std::invalid_argument("gradient_flow_minimize: guess grid mismatch");
    kernels::scale(u.view(), cplx{1.0 / l2_norm(u), 0.0});

    int observer_iter = 0;
    int spent = 0;

    // Phase 1: unconstrained preconditioned descent. Converges whenever the
    // functional has an accessible minimum; tracked so a slide toward the
    // wide-profile valley (a -> 0 with no stationarity) is cut short.
    {
        FlowState st = flow_analyze(ctx, u);
        double step = opts.flow_step;
        Field best_u = u;
        double best_residual = st.residual;
        const int budget = std::min(opts.max_iterations, 600);
        int since_best = 0;
        for (int it = 0; it < budget && st.residual > opts.residual_tol; ++it, ++spent) {
            if (!(st.gg > 0.0)) break;
            bool accepted = false;
            Field trial(grid);
            FlowState trial_state;
            for (int bt = 0; bt < 50; ++bt) {
                trial = u;
                kernels::add_scaled(trial.view(), cplx{-step * opts.damping, 0.0},
                                    st.pre_grad.view());
                const double tl2 = l2_norm(trial);
                if (tl2 > 0.0) {
                    kernels::scale(trial.view(), cplx{1.0 / tl2, 0.0});
                    trial_state = flow_analyze(ctx, trial);
                    if (trial_state.value <= st.value - 1e-4 * step * st.gg) {
                        accepted = true;
                        break;
                    }
                }
                step *= 0.5;
            }
            if (!accepted) break;
            u = std::move(trial);
            st = std::move(trial_state);
            if (opts.flow_observer) opts.flow_observer(observer_iter++, st.value);
            if (step < 1.0) step *= 1.5;
            if (st.residual < 0.9 * best_residual) {
                best_residual = st.residual;
                best_u = u;
                since_best = 0;
            } else if (++since_best > 80) {
                break; // stalled or sliding along a flat valley
            }
        }
        if (st.residual <= opts.residual_tol) {
            return [&] {
                if (!(st.a > 0.0) || !(st.b > 0.0))
                    throw ConvergenceError(
                        "gradient_flow_minimize: nonpositive stationarity coefficients");
                kernels::scale(u.view(), cplx{std::sqrt(st.b), 0.0});
                SolitonProfile out{std::move(u), sigma, std::pow(st.a, 1.0 / (2.0 * sigma)),
                                   1.0,           0.0,   spent,
                                   SolveMethod::gradient_flow};
                out.theta = theta;
                finish_profile(out);
                return out;
            }();
        }
        u = std::move(best_u); // restart phase 2 from the most stationary point seen
    }

    // Phase 2: the functional may have no accessible minimum (for theta near
    // 1 the minimizing scale escapes any finite box, and near sigma = 1 the
    // critical profile is a saddle along the scale family). Minimize on
    // fixed-scale slices and drive the slice multiplier to zero by
    // bisection; a zero multiplier on a slice is full stationarity.
    const double tangent_tol = std::max(1e-9, 0.1 * opts.residual_tol);
    const auto inner = [&](Field start, double s) {
        const int budget = std::min(400, std::max(50, opts.max_iterations - spent));
        auto r = slice_minimize(ctx, std::move(start), s, budget, tangent_tol, opts, observer_iter);
        spent += budget / 4; // rough accounting; inner solves are warm-started
        return r;
    };

    InnerResult cur = inner(u, flow_analyze(ctx, u).log_ratio);
    if (cur.state.residual <= opts.residual_tol) u = cur.u;
    double s_lo = cur.state.log_ratio, mu_lo = cur.state.mu();
    double s_hi = s_lo, mu_hi = mu_lo;
    if (cur.state.residual > opts.residual_tol) {
        // Walk uphill in the slice coordinate until the multiplier flips.
        const double dir = mu_lo > 0.0 ? 1.0 : -1.0;
        double h = 0.25;
        bool bracketed = false;
        InnerResult probe = cur;
        for (int i = 0; i < 24 && spent < opts.max_iterations; ++i) {
            const double s_next = (dir > 0.0 ? s_hi : s_lo) + dir * h;
            probe = inner(probe.u, s_next);
            if (probe.state.residual <= opts.residual_tol) { cur = probe; bracketed = true; break; }
            const double mu_next = probe.state.mu();
            if (mu_next * mu_lo < 0.0) {
                if (dir > 0.0) { s_lo = s_hi; mu_lo = mu_hi; s_hi = s_next; mu_hi = mu_next; }
                else { s_hi = s_lo; mu_hi = mu_lo; s_lo = s_next; mu_lo = mu_next; }
                bracketed = true;
                break;
            }
            if (dir > 0.0) { s_hi = s_next; mu_hi = mu_next; } else { s_lo = s_next; mu_lo = mu_next; }
            h *= 1.6;
        }
        if (!bracketed)
            throw ConvergenceError(
                "gradient_flow_minimize: no stationary scale found in the accessible range");
        while (cur.state.residual > opts.residual_tol && spent < opts.max_iterations) {
            if (s_hi - s_lo < 1e-13) break;
            const double s_mid = 0.5 * (s_lo + s_hi);
            cur = inner(cur.u, s_mid);
            const double mu_mid = cur.state.mu();
            if (mu_mid * mu_lo < 0.0) { s_hi = s_mid; mu_hi = mu_mid; }
            else { s_lo = s_mid; mu_lo = mu_mid; }
        }
        u = cur.u;
    } else {
        u = cur.u;
    }

    FlowState st = flow_analyze(ctx, u);
    if (st.residual > opts.residual_tol)
        throw ConvergenceError("gradient_flow_minimize: no convergence within max_iterations");
    if (!(st.a > 0.0) || !(st.b > 0.0))
        throw ConvergenceError("gradient_flow_minimize: nonpositive stationarity coefficients");
    kernels::scale(u.view(), cplx{std::sqrt(st.b), 0.0});

    SolitonProfile out{std::move(u), sigma, std::pow(st.a, 1.0 / (2.0 * sigma)),
                       1.0,           0.0,   spent,
                       SolveMethod::gradient_flow};
    out.theta = theta;
    finish_profile(out);
    return out;
}

SolitonProfile rescale_to_k(const SolitonProfile& q1, double k) {
    if (q1.k != 1.0) throw std::invalid_argument("rescale_to_k: input must be a k = 1 profile");
    if (k == 0.0) throw std::invalid_argument("rescale_to_k: k must be nonzero");
    if (k == 1.0) return q1;

    const Grid& g1 = q1.field.grid;
    const std::size_t n = g1.size();
    const Grid gk{g1.half_length() / std::abs(k), n};
    const double amp = std::pow(std::abs(k), q1.sigma);

    const Field src = to_physical(q1.field);
    Field values(gk);
    // Sampling Q_1(k x') lands exactly on source nodes (periodically for
    // negative k), so the rescaling is a reindexing.
    if (k > 0.0) {
        for (std::size_t i = 0; i < n; ++i) values.values[i] = amp * src.values[i];
    } else {
        values.values[0] = amp * src.values[0];
        for (std::size_t i = 1; i < n; ++i) values.values[i] = amp * src.values[n - i];
    }

    SolitonProfile out{std::move(values), q1.sigma, std::abs(k) * q1.omega, k, 0.0,
                       q1.iterations,    q1.method};
    out.theta = q1.theta;
    out.imag_fraction = imag_fraction_of(out.field);
    out.evenness = evenness_defect(out.field);
    out.residual = residual_norm(out);
    return out;
}

double default_half_length(double sigma, double omega) {
    constexpr double base = 40.0 * 3.14159265358979323846;
    return base * std::max(1.0, std::pow(omega, -1.0 / sigma));
}

} // namespace fnls
