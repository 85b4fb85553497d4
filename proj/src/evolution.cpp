#include "fnls/evolution.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fnls/kernels.hpp"
#include "fnls/transform.hpp"

namespace fnls {

namespace {

struct Stepper {
    Grid grid;
    double dt;
    bool dealias;
    std::vector<cplx> linear_phase; // exp(-i |xi|^{2s} dt), with 2/3 mask folded in

    Stepper(const Grid& g, double sigma, double dt_, bool dealias_)
        : grid(g), dt(dt_), dealias(dealias_), linear_phase(g.size()) {
        const double cutoff = 2.0 / 3.0 * g.nyquist();
        for (std::size_t j = 0; j < g.size(); ++j) {
            const double xi = g.frequency(j);
            linear_phase[j] = std::polar(1.0, -std::pow(std::abs(xi), 2.0 * sigma) * dt);
            if (dealias && std::abs(xi) > cutoff) linear_phase[j] = 0.0;
        }
    }

    void step(Field& u) const {
        kernels::intensity_phase_rotate(u.view(), 0.5 * dt);
        Field spec = transform(u, Direction::forward);
        kernels::multiply_complex(spec.view(), linear_phase);
        u = transform(spec, Direction::inverse);
        kernels::intensity_phase_rotate(u.view(), 0.5 * dt);
    }
};

double lsq_slope(const std::vector<double>& t, const std::vector<double>& y) {
    if (t.size() < 2) return 0.0;
    const auto n = static_cast<double>(t.size());
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        st += t[i];
        sy += y[i];
        stt += t[i] * t[i];
        sty += t[i] * y[i];
    }
    const double den = n * stt - st * st;
    return den != 0.0 ? (n * sty - st * sy) / den : 0.0;
}

// Alignment of u against the modulated, translated reference e^{ikx} Q(x-s):
// cross-correlation in s evaluated on all node shifts via one inverse FFT,
// then golden-section refinement of the winning node.
struct ShapeMatcher {
    const Grid grid;
    std::vector<cplx> q_hat; // reference spectrum
    double q_l2;
    double k;

    ShapeMatcher(const SolitonProfile& ref)
        : grid(ref.field.grid), q_hat(to_spectral(ref.field).values),
          q_l2(l2_norm(ref.field)), k(ref.k) {}

    // F(s) = sum_j conj(q_hat_j) v_hat_j e^{i xi_j s} dxi with v = u e^{-ikx};
    // |F| is the modulus of the best-phase overlap <u, e^{ikx} Q(.-s)>.
    cplx overlap(const std::vector<cplx>& v_hat, double s) const {
        cplx acc{0.0, 0.0};
        for (std::size_t j = 0; j < v_hat.size(); ++j)
            acc += std::conj(q_hat[j]) * v_hat[j] * std::polar(1.0, grid.frequency(j) * s);
        return acc * grid.dxi();
    }

    struct Result {
        double error;  // min over shift and phase of relative L2 distance
        double shift;  // maximizing translation
        cplx overlap_at_shift;
    };

    Result match(const Field& u) const {
        Field v = to_physical(u);
        for (std::size_t i = 0; i < v.size(); ++i)
            v.values[i] *= std::polar(1.0, -k * grid.node(i));
        const std::vector<cplx> v_hat = to_spectral(v).values;

        // Coarse scan over node shifts.
        Field corr(grid, Representation::spectral);
        for (std::size_t j = 0; j < v_hat.size(); ++j)
            corr.values[j] = std::conj(q_hat[j]) * v_hat[j];
        const Field corr_phys = transform(corr, Direction::inverse);
        std::size_t best = 0;
        double best_mag = -1.0;
        for (std::size_t i = 0; i < corr_phys.size(); ++i) {
            const double m = std::abs(corr_phys.values[i]);
            if (m > best_mag) {
                best_mag = m;
                best = i;
            }
        }
        // The inverse transform evaluates sum A_j e^{i xi_j x} dxi/sqrt(2pi)
        // at the nodes, so node i corresponds to s = x_i.
        double lo = grid.node(best) - grid.dx();
        double hi = grid.node(best) + grid.dx();
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
        double fa = std::abs(overlap(v_hat, a)), fb = std::abs(overlap(v_hat, b));
        for (int it = 0; it < 60 && hi - lo > 1e-13 * grid.half_length(); ++it) {
            if (fa < fb) {
                lo = a;
                a = b;
                fa = fb;
                b = lo + gr * (hi - lo);
                fb = std::abs(overlap(v_hat, b));
            } else {
                hi = b;
                b = a;
                fb = fa;
                a = hi - gr * (hi - lo);
                fa = std::abs(overlap(v_hat, a));
            }
        }
        const double s = 0.5 * (lo + hi);
        const cplx f = overlap(v_hat, s);
        const double u_l2 = l2_norm(v);
        const double d2 = std::max(0.0, u_l2 * u_l2 + q_l2 * q_l2 - 2.0 * std::abs(f));
        return {std::sqrt(d2) / q_l2, s, f};
    }
};

} // namespace

Field strang_step(const Field& u, double sigma, double dt) {
    if (u.rep != Representation::physical)
        throw std::invalid_argument("strang_step: physical representation required");
    if (!u.finite()) throw std::invalid_argument("strang_step: non-finite input");
    Field out = u;
    Stepper stepper(u.grid, sigma, dt, false);
    stepper.step(out);
    return out;
}

Field make_traveling_initial(const SolitonProfile& profile) {
    const Field q = to_physical(profile.field);
    Field u0 = q;
    for (std::size_t i = 0; i < u0.size(); ++i)
        u0.values[i] *= std::polar(1.0, profile.k * q.grid.node(i));

    const Field spec = to_spectral(u0);
    double peak = 0.0, tail = 0.0;
    const double guard = 0.9 * q.grid.nyquist();
    for (std::size_t j = 0; j < spec.size(); ++j) {
        const double m = std::abs(spec.values[j]);
        peak = std::max(peak, m);
        if (std::abs(q.grid.frequency(j)) >= guard) tail = std::max(tail, m);
    }
    if (peak > 0.0 && tail / peak > 1e-8)
        throw std::invalid_argument(
            "make_traveling_initial: profile unresolved after modulation (spectral tail)");
    return u0;
}

Field pseudo_galilean_boost(const Field& u, double sigma, double k, double t) {
    if (k == 0.0) return to_physical(u);
    const double period = 2.0 * u.grid.half_length();
    double shift = 2.0 * t * sigma * std::pow(std::abs(k), 2.0 * (sigma - 1.0)) * k;
    shift = std::remainder(shift, period);
    Field out = to_physical(translate(u, shift));
    const cplx global = std::polar(1.0, -t * std::pow(std::abs(k), 2.0 * sigma));
    for (std::size_t i = 0; i < out.size(); ++i)
        out.values[i] *= global * std::polar(1.0, k * u.grid.node(i));
    return out;
}

TrajectoryReport evolve(const Field& u0, double sigma, const EvolutionConfig& cfg,
                        const SolitonProfile* reference) {
    if (!(cfg.dt > 0.0) || !(cfg.t_final > 0.0))
        throw std::invalid_argument("evolve: dt and t_final must be positive");
    if (cfg.observe_every < 1) throw std::invalid_argument("evolve: observe_every < 1");

    const Grid& grid = u0.grid;
    Field u = to_physical(u0);
    Stepper stepper(grid, sigma, cfg.dt, cfg.dealias);

    const auto steps = static_cast<long>(std::llround(cfg.t_final / cfg.dt));
    if (steps < 1) throw std::invalid_argument("evolve: t_final shorter than one step");

    std::vector<double> xi2s(grid.size()), xi_odd(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double xi = grid.frequency(j);
        xi2s[j] = std::pow(std::abs(xi), 2.0 * sigma);
        // Nyquist zeroed for the odd multiplier (momentum).
        xi_odd[j] = (j == grid.size() / 2) ? 0.0 : xi;
    }

    std::optional<ShapeMatcher> matcher;
    if (reference) matcher.emplace(*reference);

    TrajectoryReport report;
    double center_offset = 0.0;
    double prev_center_raw = 0.0;
    double prev_phase = 0.0;
    double phase_offset = 0.0;
    bool first = true;
    double mass0 = 0.0;
    constexpr double two_pi = 2.0 * std::numbers::pi;

    const auto observe = [&](double t) {
        const Field spec = to_spectral(u);
        const double dx = grid.dx();
        const double dxi = grid.dxi();
        const double mass = kernels::sum_abs2(u.view()) * dx;
        const double energy = 0.5 * kernels::weighted_sum_abs2(xi2s, spec.view()) * dxi -
                              0.25 * kernels::sum_abs4(u.view()) * dx;
        const double momentum = kernels::weighted_sum_abs2(xi_odd, spec.view()) * dxi;

        double moment = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i)
            moment += grid.node(i) * std::norm(u.values[i]);
        const double center_raw = moment * dx / mass;
        if (!first) {
            const double period = 2.0 * grid.half_length();
            double jump = center_raw - prev_center_raw;
            if (jump > 0.5 * period) center_offset -= period;
            if (jump < -0.5 * period) center_offset += period;
        }
        prev_center_raw = center_raw;

        double shape = 0.0, phase = 0.0;
        if (matcher) {
            const auto m = matcher->match(u);
            shape = m.error;
            const double raw_phase = std::arg(m.overlap_at_shift);
            if (!first) {
                double jump = raw_phase - prev_phase;
                if (jump > std::numbers::pi) phase_offset -= two_pi;
                if (jump < -std::numbers::pi) phase_offset += two_pi;
            }
            prev_phase = raw_phase;
            phase = raw_phase + phase_offset;
        }

        report.times.push_back(t);
        report.mass.push_back(mass);
        report.energy.push_back(energy);
        report.momentum.push_back(momentum);
        report.center.push_back(center_raw + center_offset);
        report.shape_error.push_back(shape);
        report.phase.push_back(phase);

        if (first) {
            mass0 = mass;
            first = false;
        } else if (std::abs(mass - mass0) / mass0 > 1e-3) {
            std::ostringstream msg;
            msg << "evolve: blow-up guard tripped at t = " << t << " (relative mass drift "
                << std::abs(mass - mass0) / mass0 << ")";
            throw std::runtime_error(msg.str());
        }
    };

    observe(0.0);
    for (long n = 1; n <= steps; ++n) {
        stepper.step(u);
        if (!u.finite()) throw std::runtime_error("evolve: non-finite state (NaN guard)");
        if (n % cfg.observe_every == 0 || n == steps)
            observe(static_cast<double>(n) * cfg.dt);
    }

    report.center_velocity = lsq_slope(report.times, report.center);
    report.phase_drift_rate = lsq_slope(report.times, report.phase);
    return report;
}

} // namespace fnls
