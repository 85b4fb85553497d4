#pragma once

#include <vector>

#include "fnls/field.hpp"
#include "fnls/solvers.hpp"

namespace fnls {

struct EvolutionConfig {
    double dt = 1e-3;
    double t_final = 1.0;
    bool dealias = true; // 2/3-rule spectral truncation each step
    int observe_every = 10;
};

/// Observables recorded along a time evolution. Sequences share one length;
/// `center` is unwrapped across the periodic boundary. shape_error entries
/// are only meaningful when a reference profile was supplied (otherwise 0).
struct TrajectoryReport {
    std::vector<double> times;
    std::vector<double> mass;     // ||u||_{L^2}^2
    std::vector<double> energy;   // (1/2) || |grad|^s u ||^2 - (1/4) ||u||_{L^4}^4
    std::vector<double> momentum; // Re \int conj(u) (-i d_x) u
    std::vector<double> center;   // first moment of |u|^2, unwrapped
    std::vector<double> shape_error;
    std::vector<double> phase;    // unwrapped modulation phase vs reference
    double center_velocity = 0.0; // least-squares slope of center(t)
    double phase_drift_rate = 0.0;
};

/// One Strang step of i u_t - (-Delta)^sigma u + |u|^2 u = 0: exact half
/// nonlinear rotation, exact linear multiplier, half rotation. Second order
/// in dt.
Field strang_step(const Field& u, double sigma, double dt);

/// The t = 0 slice e^{i k x} Q(x) of the traveling ansatz. Throws when the
/// modulated field is not spectrally resolved on the profile's grid.
Field make_traveling_initial(const SolitonProfile& profile);

/// Steps the splitting scheme, recording observables every
/// cfg.observe_every steps. Aborts (throws) when relative mass drift
/// exceeds 1e-3.
TrajectoryReport evolve(const Field& u0, double sigma, const EvolutionConfig& cfg,
                        const SolitonProfile* reference = nullptr);

/// Pseudo-Galilean map at time t:
///     u(x) -> e^{-i t |k|^{2 sigma}} e^{i k x} u(x - 2 t sigma |k|^{2(sigma-1)} k).
/// The translation is spectral (exact for band-limited fields); k = 0 is the
/// identity.
Field pseudo_galilean_boost(const Field& u, double sigma, double k, double t);

} // namespace fnls
