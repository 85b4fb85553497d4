#pragma once

#include <functional>
#include <optional>
#include <stdexcept>

#include "fnls/field.hpp"
#include "fnls/functionals.hpp"

namespace fnls {

struct SolverOptions {
    int max_iterations = 5000;
    double residual_tol = 1e-10;
    double petviashvili_gamma = 1.5; // stabilization exponent, in (1, 2)
    std::optional<Field> initial_guess; // default: unit Gaussian exp(-x^2)
    double damping = 1.0;               // in (0, 1]
    double flow_step = 1.0;             // initial descent step
    // Called once per accepted descent iteration with the functional value.
    std::function<void(int, double)> flow_observer;
};

enum class SolveMethod { petviashvili, gradient_flow };

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A converged profile together with its parameters and solve metadata.
/// Gauge fixing on return: the sample of maximal modulus is real positive
/// and sits at the grid node nearest x = 0.
struct SolitonProfile {
    Field field;
    double sigma = 0.0;
    double omega = 0.0;
    double k = 0.0; // 0 marks the static ground state
    double residual = 0.0;
    int iterations = 0;
    SolveMethod method = SolveMethod::petviashvili;
    std::optional<double> theta; // set by the minimization route
    // Measured, not asserted: the equations do not force either symmetry.
    double imag_fraction = 0.0;   // ||Im Q|| / ||Q||
    double evenness = 0.0;        // ||Q(x) - Q(-x)|| / ||Q||
};

/// Relative L^2 defect ||P_k Q + omega^{2 sigma} Q - |Q|^2 Q|| / ||Q|| of the
/// profile's own equation. Throws on a zero field.
double residual_norm(const SolitonProfile& p);

/// Ground state of (-Delta)^sigma Q + omega^{2 sigma} Q - |Q|^2 Q = 0 via the
/// stabilized fixed-point iteration. sigma in (1/4, 1].
SolitonProfile solve_static_ground_state(double sigma, double omega, const Grid& grid,
                                         const SolverOptions& opts = {});

/// Traveling profile at k = 1: P_1 Q + omega^{2 sigma} Q - |Q|^2 Q = 0,
/// complex arithmetic throughout. sigma in (1/2, 1].
SolitonProfile solve_traveling_profile(double sigma, double omega, const Grid& grid,
                                       const SolverOptions& opts = {});

/// Minimizes the three-term quotient functional by a monotone descent with
/// Barzilai-Borwein steps, then rescales the minimizer to the profile
/// Q_1 = b^{1/2} u with emergent omega = a^{1/(2 sigma)}.
SolitonProfile gradient_flow_minimize(double sigma, double theta, const Grid& grid,
                                      const SolverOptions& opts = {});

/// Rescales a k = 1 profile to speed k via Q_k(x) = |k|^sigma Q_1(k x) on the
/// grid with half-length L/|k|; omega_k = |k| omega. Exact reindexing, no
/// interpolation. k = 1 returns the input.
SolitonProfile rescale_to_k(const SolitonProfile& q1, double k);

/// Box half-length heuristic: large enough that the algebraic profile tail
/// stays below ~1e-8 of the peak at the boundary.
double default_half_length(double sigma, double omega);

} // namespace fnls
