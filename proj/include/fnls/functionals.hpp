#pragma once

#include "fnls/field.hpp"
#include "fnls/norms.hpp"

namespace fnls {

/// Values of the three-term quotient functional
///     W(u) = W1(u) + W2(u) - W3(u),
///     W1 = ||u||_{L^2}^{(4s-1)/s} ||P_1^{1/2} u||_{L^2}^{1/s} / ||u||_{L^4}^4,
///     W2 = alpha ||u||_{L^2}^3 ||P_1^{1/2} u||_{L^2} / ||u||_{L^4}^4,
///     W3 = W1^{1-theta} W2^theta,
/// with alpha = 1/sqrt(sigma (2 sigma - 1)). Invariant under u -> c u.
struct FunctionalBreakdown {
    double w1 = 0.0;
    double w2 = 0.0;
    double w3 = 0.0;
    double w_total = 0.0;
    double theta = 0.0;
    double alpha = 0.0;
    NormBundle norms;
};

FunctionalBreakdown eval_weinstein(const Field& f, double sigma, double theta);

/// First-variation coefficients: the gradient is
///     G = c_mass * u + c_pk * P_1 u - c_quartic * |u|^2 u,
/// so that d/de W(u + e v)|_0 = Re <G, v> for every test field v. All three
/// are positive for theta close enough to 1.
struct BracketCoefficients {
    double c_mass = 0.0;
    double c_pk = 0.0;
    double c_quartic = 0.0;
};

BracketCoefficients bracket_coefficients(const FunctionalBreakdown& w, double sigma);

/// L^2 gradient of W at f (physical representation).
Field variational_gradient(const Field& f, double sigma, double theta);

/// Coefficients of the stationarity equation P_1 u + a u - b |u|^2 u = 0
/// satisfied by a critical point, and the frequency omega = a^{1/(2 sigma)}.
struct ELCoefficients {
    double a = 0.0;
    double b = 0.0;
    double omega = 0.0;
};

ELCoefficients el_coefficients(const Field& f, double sigma, double theta);

/// l(s) = 1 + s - s^theta; convex on [0, inf) with minimum at
/// s = theta^{1/(1-theta)}.
double ell_function(double s, double theta);

/// h(theta) = c^{1/2s} + c^{1/2} (4s-1)^{(1-s)/2s} alpha
///            - (c^{1/2s})^{1-theta} (c^{1/2} (4s-1)^{(1-s)/2s} alpha)^theta.
/// h(1) = c^{1/2s}; the interesting regime is h(theta) < 1 for theta near 1.
double h_theta(double c, double sigma, double theta);

} // namespace fnls
