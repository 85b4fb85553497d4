#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fnls/field.hpp"

namespace fnls {

enum class Direction { forward, inverse };

/// Unitary discrete Fourier transform with spectral measure dxi = pi/L, so
/// the discrete Plancherel identity sum |u_i|^2 dx = sum |u_j|^2 dxi holds
/// exactly. Forward maps physical -> spectral; inverse the other way around.
/// Spectral coefficients approximate the continuum transform
/// (2*pi)^{-1/2} \int u(x) e^{-i xi x} dx at the grid frequencies.
Field transform(const Field& f, Direction direction);

Field to_physical(const Field& f);
Field to_spectral(const Field& f);

/// Applies the Fourier multiplier m(xi). The result keeps the input's
/// representation. Throws if m is not finite at some grid frequency.
Field apply_multiplier(const Field& f, const std::function<cplx(double)>& m);

/// Same with a precomputed real symbol table in transform-native order.
Field apply_multiplier(const Field& f, std::span<const double> table);

/// Spectral translation u(x) -> u(x - shift); exact for band-limited data.
Field translate(const Field& f, double shift);

} // namespace fnls
