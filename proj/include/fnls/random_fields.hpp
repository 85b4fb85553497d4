#pragma once

#include <cstdint>

#include "fnls/field.hpp"

namespace fnls {

/// Smooth random test field: a mixture of complex Gaussian bumps with random
/// centers, widths, amplitudes and phases, band-limited to half the Nyquist
/// frequency. Deterministic across platforms for a given seed (the generator
/// avoids library distributions on purpose).
Field random_smooth_field(const Grid& grid, std::uint64_t seed);

} // namespace fnls
