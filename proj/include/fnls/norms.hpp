#pragma once

#include "fnls/field.hpp"
#include "fnls/symbols.hpp"

namespace fnls {

/// The norms entering the variational machinery. L^2 and L^4 are rectangle
/// sums in physical space (spectrally accurate for smooth periodic data);
/// the seminorms are Plancherel sums in spectral space.
struct NormBundle {
    double l2 = 0.0;      // ||u||_{L^2}
    double l4 = 0.0;      // ||u||_{L^4}
    double hsigma = 0.0;  // || |grad|^sigma u ||_{L^2}
    double h1 = 0.0;      // || grad u ||_{L^2}
    double pk_half = 0.0; // the p_k-weighted seminorm
};

NormBundle norms(const Field& f, const SymbolParams& params);

} // namespace fnls
