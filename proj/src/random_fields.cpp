#include "fnls/random_fields.hpp"

#include <cmath>
#include <numbers>

#include "fnls/transform.hpp"

namespace fnls {

namespace {

// splitmix64; stable across platforms, unlike <random> distributions.
struct Rng {
    std::uint64_t state;
    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { // [0, 1)
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

} // namespace

Field random_smooth_field(const Grid& grid, std::uint64_t seed) {
    Rng rng{seed ^ 0xd1b54a32d192ed03ULL};
    const double L = grid.half_length();
    const int n_bumps = 2 + static_cast<int>(rng.next_u64() % 4);

    Field f(grid);
    for (int b = 0; b < n_bumps; ++b) {
        const double center = rng.uniform(-0.4 * L, 0.4 * L);
        const double width = rng.uniform(0.5, 3.0);
        const double amp = rng.uniform(0.2, 1.5);
        const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double mod = rng.uniform(-2.0, 2.0); // carrier frequency
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double x = grid.node(i);
            const double env = amp * std::exp(-(x - center) * (x - center) / (2.0 * width * width));
            f.values[i] += env * std::polar(1.0, phase + mod * x);
        }
    }

    // Band-limit to half Nyquist.
    Field spec = to_spectral(f);
    const double cutoff = 0.5 * grid.nyquist();
    for (std::size_t j = 0; j < grid.size(); ++j)
        if (std::abs(grid.frequency(j)) > cutoff) spec.values[j] = 0.0;
    return to_physical(spec);
}

} // namespace fnls
