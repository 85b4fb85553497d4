#include "fnls/transform.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <fftw3.h>

#include "fnls/kernels.hpp"

namespace fnls {

namespace {

// FFTW's planner is not thread-safe; plan creation is serialized. Plans are
// created alignment-agnostic (FFTW_ESTIMATE | FFTW_UNALIGNED) so they can be
// executed on any caller buffer via fftw_execute_dft, which is thread-safe.
struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

PlanPair plans_for(std::size_t n) {
    static std::mutex mtx;
    static std::map<std::size_t, PlanPair> cache;
    std::lock_guard lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<cplx> dummy_in(n), dummy_out(n);
    auto* in = reinterpret_cast<fftw_complex*>(dummy_in.data());
    auto* out = reinterpret_cast<fftw_complex*>(dummy_out.data());
    PlanPair p;
    const int ni = static_cast<int>(n);
    p.forward = fftw_plan_dft_1d(ni, in, out, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.backward = fftw_plan_dft_1d(ni, in, out, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p.forward || !p.backward) throw std::runtime_error("transform: FFTW planning failed");
    cache.emplace(n, p);
    return p;
}

constexpr double inv_sqrt_2pi = 0.3989422804014326779; // 1/sqrt(2*pi)

void alternate_signs(std::span<cplx> v) {
    for (std::size_t j = 1; j < v.size(); j += 2) v[j] = -v[j];
}

} // namespace

Field transform(const Field& f, Direction direction) {
    if (!f.finite()) throw std::invalid_argument("transform: non-finite input");
    const std::size_t n = f.size();
    const PlanPair plans = plans_for(n);
    Field out(f.grid, direction == Direction::forward ? Representation::spectral
                                                      : Representation::physical);
    if (direction == Direction::forward) {
        if (f.rep != Representation::physical)
            throw std::invalid_argument("transform: forward expects physical input");
        std::vector<cplx> in = f.values;
        fftw_execute_dft(plans.forward, reinterpret_cast<fftw_complex*>(in.data()),
                         reinterpret_cast<fftw_complex*>(out.values.data()));
        // Nodes start at -L, so mode m picks up the phase e^{i pi m} = (-1)^j.
        alternate_signs(out.view());
        kernels::scale(out.view(), cplx{f.grid.dx() * inv_sqrt_2pi, 0.0});
    } else {
        if (f.rep != Representation::spectral)
            throw std::invalid_argument("transform: inverse expects spectral input");
        std::vector<cplx> in = f.values;
        alternate_signs(in);
        fftw_execute_dft(plans.backward, reinterpret_cast<fftw_complex*>(in.data()),
                         reinterpret_cast<fftw_complex*>(out.values.data()));
        kernels::scale(out.view(), cplx{f.grid.dxi() * inv_sqrt_2pi, 0.0});
    }
    return out;
}

Field to_physical(const Field& f) {
    return f.rep == Representation::physical ? f : transform(f, Direction::inverse);
}

Field to_spectral(const Field& f) {
    return f.rep == Representation::spectral ? f : transform(f, Direction::forward);
}

Field apply_multiplier(const Field& f, const std::function<cplx(double)>& m) {
    const auto freqs = f.grid.frequencies();
    std::vector<cplx> table(freqs.size());
    for (std::size_t j = 0; j < freqs.size(); ++j) {
        table[j] = m(freqs[j]);
        if (!std::isfinite(table[j].real()) || !std::isfinite(table[j].imag()))
            throw std::invalid_argument("apply_multiplier: symbol not finite at grid frequency");
    }
    Field spec = to_spectral(f);
    kernels::multiply_complex(spec.view(), table);
    return f.rep == Representation::physical ? transform(spec, Direction::inverse) : spec;
}

Field apply_multiplier(const Field& f, std::span<const double> table) {
    if (table.size() != f.size())
        throw std::invalid_argument("apply_multiplier: table size mismatch");
    for (double v : table)
        if (!std::isfinite(v))
            throw std::invalid_argument("apply_multiplier: symbol not finite at grid frequency");
    Field spec = to_spectral(f);
    kernels::multiply_real(spec.view(), table);
    return f.rep == Representation::physical ? transform(spec, Direction::inverse) : spec;
}

Field translate(const Field& f, double shift) {
    const auto freqs = f.grid.frequencies();
    Field spec = to_spectral(f);
    for (std::size_t j = 0; j < freqs.size(); ++j)
        spec.values[j] *= std::polar(1.0, -freqs[j] * shift);
    return f.rep == Representation::physical ? transform(spec, Direction::inverse) : spec;
}

} // namespace fnls
