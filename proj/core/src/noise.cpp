#include "stf/noise.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace stf {

AmbiguityMatrix add_impulse_noise(const AmbiguityMatrix& m, const ImpulseNoiseSpec& spec) {
    const std::size_t cells = m.values.size();
    if (spec.count < 0) throw std::invalid_argument("impulse count must be nonnegative");
    if (static_cast<std::size_t>(spec.count) >= cells) {
        throw std::invalid_argument("impulse count must be below the grid size");
    }
    if (!(spec.amplitude_scale > 0.0)) throw std::invalid_argument("amplitude scale must be positive");

    AmbiguityMatrix out = m;
    if (spec.count == 0) return out;

    const double peak = max_abs(m.values);
    std::mt19937_64 rng(spec.seed);

    // Partial Fisher-Yates over the flat index range: distinct cells, in a
    // deterministic draw order.
    std::vector<std::size_t> pool(cells);
    for (std::size_t i = 0; i < cells; ++i) pool[i] = i;
    std::uniform_real_distribution<double> mag_dist(0.5, 1.0);
    std::uniform_real_distribution<double> phase_dist(0.0, two_pi);
    for (int i = 0; i < spec.count; ++i) {
        std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(i), cells - 1);
        std::swap(pool[static_cast<std::size_t>(i)], pool[pick(rng)]);
        const std::size_t cell = pool[static_cast<std::size_t>(i)];
        const double mag = mag_dist(rng) * spec.amplitude_scale * peak;
        const double ph = phase_dist(rng);
        out.values.data[cell] += cplx(mag * std::cos(ph), mag * std::sin(ph));
    }
    return out;
}

}  // namespace stf
