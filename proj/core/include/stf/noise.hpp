#pragma once

#include <cstdint>

#include "stf/tfd.hpp"

namespace stf {

// Impulsive corruption of an ambiguity plane. Magnitudes are drawn uniform
// in [0.5, 1.0] * amplitude_scale * max|m| with uniform random phase; the
// exact law is a stand-in (no published one exists) and is parameterized so
// experiments can vary it.
struct ImpulseNoiseSpec {
    int count = 0;
    double amplitude_scale = 1.0;  // relative to max|m| of the clean plane
    std::uint64_t seed = 0;
};

// Returns a copy of m with spec.count distinct uniformly random cells
// incremented by complex impulses; deterministic per seed.
AmbiguityMatrix add_impulse_noise(const AmbiguityMatrix& m, const ImpulseNoiseSpec& spec);

}  // namespace stf
