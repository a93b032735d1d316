#ifndef PROBEVIEW_RANDOM_HPP
#define PROBEVIEW_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "probeview/fock.hpp"

namespace probeview {

/// Seeded source of random states. Variates are derived from raw mt19937_64
/// output, so a given seed yields the same states on every standard library.
class StateSampler {
public:
    explicit StateSampler(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    Index uniform_index(Index lo, Index hi) {
        return lo + static_cast<Index>(uniform() * static_cast<double>(hi - lo + 1));
    }

    /// Standard normal pair by Box-Muller, returned as one complex number.
    Complex<double> complex_normal() {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return std::polar(r, 2.0 * std::numbers::pi * u2);
    }

    /// Uniformly distributed direction in C^(cutoff+1).
    FockVector<double> fock_vector(Index cutoff) {
        Vector<double> c(cutoff + 1);
        for (Index n = 0; n <= cutoff; ++n) c(n) = complex_normal();
        return FockVector<double>::normalized(std::move(c));
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace probeview

#endif  // PROBEVIEW_RANDOM_HPP
