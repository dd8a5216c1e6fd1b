#pragma once

#include <cmath>
#include <cstdint>

#include "qs/qcore.hpp"

namespace qs {

// splitmix64: the seedable generator used for all sampling. Deterministic for
// a given seed across platforms; the algorithm identifier recorded in report
// headers is "splitmix64".
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Modulus log-uniform in [rmin, rmax], argument uniform.
    cplx log_annulus(double rmin, double rmax) {
        const double r = std::exp(uniform(std::log(rmin), std::log(rmax)));
        const double phi = uniform(0.0, 2.0 * M_PI);
        return cplx(r * std::cos(phi), r * std::sin(phi));
    }
};

}  // namespace qs
