#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace qrl {

// Deterministic randomness for trials and sampling.  Distributions are built
// from raw mt19937_64 words instead of <random> distribution objects so a
// seed reproduces the same stream on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1) with 53 significant bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller.
    double gaussian() {
        return box_muller().real();
    }

    // Both quadrature components standard normal; one Box-Muller pair each.
    std::complex<double> complex_gaussian() {
        return box_muller();
    }

    std::uint64_t word() { return engine_(); }

    // Stable per-stream seed derivation (splitmix64 over seed + stream).
    static std::uint64_t substream(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::complex<double> box_muller() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(t), r * std::sin(t)};
    }

    std::mt19937_64 engine_;
};

}  // namespace qrl
