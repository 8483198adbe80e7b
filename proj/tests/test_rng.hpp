#pragma once

// Seeded splitmix64 generator so every suite draws the same values on
// every run and platform.

#include <complex>
#include <cstdint>

namespace testrng {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi].
    std::uint64_t uniform_index(std::uint64_t lo, std::uint64_t hi) {
        return lo + next() % (hi - lo + 1);
    }

    /// Log-uniform magnitude in [lo, hi], random sign.
    double signed_log_uniform(double lo, double hi) {
        const double mag = lo * std::pow(hi / lo, uniform());
        return (next() & 1) ? mag : -mag;
    }

    std::complex<double> complex_log_uniform(double lo, double hi) {
        return {signed_log_uniform(lo, hi), signed_log_uniform(lo, hi)};
    }

private:
    std::uint64_t state_;
};

} // namespace testrng
