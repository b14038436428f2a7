#pragma once

#include <cstdint>
#include <string>

#include "lieinv/rational.hpp"

namespace lieinv {

/// Deterministic pseudo-random stream (splitmix64 core). The standard
/// library distributions are implementation-defined, so everything here is
/// hand-rolled to keep reports byte-identical across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [lo, hi] inclusive.
    long long uniform_int(long long lo, long long hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long long>(next() % span);
    }

    bool coin() { return (next() & 1) != 0; }

    /// Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Nonzero rational a/b with a in [-amax, amax] \ {0}, b in [1, bmax].
    Rational nonzero_rational(long long amax, long long bmax) {
        long long a = 0;
        while (a == 0) a = uniform_int(-amax, amax);
        long long b = uniform_int(1, bmax);
        return Rational(a, b);
    }

    /// Derives an independent stream from a label, so per-item streams do
    /// not depend on evaluation order.
    static std::uint64_t derive(std::uint64_t seed, const std::string& label) {
        std::uint64_t h = 1469598103934665603ULL ^ seed;
        for (unsigned char c : label) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        return h;
    }

private:
    std::uint64_t state_;
};

}  // namespace lieinv
