#pragma once

#include <cstdint>
#include <initializer_list>

#include "bnec/field.hpp"

namespace bnec {

// Seedable, splittable generator (splitmix64 core). Streams derived via
// split() are independent for distinct id tuples, which keeps simulations
// reproducible under parallel or reordered execution. The standard <random>
// distributions are implementation-defined, so uniform draws are done here
// by rejection to make runs bit-identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Child stream keyed by (seed, ids...).
    Rng split(std::initializer_list<std::uint64_t> ids) const {
        std::uint64_t s = state_;
        for (std::uint64_t id : ids) s = mix(s ^ (id + 0x9e3779b97f4a7c15ULL));
        return Rng(mix(s));
    }

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // Uniform over [0, n), exact via rejection.
    std::uint32_t below(std::uint32_t n) {
        std::uint64_t limit = (~std::uint64_t(0) / n) * n;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return std::uint32_t(x % n);
    }

    double real() { return double(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return real() < p; }

    Symbol symbol(const Field& f) { return Symbol(below(f.q())); }
    Symbol nonzero_symbol(const Field& f) { return Symbol(1 + below(f.q() - 1)); }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace bnec
