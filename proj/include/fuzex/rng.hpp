#pragma once

#include <cstdint>
#include <random>

#include "fuzex/bitstring.hpp"

namespace fuzex {

/// Deterministic random stream. Raw mt19937_64 output plus our own rejection
/// sampling, so a seed produces the same byte stream on every platform
/// (std:: distributions are not portable).
class Rng {
public:
    explicit Rng(uint64_t seed) : seed_(seed), gen_(seed) {}

    uint64_t seed() const { return seed_; }

    uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, bound), bound >= 1. Rejection sampling.
    uint64_t below(uint64_t bound);

    bool bit() { return next_u64() & 1; }

    BitString bits(size_t n) { return BitString::random(n, *this); }

    /// Independent derived stream; replayable from (seed, label).
    Rng fork(uint64_t label) const { return Rng(mix(seed_, label)); }

    /// splitmix64-style mixing, used for seed derivation.
    static uint64_t mix(uint64_t a, uint64_t b);

private:
    uint64_t seed_;
    std::mt19937_64 gen_;
};

}  // namespace fuzex
