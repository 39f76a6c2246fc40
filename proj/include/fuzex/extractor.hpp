#pragma once

#include <cstdint>

#include "fuzex/bitstring.hpp"

namespace fuzex {

class Rng;

/// Seed of a nu x m Toeplitz matrix over GF(2). Seed bit k sits on the
/// diagonal T[i][j] with k = i - j + (m - 1); output bit i is row i dotted
/// with the input.
struct ToeplitzSeed {
    BitString bits;  // length m + nu - 1
    uint32_t m = 0;
    uint32_t nu = 0;

    bool operator==(const ToeplitzSeed&) const = default;
};

ToeplitzSeed make_toeplitz_seed(uint32_t m, uint32_t nu, Rng& rng);
ToeplitzSeed toeplitz_seed_from_bits(BitString bits, uint32_t m, uint32_t nu);

/// Toeplitz matrix-vector product over GF(2); linear in w.
BitString extract(const BitString& w, const ToeplitzSeed& seed);

/// Leftover hash lemma accounting for a universal family:
/// max output length = floor(alpha + 2 - 2*log2(1/eps)), clamped at 0.
int64_t lhl_max_output(long double alpha, long double eps);

/// 0.5 * sqrt(2^(nu - alpha)) -- the extraction error the LHL guarantees.
long double lhl_epsilon(uint32_t nu, long double alpha);

/// Declared extractor quality record; valid when eps respects the LHL bound.
struct ExtractorProfile {
    uint32_t m = 0;
    long double alpha = 0;
    uint32_t nu = 0;
    long double eps = 0;

    bool valid() const { return eps >= lhl_epsilon(nu, alpha); }
};

/// Exhaustive max collision probability over all seeds and all distinct
/// input pairs. Only sensible for tiny (m, nu).
long double universality_exact(uint32_t m, uint32_t nu);

/// Monte Carlo collision-rate estimate over random distinct pairs and seeds.
long double universality_estimate(uint32_t m, uint32_t nu, uint64_t trials, Rng& rng);

}  // namespace fuzex
