#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fuzex/bitstring.hpp"

namespace fuzex {

class Rng;

/// Synthetic stand-ins for the structured sources the constructions assume.
/// Each model certifies a conservative (alpha, N) for a given subsample size;
/// certified values are never over-claimed.
struct SourceModel {
    enum class Kind : uint8_t { Uniform, BlockStructured, BiasedBit };

    Kind kind = Kind::Uniform;
    uint32_t n = 0;
    uint32_t blocks = 0;     // block-structured: block count b
    uint32_t seed_bits = 0;  // block-structured: fresh bits per block k
    double rho = 0.5;        // biased-bit: P[bit = 1]

    static SourceModel uniform(uint32_t n);
    static SourceModel biased(uint32_t n, double rho);
    /// n bits in b equal blocks; each block is a fixed public linear
    /// expansion of k fresh uniform bits (systematic in the first k bits).
    static SourceModel block_structured(uint32_t n, uint32_t b, uint32_t k);

    BitString draw(Rng& rng) const;

    /// Conservative certified average conditional min-entropy of a random
    /// m-subsample given any cond_budget revealed positions.
    ///   uniform:     m                  (disjoint conditioning, N <= n-m)
    ///   biased:      m * -log2(max(rho, 1-rho))   (bits are iid)
    ///   block:       -log2 E_A[2^-max(0, rank(A) - N)], exhaustively over
    ///                subsets when feasible (rank of the expansion map
    ///                restricted to A; each revealed position can erase at
    ///                most one seed bit of entropy)
    long double certified_alpha(uint32_t m, uint64_t cond_budget) const;

    /// Largest N the model's certification covers.
    uint64_t certified_budget(uint32_t m) const { return n > m ? n - m : 0; }

    /// Block value bit j as a function of the block's seed bits (the fixed
    /// public expansion map).
    bool expansion_bit(uint32_t j, uint64_t seed) const;
};

/// Bounded-weight noise applied between enrollment and reproduction.
struct NoiseModel {
    enum class Kind : uint8_t { RandomT, Shift };

    Kind kind = Kind::RandomT;
    uint32_t t_prime = 0;
    BitString shift_offset;  // Shift: fixed offset, weight <= t_prime

    static NoiseModel random_t(uint32_t t_prime);
    static NoiseModel shift(BitString offset, uint32_t t_prime);
};

/// w' within Hamming distance t' of w. RandomT flips a uniformly chosen
/// size-t' index set; Shift xors the fixed offset.
BitString perturb(const BitString& w, const NoiseModel& noise, Rng& rng);

enum class CorrelationKind : uint8_t { Shift, Arbitrary };

/// eta correlated samples for the reusability games. Shift mode applies
/// adversary-style fixed offsets d^i (weight <= t_prime); Arbitrary mode
/// applies caller-supplied deterministic transforms, rejected if any output
/// strays beyond t_prime of the base sample.
std::vector<BitString> correlated_family(
    const SourceModel& model, uint32_t eta, CorrelationKind correlation,
    uint32_t t_prime, Rng& rng,
    const std::vector<std::function<BitString(const BitString&)>>* transforms = nullptr);

}  // namespace fuzex
