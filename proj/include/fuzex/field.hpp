#pragma once

#include <cstdint>
#include <vector>

#include "fuzex/bitstring.hpp"

namespace fuzex {

class Rng;

/// Element of GF(2^lambda), polynomial basis: bit i of (hi:lo) is the
/// coefficient of x^i. Width is carried so mixed-field use faults early.
struct FieldElement {
    uint64_t lo = 0;
    uint64_t hi = 0;
    uint16_t width = 0;

    bool operator==(const FieldElement&) const = default;
    bool is_zero() const { return lo == 0 && hi == 0; }
};

/// Message coefficient vector for the tag polynomial: length L-4, trailing
/// pad coefficients zero.
using MessagePoly = std::vector<FieldElement>;

/// GF(2^lambda) arithmetic for a fixed lambda.
///
/// Reduction polynomials, one per supported width (low-weight irreducibles):
///   lambda = 3    x^3 + x + 1
///   lambda = 8    x^8 + x^4 + x^3 + x + 1
///   lambda = 16   x^16 + x^5 + x^3 + x + 1
///   lambda = 128  x^128 + x^7 + x^2 + x + 1
class Field {
public:
    explicit Field(unsigned lambda);

    unsigned lambda() const { return lambda_; }
    /// Low part of the reduction polynomial (without the x^lambda term).
    uint64_t modulus_low() const { return mod_lo_; }

    FieldElement zero() const { return {0, 0, uint16_t(lambda_)}; }
    FieldElement one() const { return {1, 0, uint16_t(lambda_)}; }
    FieldElement from_u64(uint64_t v) const;
    FieldElement random(Rng& rng) const;

    FieldElement add(FieldElement a, FieldElement b) const;
    FieldElement mul(FieldElement a, FieldElement b) const;
    FieldElement pow(FieldElement a, uint64_t e) const;
    /// a^(2^lambda - 2); a must be nonzero.
    FieldElement inverse(FieldElement a) const;

    /// lambda bits starting at pos; bit pos+i becomes the coefficient of x^i.
    FieldElement from_bits(const BitString& bits, size_t pos) const;
    void to_bits(FieldElement a, BitString& bits, size_t pos) const;
    BitString to_bits(FieldElement a) const;

    /// Encode a bit string as the L-4 coefficient vector of Algorithm Eval:
    /// lambda-bit blocks in stream order, final block zero-padded high,
    /// vector zero-extended to length L-4. Throws if p does not fit.
    MessagePoly encode_message(const BitString& p, uint32_t L) const;

    static bool supported(unsigned lambda);

private:
    void check_width(FieldElement a) const;

    unsigned lambda_;
    uint64_t mod_lo_;
};

}  // namespace fuzex
