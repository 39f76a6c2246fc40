#pragma once

#include <cstdint>

#include "fuzex/bitstring.hpp"
#include "fuzex/field.hpp"

namespace fuzex {

class Rng;

/// One-time MAC key: x, y uniform and independent over GF(2^lambda).
struct MacKey {
    FieldElement x;
    FieldElement y;
};

struct Tag {
    FieldElement value;

    bool operator==(const Tag&) const = default;
};

MacKey mac_keygen(const Field& field, Rng& rng);

/// Split a 2*lambda-bit string into (x, y): first lambda bits -> x.
MacKey mac_key_from_bits(const Field& field, const BitString& r1);

/// T = x^L + x^2 * m(x) + x*y over GF(2^lambda), with m the encoded message
/// (degree <= L-5). Requires L >= 5, L = 3 mod 4, and p to fit (L-4)*lambda
/// bits.
Tag mac_eval(const Field& field, const BitString& p, const MacKey& key, uint32_t L);

bool mac_verify(const Field& field, const BitString& p, const Tag& tag,
                const MacKey& key, uint32_t L);

/// Verification under the shifted key (x + d1, y + d2) -- the harness's model
/// of a key-shift attack arising from OTP malleability of helper data.
bool shifted_verify(const Field& field, const BitString& p2, const Tag& tag2,
                    const MacKey& key, FieldElement d1, FieldElement d2, uint32_t L);

}  // namespace fuzex
