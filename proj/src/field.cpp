#include "fuzex/field.hpp"

#include <stdexcept>

#include "fuzex/rng.hpp"

namespace fuzex {

namespace {

uint64_t reduction_poly_low(unsigned lambda) {
    switch (lambda) {
        case 3:   return 0x3;          // x + 1
        case 8:   return 0x1B;         // x^4 + x^3 + x + 1
        case 16:  return 0x2B;         // x^5 + x^3 + x + 1
        case 128: return 0x87;         // x^7 + x^2 + x + 1
        default:  return 0;
    }
}

}  // namespace

bool Field::supported(unsigned lambda) { return reduction_poly_low(lambda) != 0; }

Field::Field(unsigned lambda) : lambda_(lambda), mod_lo_(reduction_poly_low(lambda)) {
    if (mod_lo_ == 0)
        throw std::invalid_argument("unsupported field width (lambda must be 3, 8, 16 or 128)");
}

void Field::check_width(FieldElement a) const {
    if (a.width != lambda_)
        throw std::invalid_argument("field element width mismatch");
}

FieldElement Field::from_u64(uint64_t v) const {
    if (lambda_ < 64 && (v >> lambda_) != 0)
        throw std::invalid_argument("value does not fit in the field width");
    return {v, 0, uint16_t(lambda_)};
}

FieldElement Field::random(Rng& rng) const {
    FieldElement r = zero();
    r.lo = rng.next_u64();
    if (lambda_ > 64) {
        r.hi = rng.next_u64();
        if (lambda_ < 128) r.hi &= (uint64_t{1} << (lambda_ - 64)) - 1;
    } else if (lambda_ < 64) {
        r.lo &= (uint64_t{1} << lambda_) - 1;
    }
    return r;
}

FieldElement Field::add(FieldElement a, FieldElement b) const {
    check_width(a);
    check_width(b);
    return {a.lo ^ b.lo, a.hi ^ b.hi, uint16_t(lambda_)};
}

// Peasant multiply with step reduction: shift a up one coefficient per bit of
// b, folding the x^lambda overflow back in through the reduction polynomial.
FieldElement Field::mul(FieldElement a, FieldElement b) const {
    check_width(a);
    check_width(b);
    uint64_t r_lo = 0, r_hi = 0;
    uint64_t a_lo = a.lo, a_hi = a.hi;
    for (unsigned i = 0; i < lambda_; i++) {
        bool bi = (i < 64) ? ((b.lo >> i) & 1) : ((b.hi >> (i - 64)) & 1);
        if (bi) {
            r_lo ^= a_lo;
            r_hi ^= a_hi;
        }
        bool carry = (lambda_ <= 64) ? ((a_lo >> (lambda_ - 1)) & 1)
                                     : ((a_hi >> (lambda_ - 65)) & 1);
        a_hi = (a_hi << 1) | (a_lo >> 63);
        a_lo <<= 1;
        if (carry) a_lo ^= mod_lo_;
        if (lambda_ <= 64) {
            a_lo &= (lambda_ < 64) ? (uint64_t{1} << lambda_) - 1 : ~uint64_t{0};
            a_hi = 0;
        } else if (lambda_ < 128) {
            a_hi &= (uint64_t{1} << (lambda_ - 64)) - 1;
        }
    }
    return {r_lo, r_hi, uint16_t(lambda_)};
}

FieldElement Field::pow(FieldElement a, uint64_t e) const {
    check_width(a);
    FieldElement result = one();
    FieldElement base = a;
    while (e != 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

FieldElement Field::inverse(FieldElement a) const {
    check_width(a);
    if (a.is_zero()) throw std::domain_error("zero has no inverse");
    // a^(2^lambda - 2) = prod_{i=1..lambda-1} a^(2^i)
    FieldElement s = a;
    FieldElement r = one();
    for (unsigned i = 1; i < lambda_; i++) {
        s = mul(s, s);
        r = mul(r, s);
    }
    return r;
}

FieldElement Field::from_bits(const BitString& bits, size_t pos) const {
    if (pos + lambda_ > bits.size())
        throw std::out_of_range("field element read past end of bit string");
    FieldElement r = zero();
    r.lo = bits.window64(pos, std::min<unsigned>(lambda_, 64));
    if (lambda_ > 64) r.hi = bits.window64(pos + 64, lambda_ - 64);
    return r;
}

void Field::to_bits(FieldElement a, BitString& bits, size_t pos) const {
    check_width(a);
    bits.set_window64(pos, std::min<unsigned>(lambda_, 64), a.lo);
    if (lambda_ > 64) bits.set_window64(pos + 64, lambda_ - 64, a.hi);
}

BitString Field::to_bits(FieldElement a) const {
    BitString r(lambda_);
    to_bits(a, r, 0);
    return r;
}

MessagePoly Field::encode_message(const BitString& p, uint32_t L) const {
    if (L < 5) throw std::invalid_argument("L must be at least 5");
    size_t coeffs = size_t(L) - 4;
    if (p.size() > coeffs * lambda_)
        throw std::invalid_argument("message too long for declared L");
    MessagePoly m(coeffs, zero());
    for (size_t j = 0; j * lambda_ < p.size(); j++) {
        size_t pos = j * lambda_;
        size_t len = std::min<size_t>(lambda_, p.size() - pos);
        FieldElement e = zero();
        e.lo = p.window64(pos, std::min<size_t>(len, 64));
        if (len > 64) e.hi = p.window64(pos + 64, len - 64);
        m[j] = e;
    }
    return m;
}

}  // namespace fuzex
