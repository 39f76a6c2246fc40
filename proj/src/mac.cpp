#include "fuzex/mac.hpp"

#include <stdexcept>

#include "fuzex/rng.hpp"

namespace fuzex {

namespace {

void check_degree_parameter(uint32_t L) {
    if (L < 5) throw std::invalid_argument("MAC degree parameter L must be >= 5");
    if (L % 4 != 3) throw std::invalid_argument("MAC degree parameter L must be 3 mod 4");
}

FieldElement eval_with_key(const Field& f, const BitString& p,
                           FieldElement x, FieldElement y, uint32_t L) {
    check_degree_parameter(L);
    std::vector<FieldElement> m = f.encode_message(p, L);
    // Horner: m(x) = m_0 + x(m_1 + x(...))
    FieldElement mx = f.zero();
    for (size_t i = m.size(); i-- > 0;) mx = f.add(f.mul(mx, x), m[i]);
    FieldElement t = f.pow(x, L);
    t = f.add(t, f.mul(f.mul(x, x), mx));
    t = f.add(t, f.mul(x, y));
    return t;
}

}  // namespace

MacKey mac_keygen(const Field& field, Rng& rng) {
    return {field.random(rng), field.random(rng)};
}

MacKey mac_key_from_bits(const Field& field, const BitString& r1) {
    if (r1.size() != 2 * size_t(field.lambda()))
        throw std::invalid_argument("MAC key material must be exactly 2*lambda bits");
    return {field.from_bits(r1, 0), field.from_bits(r1, field.lambda())};
}

Tag mac_eval(const Field& field, const BitString& p, const MacKey& key, uint32_t L) {
    return {eval_with_key(field, p, key.x, key.y, L)};
}

bool mac_verify(const Field& field, const BitString& p, const Tag& tag,
                const MacKey& key, uint32_t L) {
    return mac_eval(field, p, key, L) == tag;
}

bool shifted_verify(const Field& field, const BitString& p2, const Tag& tag2,
                    const MacKey& key, FieldElement d1, FieldElement d2, uint32_t L) {
    FieldElement xs = field.add(key.x, d1);
    FieldElement ys = field.add(key.y, d2);
    return eval_with_key(field, p2, xs, ys, L) == tag2.value;
}

}  // namespace fuzex
