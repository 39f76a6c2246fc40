// Test-side oracles, kept independent of the implementation paths they check.
#pragma once

#include <bitset>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "fuzex/bitstring.hpp"
#include "fuzex/extractor.hpp"

namespace oracles {

using BigFloat = boost::multiprecision::cpp_bin_float_50;

// Schoolbook carry-less multiply into 2*lambda-1 coefficients, then reduce by
// polynomial long division from the top. Structurally different from the
// library's peasant multiply with step reduction.
inline std::pair<uint64_t, uint64_t> gf_mul(uint64_t a_lo, uint64_t a_hi, uint64_t b_lo,
                                            uint64_t b_hi, unsigned lambda,
                                            uint64_t mod_lo) {
    auto bit_of = [](uint64_t lo, uint64_t hi, unsigned i) {
        return i < 64 ? (lo >> i) & 1 : (hi >> (i - 64)) & 1;
    };
    std::bitset<256> prod;
    for (unsigned i = 0; i < lambda; i++) {
        if (!bit_of(a_lo, a_hi, i)) continue;
        for (unsigned j = 0; j < lambda; j++)
            if (bit_of(b_lo, b_hi, j)) prod.flip(i + j);
    }
    for (int k = int(2 * lambda) - 2; k >= int(lambda); k--) {
        if (!prod[size_t(k)]) continue;
        prod.flip(size_t(k));
        for (unsigned m = 0; m < 64 && m < lambda; m++)
            if ((mod_lo >> m) & 1) prod.flip(size_t(k) - lambda + m);
    }
    uint64_t lo = 0, hi = 0;
    for (unsigned i = 0; i < lambda && i < 64; i++)
        if (prod[i]) lo |= uint64_t{1} << i;
    for (unsigned i = 64; i < lambda; i++)
        if (prod[i]) hi |= uint64_t{1} << (i - 64);
    return {lo, hi};
}

inline uint64_t gf_mul64(uint64_t a, uint64_t b, unsigned lambda, uint64_t mod_lo) {
    return gf_mul(a, 0, b, 0, lambda, mod_lo).first;
}

inline uint64_t gf_pow64(uint64_t a, uint64_t e, unsigned lambda, uint64_t mod_lo) {
    uint64_t r = 1;
    for (uint64_t i = 0; i < e; i++) r = gf_mul64(r, a, lambda, mod_lo);
    return r;
}

// T = x^L + x^2 m(x) + x y by direct power sums over the oracle field ops.
inline uint64_t mac_tag(const std::vector<uint64_t>& m, uint64_t x, uint64_t y,
                        uint32_t L, unsigned lambda, uint64_t mod_lo) {
    uint64_t t = gf_pow64(x, L, lambda, mod_lo);
    for (size_t i = 0; i < m.size(); i++)
        t ^= gf_mul64(m[i], gf_pow64(x, uint64_t(i) + 2, lambda, mod_lo), lambda, mod_lo);
    t ^= gf_mul64(x, y, lambda, mod_lo);
    return t;
}

// Explicit nu x m matrix from the fixed layout (seed bit k on diagonal
// i - j + (m-1)), then a plain row-by-row dot product.
inline fuzex::BitString toeplitz_multiply(const fuzex::BitString& w,
                                          const fuzex::ToeplitzSeed& seed) {
    fuzex::BitString out(seed.nu);
    for (uint32_t i = 0; i < seed.nu; i++) {
        bool acc = false;
        for (uint32_t j = 0; j < seed.m; j++) {
            bool tij = seed.bits.bit(size_t(i) - j + seed.m - 1);
            acc ^= tij && w.bit(j);
        }
        out.set_bit(i, acc);
    }
    return out;
}

// High-precision evaluation of the printed correctness formula.
inline BigFloat correctness_formula(uint32_t n, uint32_t m, uint32_t t_prime,
                                    uint32_t ell, uint32_t t,
                                    std::optional<std::pair<uint32_t, uint32_t>> mac =
                                        std::nullopt) {
    BigFloat q = pow(BigFloat(1) - BigFloat(t_prime) / (BigFloat(n) - m), int(m));
    BigFloat miss = pow(BigFloat(1) - q, int(ell));
    BigFloat coll = BigFloat(ell) * pow(BigFloat(2), -int(t));
    if (mac) {
        auto [L, lambda] = *mac;
        coll *= BigFloat(L) * pow(BigFloat(2), -int(lambda));
    }
    return miss + coll;
}

// Increasing scan under the same 50/50 budget split the implementation uses.
inline std::optional<uint32_t> solve_ell_scan(uint32_t n, uint32_t m, uint32_t t_prime,
                                              uint32_t t, BigFloat target,
                                              uint32_t cap = 1u << 20) {
    BigFloat half = target / 2;
    BigFloat q = pow(BigFloat(1) - BigFloat(t_prime) / (BigFloat(n) - m), int(m));
    BigFloat coll_unit = pow(BigFloat(2), -int(t));
    if (coll_unit > half) return std::nullopt;
    for (uint32_t ell = 1; ell <= cap; ell++) {
        if (pow(BigFloat(1) - q, int(ell)) <= half) {
            if (BigFloat(ell) * coll_unit > half) return std::nullopt;
            return ell;
        }
    }
    return std::nullopt;
}

}  // namespace oracles
