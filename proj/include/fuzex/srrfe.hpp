#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fuzex/bitstring.hpp"
#include "fuzex/mac.hpp"
#include "fuzex/params.hpp"
#include "fuzex/rfe.hpp"
#include "fuzex/sampler.hpp"

namespace fuzex {

class Rng;

/// srrFE helper data: the ell ciphertext blocks plus the key-shift-secure MAC
/// tag over their concatenation. Index sets come from the CRS and are never
/// part of the payload.
struct SrrfeHelperData {
    std::vector<BitString> p;  // ell blocks, each nu = xi + t + 2*lambda bits
    Tag tag;
    Params params;

    ParamsDigest digest() const { return {params.n, params.m, params.ell, params.nu}; }

    bool operator==(const SrrfeHelperData&) const = default;
};

/// Gen of the srrFE: R uniform (xi bits), R1 uniform (2*lambda bits),
/// p_i = (0^t | R | R1) xor E(W[A_i], Z), T = Eval(p_1|...|p_ell, R1, L).
std::pair<ExtractedKey, SrrfeHelperData> srrfe_gen(const BitString& w, const Crs& crs,
                                                   const Params& params, Rng& rng);

/// Rep: prefix check as in the rFE, then the recovered R1 must reproduce the
/// tag; a prefix match with a failed tag check continues the scan.
std::optional<ExtractedKey> srrfe_rep(const BitString& w2, const SrrfeHelperData& helper,
                                      const Crs& crs);

struct SrrfeRepTrace {
    std::optional<ExtractedKey> key;
    int matched_index = -1;
    uint32_t prefix_hits = 0;
    uint32_t tag_failures = 0;  // prefix matches whose tag check failed
};
SrrfeRepTrace srrfe_rep_trace(const BitString& w2, const SrrfeHelperData& helper,
                              const Crs& crs);

}  // namespace fuzex
