#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fuzex/bitstring.hpp"
#include "fuzex/params.hpp"
#include "fuzex/sampler.hpp"

namespace fuzex {

class Rng;

struct ExtractedKey {
    BitString bits;  // length xi

    bool operator==(const ExtractedKey&) const = default;
};

/// Reusable-FE helper data: one (p_i, A_i) pair per subsample. The index sets
/// travel inside the helper data; Z is shared out of band and stored beside
/// this by the CLI.
struct RfeHelperData {
    struct Entry {
        BitString p;  // length nu = xi + t
        IndexSet a;

        bool operator==(const Entry&) const = default;
    };
    std::vector<Entry> entries;
    Params params;

    ParamsDigest digest() const { return {params.n, params.m, params.ell, params.nu}; }
};

/// Gen of the reusable FE: R uniform, fresh A_i per call,
/// p_i = (0^t | R) xor E(W[A_i], Z).
std::pair<ExtractedKey, RfeHelperData> rfe_gen(const BitString& w, const ToeplitzSeed& z,
                                               const Params& params, Rng& rng);

/// Rep: scan i ascending; first i whose t-bit prefix of d_i xor p_i is zero
/// wins and its suffix is returned. nullopt = no match (bottom).
std::optional<ExtractedKey> rfe_rep(const BitString& w2, const RfeHelperData& helper,
                                    const ToeplitzSeed& z);

/// Rep with instrumentation for the experiment harness. prefix_hit is filled
/// for every index (the scan is not cut short), key/matched_index follow the
/// first-match-wins rule.
struct RfeRepTrace {
    std::optional<ExtractedKey> key;
    int matched_index = -1;           // first prefix match, -1 if none
    std::vector<uint8_t> prefix_hit;  // per-index prefix-collision flags
};
RfeRepTrace rfe_rep_trace(const BitString& w2, const RfeHelperData& helper,
                          const ToeplitzSeed& z);

}  // namespace fuzex
