#include "fuzex/rfe.hpp"

#include <stdexcept>

#include "fuzex/extractor.hpp"
#include "fuzex/rng.hpp"

namespace fuzex {

namespace {

void check_dims(const BitString& w, const ToeplitzSeed& z, const Params& p) {
    if (w.size() != p.n) throw std::invalid_argument("sample length must equal n");
    if (p.nu != p.xi + p.t) throw std::invalid_argument("nu must equal xi + t");
    if (z.m != p.m || z.nu != p.nu)
        throw std::invalid_argument("extractor seed shape does not match params");
}

}  // namespace

std::pair<ExtractedKey, RfeHelperData> rfe_gen(const BitString& w, const ToeplitzSeed& z,
                                               const Params& params, Rng& rng) {
    check_dims(w, z, params);
    // draw order is pinned for replay: R first, then A_1..A_ell
    ExtractedKey key{rng.bits(params.xi)};
    BitString padded = BitString::zeros(params.t).concat(key.bits);

    RfeHelperData helper;
    helper.params = params;
    helper.entries.reserve(params.ell);
    for (uint32_t i = 0; i < params.ell; i++) {
        IndexSet a = sample_index_set(params.n, params.m, rng);
        BitString d = extract(subsample(w, a), z);
        helper.entries.push_back({padded ^ d, std::move(a)});
    }
    return {std::move(key), std::move(helper)};
}

std::optional<ExtractedKey> rfe_rep(const BitString& w2, const RfeHelperData& helper,
                                    const ToeplitzSeed& z) {
    check_dims(w2, z, helper.params);
    const uint32_t t = helper.params.t, nu = helper.params.nu;
    for (const auto& entry : helper.entries) {
        BitString v = extract(subsample(w2, entry.a), z) ^ entry.p;
        if (v.slice(0, t).is_zero())
            return ExtractedKey{v.slice(t, nu - t)};  // first match wins
    }
    return std::nullopt;
}

RfeRepTrace rfe_rep_trace(const BitString& w2, const RfeHelperData& helper,
                          const ToeplitzSeed& z) {
    check_dims(w2, z, helper.params);
    const uint32_t t = helper.params.t, nu = helper.params.nu;
    RfeRepTrace trace;
    trace.prefix_hit.resize(helper.entries.size(), 0);
    for (size_t i = 0; i < helper.entries.size(); i++) {
        BitString v = extract(subsample(w2, helper.entries[i].a), z) ^ helper.entries[i].p;
        if (v.slice(0, t).is_zero()) {
            trace.prefix_hit[i] = 1;
            if (trace.matched_index < 0) {
                trace.matched_index = int(i);
                trace.key = ExtractedKey{v.slice(t, nu - t)};
            }
        }
    }
    return trace;
}

}  // namespace fuzex
