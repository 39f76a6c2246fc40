#include "fuzex/srrfe.hpp"

#include <stdexcept>

#include "fuzex/extractor.hpp"
#include "fuzex/rng.hpp"

namespace fuzex {

namespace {

void check_dims(const BitString& w, const Crs& crs, const Params& p) {
    if (w.size() != p.n) throw std::invalid_argument("sample length must equal n");
    if (p.nu != p.xi + p.t + 2 * p.lambda)
        throw std::invalid_argument("nu must equal xi + t + 2*lambda");
    ParamsDigest expect{p.n, p.m, p.ell, p.nu};
    if (!(crs.digest == expect))
        throw std::invalid_argument("CRS digest does not match params");
    if (crs.index_sets.size() != p.ell)
        throw std::invalid_argument("CRS index-set count does not match ell");
}

BitString concat_blocks(const std::vector<BitString>& p) {
    BitString msg;
    for (const auto& block : p) msg = msg.concat(block);
    return msg;
}

}  // namespace

std::pair<ExtractedKey, SrrfeHelperData> srrfe_gen(const BitString& w, const Crs& crs,
                                                   const Params& params, Rng& rng) {
    check_dims(w, crs, params);
    Field field(params.lambda);

    // draw order pinned for replay: R then R1
    ExtractedKey key{rng.bits(params.xi)};
    BitString r1 = rng.bits(2 * size_t(params.lambda));
    BitString padded = BitString::zeros(params.t).concat(key.bits).concat(r1);

    SrrfeHelperData helper;
    helper.params = params;
    helper.p.reserve(params.ell);
    for (uint32_t i = 0; i < params.ell; i++) {
        BitString d = extract(subsample(w, crs.index_sets[i]), crs.seed);
        helper.p.push_back(padded ^ d);
    }
    MacKey mk = mac_key_from_bits(field, r1);
    helper.tag = mac_eval(field, concat_blocks(helper.p), mk, params.L);
    return {std::move(key), std::move(helper)};
}

std::optional<ExtractedKey> srrfe_rep(const BitString& w2, const SrrfeHelperData& helper,
                                      const Crs& crs) {
    return srrfe_rep_trace(w2, helper, crs).key;
}

SrrfeRepTrace srrfe_rep_trace(const BitString& w2, const SrrfeHelperData& helper,
                              const Crs& crs) {
    const Params& prm = helper.params;
    check_dims(w2, crs, prm);
    if (helper.p.size() != prm.ell)
        throw std::invalid_argument("helper block count does not match ell");
    Field field(prm.lambda);
    const uint32_t t = prm.t, xi = prm.xi, lambda = prm.lambda;

    SrrfeRepTrace trace;
    BitString msg = concat_blocks(helper.p);
    for (size_t i = 0; i < helper.p.size(); i++) {
        BitString v = extract(subsample(w2, crs.index_sets[i]), crs.seed) ^ helper.p[i];
        if (!v.slice(0, t).is_zero()) continue;
        trace.prefix_hits++;
        // rho = suffix after the zero prefix: first xi bits -> R, last
        // 2*lambda bits -> R1
        BitString rho = v.slice(t, prm.nu - t);
        BitString cand_r = rho.slice(0, xi);
        BitString cand_r1 = rho.slice(xi, 2 * size_t(lambda));
        MacKey mk = mac_key_from_bits(field, cand_r1);
        if (mac_verify(field, msg, helper.tag, mk, prm.L)) {
            trace.matched_index = int(i);
            trace.key = ExtractedKey{std::move(cand_r)};
            return trace;
        }
        trace.tag_failures++;  // tag mismatch: keep scanning
    }
    return trace;
}

}  // namespace fuzex
