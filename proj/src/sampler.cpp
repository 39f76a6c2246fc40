#include "fuzex/sampler.hpp"

#include <stdexcept>
#include <unordered_map>

#include "fuzex/params.hpp"
#include "fuzex/rng.hpp"

namespace fuzex {

// Partial Fisher-Yates over a virtual pool 0..n-1; only touched slots are
// materialized, so large n costs O(m) instead of O(n).
IndexSet sample_index_set(uint32_t n, uint32_t m, Rng& rng) {
    if (m > n) throw std::invalid_argument("index set size m exceeds n");
    std::unordered_map<uint32_t, uint32_t> pool;
    auto slot = [&](uint32_t i) {
        auto it = pool.find(i);
        return it == pool.end() ? i : it->second;
    };
    IndexSet out;
    out.indices.reserve(m);
    for (uint32_t i = 0; i < m; i++) {
        uint32_t j = i + uint32_t(rng.below(n - i));
        out.indices.push_back(slot(j));
        pool[j] = slot(i);
    }
    return out;
}

Crs generate_crs(const Params& params, Rng& rng) {
    Crs crs;
    crs.digest = {params.n, params.m, params.ell, params.nu};
    crs.index_sets.reserve(params.ell);
    for (uint32_t i = 0; i < params.ell; i++)
        crs.index_sets.push_back(sample_index_set(params.n, params.m, rng));
    crs.seed = make_toeplitz_seed(params.m, params.nu, rng);
    return crs;
}

BitString subsample(const BitString& w, const IndexSet& a) {
    BitString out(a.indices.size());
    for (size_t j = 0; j < a.indices.size(); j++) {
        if (a.indices[j] >= w.size())
            throw std::out_of_range("subsample index out of range");
        out.set_bit(j, w.bit(a.indices[j]));
    }
    return out;
}

}  // namespace fuzex
