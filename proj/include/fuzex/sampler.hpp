#pragma once

#include <cstdint>
#include <vector>

#include "fuzex/bitstring.hpp"
#include "fuzex/extractor.hpp"

namespace fuzex {

class Rng;
struct Params;

/// Ordered set of m distinct sample positions; W[A] is read in this order.
struct IndexSet {
    std::vector<uint32_t> indices;

    bool operator==(const IndexSet&) const = default;
};

/// Binds a CRS (or helper data) to the dimensions it was generated for.
struct ParamsDigest {
    uint32_t n = 0, m = 0, ell = 0, nu = 0;

    bool operator==(const ParamsDigest&) const = default;
};

/// Common random string: the srrFE's shared index sets and extractor seed.
/// Generated from system/seed randomness only, never from the source.
struct Crs {
    std::vector<IndexSet> index_sets;
    ToeplitzSeed seed;
    ParamsDigest digest;
};

/// m distinct indices uniform over size-m subsets of [0, n), order as drawn
/// (partial Fisher-Yates).
IndexSet sample_index_set(uint32_t n, uint32_t m, Rng& rng);

Crs generate_crs(const Params& params, Rng& rng);

/// Output bit j = w[a.indices[j]].
BitString subsample(const BitString& w, const IndexSet& a);

}  // namespace fuzex
