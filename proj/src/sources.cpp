#include "fuzex/sources.hpp"

#include <cmath>
#include <stdexcept>

#include "fuzex/rng.hpp"
#include "fuzex/sampler.hpp"

namespace fuzex {

SourceModel SourceModel::uniform(uint32_t n) {
    SourceModel m;
    m.kind = Kind::Uniform;
    m.n = n;
    return m;
}

SourceModel SourceModel::biased(uint32_t n, double rho) {
    if (rho < 0.0 || rho > 1.0) throw std::invalid_argument("rho must be in [0,1]");
    SourceModel m;
    m.kind = Kind::BiasedBit;
    m.n = n;
    m.rho = rho;
    return m;
}

SourceModel SourceModel::block_structured(uint32_t n, uint32_t b, uint32_t k) {
    if (b == 0 || n % b != 0) throw std::invalid_argument("block count must divide n");
    if (k == 0 || k > n / b) throw std::invalid_argument("need 1 <= k <= block size");
    if (k > 63) throw std::invalid_argument("per-block seed limited to 63 bits");
    SourceModel m;
    m.kind = Kind::BlockStructured;
    m.n = n;
    m.blocks = b;
    m.seed_bits = k;
    return m;
}

bool SourceModel::expansion_bit(uint32_t j, uint64_t seed) const {
    // systematic in the first k bits; later bits mix two seed positions
    if (j < seed_bits) return (seed >> j) & 1;
    uint32_t a = j % seed_bits, b = (j + 1) % seed_bits;
    if (a == b) return (seed >> a) & 1;
    return ((seed >> a) ^ (seed >> b)) & 1;
}

BitString SourceModel::draw(Rng& rng) const {
    switch (kind) {
        case Kind::Uniform:
            return BitString::random(n, rng);
        case Kind::BiasedBit: {
            BitString w(n);
            // 32-bit threshold comparison keeps the draw deterministic
            uint64_t threshold = uint64_t(std::round(rho * 4294967296.0));
            for (uint32_t i = 0; i < n; i++)
                w.set_bit(i, rng.below(uint64_t{1} << 32) < threshold);
            return w;
        }
        case Kind::BlockStructured: {
            BitString w(n);
            uint32_t block_size = n / blocks;
            for (uint32_t b = 0; b < blocks; b++) {
                uint64_t seed = rng.below(uint64_t{1} << seed_bits);
                for (uint32_t j = 0; j < block_size; j++)
                    w.set_bit(size_t(b) * block_size + j, expansion_bit(j, seed));
            }
            return w;
        }
    }
    throw std::logic_error("unreachable");
}

namespace {

// rank over GF(2) of the expansion map restricted to the given positions:
// each position is one row over the b*k seed bits; XOR basis by leading bit
uint32_t restricted_rank(const SourceModel& model, const std::vector<uint32_t>& positions) {
    uint32_t block_size = model.n / model.blocks;
    uint64_t basis[64] = {0};
    uint32_t rank = 0;
    for (uint32_t pos : positions) {
        uint32_t b = pos / block_size, j = pos % block_size;
        uint64_t row = 0;
        for (uint32_t s = 0; s < model.seed_bits; s++)
            if (model.expansion_bit(j, uint64_t{1} << s))
                row |= uint64_t{1} << (size_t(b) * model.seed_bits + s);
        while (row) {
            int lead = 63 - __builtin_clzll(row);
            if (basis[lead] == 0) {
                basis[lead] = row;
                rank++;
                break;
            }
            row ^= basis[lead];
        }
    }
    return rank;
}

}  // namespace

long double SourceModel::certified_alpha(uint32_t m, uint64_t cond_budget) const {
    if (m > n) throw std::invalid_argument("subsample larger than sample");
    switch (kind) {
        case Kind::Uniform:
            if (cond_budget > certified_budget(m))
                throw std::invalid_argument("conditioning budget beyond certified N");
            return (long double)m;
        case Kind::BiasedBit: {
            double mx = std::max(rho, 1.0 - rho);
            if (mx >= 1.0) return 0.0L;
            return (long double)m * -std::log2((long double)mx);
        }
        case Kind::BlockStructured: {
            if (uint64_t(blocks) * seed_bits > 63)
                throw std::invalid_argument("block model too large for exact certification");
            // E over unordered subsets A of 2^-(max(0, rank(A) - N)); exact
            // enumeration, so the certified value is never optimistic
            std::vector<uint32_t> comb(m);
            for (uint32_t i = 0; i < m; i++) comb[i] = i;
            long double sum = 0;
            uint64_t count = 0;
            const uint64_t kMaxSubsets = 1u << 22;
            while (true) {
                uint32_t rank = restricted_rank(*this, comb);
                long double eff = (long double)rank - (long double)cond_budget;
                if (eff < 0) eff = 0;
                sum += std::exp2(-eff);
                count++;
                if (count > kMaxSubsets)
                    throw std::invalid_argument("subset space too large for exact certification");
                // next combination
                int i = int(m) - 1;
                while (i >= 0 && comb[i] == n - m + i) i--;
                if (i < 0) break;
                comb[i]++;
                for (uint32_t j = i + 1; j < m; j++) comb[j] = comb[j - 1] + 1;
            }
            return -std::log2(sum / count);
        }
    }
    throw std::logic_error("unreachable");
}

NoiseModel NoiseModel::random_t(uint32_t t_prime) {
    NoiseModel nm;
    nm.kind = Kind::RandomT;
    nm.t_prime = t_prime;
    return nm;
}

NoiseModel NoiseModel::shift(BitString offset, uint32_t t_prime) {
    if (offset.hamming_weight() > t_prime)
        throw std::invalid_argument("shift offset heavier than t'");
    NoiseModel nm;
    nm.kind = Kind::Shift;
    nm.t_prime = t_prime;
    nm.shift_offset = std::move(offset);
    return nm;
}

BitString perturb(const BitString& w, const NoiseModel& noise, Rng& rng) {
    BitString out = w;
    switch (noise.kind) {
        case NoiseModel::Kind::RandomT: {
            if (noise.t_prime == 0) break;
            IndexSet flips = sample_index_set(uint32_t(w.size()), noise.t_prime, rng);
            for (uint32_t i : flips.indices) out.flip_bit(i);
            break;
        }
        case NoiseModel::Kind::Shift:
            out ^= noise.shift_offset;
            break;
    }
    size_t dist = (out ^ w).hamming_weight();
    if (dist > noise.t_prime) throw std::logic_error("perturbation exceeded t'");
    return out;
}

std::vector<BitString> correlated_family(
    const SourceModel& model, uint32_t eta, CorrelationKind correlation,
    uint32_t t_prime, Rng& rng,
    const std::vector<std::function<BitString(const BitString&)>>* transforms) {
    if (eta == 0) throw std::invalid_argument("eta must be >= 1");
    BitString base = model.draw(rng);
    std::vector<BitString> family;
    family.reserve(eta);
    family.push_back(base);
    for (uint32_t i = 1; i < eta; i++) {
        switch (correlation) {
            case CorrelationKind::Shift: {
                // adversary-style offsets: i-th offset flips min(t', i)
                // fixed positions spread over the sample
                BitString d(base.size());
                uint32_t weight = std::min(t_prime, i);
                for (uint32_t b = 0; b < weight; b++)
                    d.set_bit((size_t(i) * 13 + b * 7) % base.size(), true);
                family.push_back(base ^ d);
                break;
            }
            case CorrelationKind::Arbitrary: {
                if (transforms == nullptr || transforms->size() < eta - 1)
                    throw std::invalid_argument("arbitrary correlation needs eta-1 transforms");
                BitString w = (*transforms)[i - 1](base);
                if (w.size() != base.size() ||
                    (w ^ base).hamming_weight() > t_prime)
                    throw std::invalid_argument("transform violates the distance constraint");
                family.push_back(std::move(w));
                break;
            }
        }
    }
    return family;
}

}  // namespace fuzex
