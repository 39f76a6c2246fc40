#include "fuzex/extractor.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "fuzex/rng.hpp"

namespace fuzex {

ToeplitzSeed make_toeplitz_seed(uint32_t m, uint32_t nu, Rng& rng) {
    if (m == 0 || nu == 0) throw std::invalid_argument("degenerate Toeplitz shape");
    return {BitString::random(size_t(m) + nu - 1, rng), m, nu};
}

ToeplitzSeed toeplitz_seed_from_bits(BitString bits, uint32_t m, uint32_t nu) {
    if (bits.size() != size_t(m) + nu - 1)
        throw std::invalid_argument("Toeplitz seed length must be m + nu - 1");
    return {std::move(bits), m, nu};
}

// Row i of the matrix read left to right is seed[i+m-1], seed[i+m-2], ...,
// seed[i]. Reversing the seed turns each row into a contiguous window, so a
// row-by-input dot product becomes window AND input, parity.
BitString extract(const BitString& w, const ToeplitzSeed& seed) {
    if (w.size() != seed.m)
        throw std::invalid_argument("extractor input length must equal seed.m");
    const uint32_t m = seed.m, nu = seed.nu;
    BitString rev(seed.bits.size());
    for (size_t k = 0; k < seed.bits.size(); k++)
        rev.set_bit(k, seed.bits.bit(seed.bits.size() - 1 - k));

    BitString out(nu);
    for (uint32_t i = 0; i < nu; i++) {
        size_t start = size_t(nu) - 1 - i;  // row i = rev[start .. start+m)
        uint64_t acc = 0;
        for (uint32_t done = 0; done < m; done += 64) {
            uint32_t chunk = std::min<uint32_t>(64, m - done);
            acc ^= rev.window64(start + done, chunk) & w.window64(done, chunk);
        }
        out.set_bit(i, std::popcount(acc) & 1);
    }
    return out;
}

int64_t lhl_max_output(long double alpha, long double eps) {
    if (alpha <= 0 || eps <= 0 || eps >= 1)
        throw std::invalid_argument("lhl_max_output needs alpha > 0 and 0 < eps < 1");
    long double v = alpha + 2.0L - 2.0L * std::log2(1.0L / eps);
    if (v < 0) return 0;
    return int64_t(std::floor(v));
}

long double lhl_epsilon(uint32_t nu, long double alpha) {
    return 0.5L * std::sqrt(std::exp2((long double)nu - alpha));
}

long double universality_exact(uint32_t m, uint32_t nu) {
    if (m > 16 || size_t(m) + nu - 1 > 24)
        throw std::invalid_argument("exhaustive universality check limited to tiny shapes");
    const uint64_t seeds = uint64_t{1} << (m + nu - 1);
    const uint64_t inputs = uint64_t{1} << m;
    long double worst = 0;
    for (uint64_t a = 0; a < inputs; a++) {
        for (uint64_t b = a + 1; b < inputs; b++) {
            uint64_t collisions = 0;
            for (uint64_t s = 0; s < seeds; s++) {
                BitString sb(size_t(m) + nu - 1);
                sb.set_window64(0, m + nu - 1, s);
                ToeplitzSeed seed{sb, m, nu};
                BitString wa(m), wb(m);
                wa.set_window64(0, m, a);
                wb.set_window64(0, m, b);
                if (extract(wa, seed) == extract(wb, seed)) collisions++;
            }
            long double rate = (long double)collisions / seeds;
            if (rate > worst) worst = rate;
        }
    }
    return worst;
}

long double universality_estimate(uint32_t m, uint32_t nu, uint64_t trials, Rng& rng) {
    if (trials == 0) throw std::invalid_argument("trials must be >= 1");
    uint64_t collisions = 0;
    for (uint64_t t = 0; t < trials; t++) {
        ToeplitzSeed seed = make_toeplitz_seed(m, nu, rng);
        BitString a = BitString::random(m, rng);
        BitString b = BitString::random(m, rng);
        while (b == a) b = BitString::random(m, rng);
        if (extract(a, seed) == extract(b, seed)) collisions++;
    }
    return (long double)collisions / trials;
}

}  // namespace fuzex
