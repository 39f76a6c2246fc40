#include "fuzex/rng.hpp"

#include <stdexcept>

namespace fuzex {

uint64_t Rng::below(uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("below(0)");
    if ((bound & (bound - 1)) == 0) return next_u64() & (bound - 1);
    // largest multiple of bound that fits in 2^64
    uint64_t limit = uint64_t(0) - (uint64_t(0) - bound) % bound;
    uint64_t v;
    do {
        v = next_u64();
    } while (limit != 0 && v >= limit);
    return v % bound;
}

uint64_t Rng::mix(uint64_t a, uint64_t b) {
    uint64_t z = a + 0x9e3779b97f4a7c15ULL + (b << 1 | 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace fuzex
