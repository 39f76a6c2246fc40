#include <doctest.h>

#include <cmath>
#include <map>

#include "fuzex/extractor.hpp"
#include "fuzex/rng.hpp"
#include "oracles.hpp"

using namespace fuzex;

TEST_SUITE_BEGIN("extractor");

TEST_CASE("zero input maps to zero for any seed") {
    Rng rng(10);
    for (int i = 0; i < 10; i++) {
        ToeplitzSeed z = make_toeplitz_seed(16, 8, rng);
        CHECK(extract(BitString::zeros(16), z).is_zero());
    }
}

TEST_CASE("matches the explicit matrix oracle on the frozen tiny example") {
    // m=3, nu=2, seed bits 1,0,0,0: row 0 = [s2 s1 s0] = [0 0 1],
    // row 1 = [s3 s2 s1] = [0 0 0]; w = 101 -> output 10
    ToeplitzSeed z = toeplitz_seed_from_bits(BitString::from_string("1000"), 3, 2);
    BitString w = BitString::from_string("101");
    BitString expect = oracles::toeplitz_multiply(w, z);
    CHECK(expect.to_string() == "10");
    CHECK(extract(w, z) == expect);
}

TEST_CASE("matches the matrix oracle on random shapes") {
    Rng rng(11);
    for (int trial = 0; trial < 50; trial++) {
        uint32_t m = 1 + uint32_t(rng.below(96));
        uint32_t nu = 1 + uint32_t(rng.below(64));
        ToeplitzSeed z = make_toeplitz_seed(m, nu, rng);
        BitString w = BitString::random(m, rng);
        CHECK(extract(w, z) == oracles::toeplitz_multiply(w, z));
    }
}

TEST_CASE("linearity holds exhaustively at m=8") {
    const uint32_t m = 8, nu = 4;
    Rng rng(12);
    for (int s = 0; s < 64; s++) {
        ToeplitzSeed z = make_toeplitz_seed(m, nu, rng);
        for (uint32_t a = 0; a < 256; a++)
            for (uint32_t b = 0; b < 256; b++) {
                BitString wa(m), wb(m), wc(m);
                wa.set_window64(0, m, a);
                wb.set_window64(0, m, b);
                wc.set_window64(0, m, a ^ b);
                CHECK((extract(wa, z) ^ extract(wb, z)) == extract(wc, z));
            }
    }
}

TEST_CASE("linearity at production size") {
    Rng rng(13);
    ToeplitzSeed z = make_toeplitz_seed(64, 40, rng);
    for (int i = 0; i < 100; i++) {
        BitString a = BitString::random(64, rng), b = BitString::random(64, rng);
        CHECK((extract(a, z) ^ extract(b, z)) == extract(a ^ b, z));
    }
}

TEST_CASE("universality: exhaustive at (4,2) and Monte Carlo at (16,8)") {
    CHECK(universality_exact(4, 2) <= 0.25L);
    Rng rng(14);
    const uint64_t trials = 100000;
    long double rate = universality_estimate(16, 8, trials, rng);
    long double p = std::exp2(-8.0L);
    long double sd = std::sqrt(p * (1 - p) / trials);
    CHECK(rate <= p + 3 * sd);
}

TEST_CASE("lhl accounting") {
    CHECK(lhl_max_output(130.0L, std::exp2(-64.0L)) == 4);
    CHECK(lhl_max_output(10.0L, std::exp2(-20.0L)) == 0);
    CHECK(lhl_max_output(57.0L, 0.5L) == 57);
    CHECK_THROWS_AS(lhl_max_output(0.0L, 0.5L), std::invalid_argument);
    ExtractorProfile ok{16, 16.0L, 8, lhl_epsilon(8, 16.0L)};
    CHECK(ok.valid());
    ExtractorProfile bad{16, 16.0L, 8, lhl_epsilon(8, 16.0L) / 2};
    CHECK(!bad.valid());
}

TEST_CASE("exact statistical distance meets the LHL bound at tiny scale") {
    // Delta(extract(W,Z), Z ; U, Z) by full enumeration, for uniform W over
    // the first 2^k of 2^m strings (min-entropy exactly k)
    const uint32_t m = 6, nu = 2;
    const uint32_t seed_bits = m + nu - 1;
    for (uint32_t k : {2u, 4u, 6u}) {
        long double delta = 0;
        for (uint64_t zv = 0; zv < (uint64_t{1} << seed_bits); zv++) {
            BitString zb(seed_bits);
            zb.set_window64(0, seed_bits, zv);
            ToeplitzSeed z = toeplitz_seed_from_bits(zb, m, nu);
            std::map<uint64_t, long double> dist;
            for (uint64_t wv = 0; wv < (uint64_t{1} << k); wv++) {
                BitString w(m);
                w.set_window64(0, m, wv);
                dist[extract(w, z).window64(0, nu)] += std::exp2(-(long double)k);
            }
            long double slice = 0;
            for (uint64_t v = 0; v < (uint64_t{1} << nu); v++) {
                long double pv = dist.count(v) ? dist[v] : 0.0L;
                slice += std::fabs(pv - std::exp2(-(long double)nu));
            }
            delta += 0.5L * slice * std::exp2(-(long double)seed_bits);
        }
        CHECK(delta <= lhl_epsilon(nu, (long double)k) + 1e-15L);
    }
}

TEST_SUITE_END();
