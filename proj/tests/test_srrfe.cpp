#include <doctest.h>

#include <set>

#include "fuzex/extractor.hpp"
#include "fuzex/rng.hpp"
#include "fuzex/sources.hpp"
#include "fuzex/serialize.hpp"
#include "fuzex/srrfe.hpp"
#include "oracles.hpp"

using namespace fuzex;

namespace {

Params tiny_params() {
    // lambda=3, ell=2, xi=1, t=2 -> nu = 9
    Params p;
    p.n = 16;
    p.m = 3;
    p.ell = 2;
    p.t = 2;
    p.t_prime = 1;
    p.xi = 1;
    p.lambda = 3;
    finalize_params(p, Construction::C2);
    return p;
}

Params toy_params() {
    Params p;
    p.n = 256;
    p.m = 24;
    p.ell = 5;
    p.t = 9;
    p.t_prime = 6;
    p.xi = 8;
    p.lambda = 16;
    p.q_e = 2;
    p.q_d = 4;
    finalize_params(p, Construction::C2);
    return p;
}

}  // namespace

TEST_SUITE_BEGIN("srrfe");

TEST_CASE("round trip on the same sample") {
    Params p = toy_params();
    Rng rng(70);
    for (int i = 0; i < 20; i++) {
        BitString w = BitString::random(p.n, rng);
        Crs crs = generate_crs(p, rng);
        auto [key, helper] = srrfe_gen(w, crs, p, rng);
        CHECK(key.bits.size() == p.xi);
        CHECK(helper.p.size() == p.ell);
        auto back = srrfe_rep(w, helper, crs);
        REQUIRE(back.has_value());
        CHECK(*back == key);
    }
}

TEST_CASE("gen output carries exactly R, p blocks and the tag") {
    Params p = toy_params();
    Rng rng(71);
    BitString w = BitString::random(p.n, rng);
    Crs crs = generate_crs(p, rng);
    auto [key, helper] = srrfe_gen(w, crs, p, rng);
    CHECK(helper.p.size() == p.ell);
    for (auto& block : helper.p) CHECK(block.size() == p.nu);
    CHECK(helper.tag.value.width == p.lambda);
    CHECK(key.bits.size() == p.xi);
}

TEST_CASE("tiny instance matches the hand-composed oracles") {
    Params p = tiny_params();
    Rng world(72);
    BitString w = BitString::random(p.n, world);
    Crs crs = generate_crs(p, world);
    Rng gen_rng(73);
    auto [key, helper] = srrfe_gen(w, crs, p, gen_rng);

    // replay the pinned draw order: R then R1
    Rng replay(73);
    BitString expect_r = replay.bits(p.xi);
    BitString r1 = replay.bits(2 * size_t(p.lambda));
    CHECK(key.bits == expect_r);

    Field f(p.lambda);
    BitString pad = BitString::zeros(p.t).concat(expect_r).concat(r1);
    BitString msg;
    for (uint32_t i = 0; i < p.ell; i++) {
        BitString sub(p.m);
        for (uint32_t j = 0; j < p.m; j++)
            sub.set_bit(j, w.bit(crs.index_sets[i].indices[j]));
        BitString d = oracles::toeplitz_multiply(sub, crs.seed);
        CHECK(helper.p[i] == (pad ^ d));
        msg = msg.concat(helper.p[i]);
    }
    // tag via the oracle field and power sums
    auto coeffs = f.encode_message(msg, p.L);
    std::vector<uint64_t> mo;
    for (auto& c : coeffs) mo.push_back(c.lo);
    uint64_t x = r1.window64(0, p.lambda), y = r1.window64(p.lambda, p.lambda);
    CHECK(helper.tag.value.lo ==
          oracles::mac_tag(mo, x, y, p.L, p.lambda, f.modulus_low()));
}

TEST_CASE("any single-bit tamper of the tag is rejected at lambda=16") {
    Params p = toy_params();
    Rng rng(74);
    BitString w = BitString::random(p.n, rng);
    Crs crs = generate_crs(p, rng);
    auto [key, helper] = srrfe_gen(w, crs, p, rng);
    Field f(p.lambda);
    for (uint32_t b = 0; b < p.lambda; b++) {
        SrrfeHelperData tampered = helper;
        tampered.tag = Tag{f.add(helper.tag.value, f.from_u64(uint64_t{1} << b))};
        CHECK(!srrfe_rep(w, tampered, crs).has_value());
    }
}

TEST_CASE("prefix collision with failed tag continues the scan") {
    // force a subsample mismatch at index 0 only; a t=2 prefix collision
    // there recovers a wrong R1, the tag rejects it, and the scan must go on
    // to succeed at a later index (construction 1 would have aborted)
    Params p = toy_params();
    p.t = 2;
    p.xi = 4;
    finalize_params(p, Construction::C2);
    Rng rng(75);
    int continued = 0, recovered_after_collision = 0;
    for (int trial = 0; trial < 600; trial++) {
        Rng trng = rng.fork(trial);
        BitString w = BitString::random(p.n, trng);
        Crs crs = generate_crs(p, trng);
        auto [key, helper] = srrfe_gen(w, crs, p, trng);
        // flip one position of A_0 that no other index set uses
        std::set<uint32_t> others;
        for (uint32_t i = 1; i < p.ell; i++)
            others.insert(crs.index_sets[i].indices.begin(),
                          crs.index_sets[i].indices.end());
        BitString w2 = w;
        bool flipped = false;
        for (uint32_t pos : crs.index_sets[0].indices)
            if (!others.count(pos)) {
                w2.flip_bit(pos);
                flipped = true;
                break;
            }
        if (!flipped) continue;
        auto trace = srrfe_rep_trace(w2, helper, crs);
        REQUIRE(trace.key.has_value());
        CHECK(*trace.key == key);
        CHECK(trace.matched_index >= 1);
        if (trace.tag_failures > 0) {
            continued++;
            if (*trace.key == key) recovered_after_collision++;
        }
    }
    CHECK(continued > 50);  // prefix collisions at t=2 arrive at rate ~1/4
    CHECK(recovered_after_collision == continued);
}

TEST_CASE("rep never returns a key when every tag check failed") {
    Params p = toy_params();
    Rng rng(76);
    for (int trial = 0; trial < 200; trial++) {
        Rng trng = rng.fork(trial);
        BitString w = BitString::random(p.n, trng);
        Crs crs = generate_crs(p, trng);
        auto [key, helper] = srrfe_gen(w, crs, p, trng);
        SrrfeHelperData tampered = helper;
        Field f(p.lambda);
        tampered.tag = Tag{f.add(helper.tag.value, f.one())};
        auto trace = srrfe_rep_trace(w, tampered, crs);
        CHECK(!trace.key.has_value());
        CHECK(trace.tag_failures == trace.prefix_hits);
    }
}

TEST_CASE("crs digest mismatch is a parameter error") {
    Params p = toy_params();
    Rng rng(77);
    BitString w = BitString::random(p.n, rng);
    Crs crs = generate_crs(p, rng);
    auto [key, helper] = srrfe_gen(w, crs, p, rng);

    Params p2 = p;
    p2.ell = p.ell + 1;
    finalize_params(p2, Construction::C2);
    Crs other = generate_crs(p2, rng);
    CHECK_THROWS_AS(srrfe_rep(w, helper, other), std::invalid_argument);
    CHECK_THROWS_AS(srrfe_gen(w, other, p, rng), std::invalid_argument);
}

TEST_CASE("cryptographic width lambda=128: round trip and determinism") {
    Params p;
    p.n = 4096;
    p.m = 96;
    p.ell = 8;
    p.t = 24;
    p.t_prime = 12;
    p.xi = 64;
    p.lambda = 128;
    finalize_params(p, Construction::C2);
    REQUIRE(p.nu == 64 + 24 + 256);
    Rng world(200);
    BitString w = BitString::random(p.n, world);
    Crs crs = generate_crs(p, world);

    Rng r1(201), r2(201);
    auto [k1, h1] = srrfe_gen(w, crs, p, r1);
    auto [k2, h2] = srrfe_gen(w, crs, p, r2);
    CHECK(k1 == k2);
    CHECK(h1 == h2);
    CHECK(serialize_helper(h1) == serialize_helper(h2));

    BitString w2 = w;
    for (uint32_t i = 0; i < p.t_prime; i++) w2.flip_bit(i * 17);
    auto back = srrfe_rep(w2, h1, crs);
    REQUIRE(back.has_value());
    CHECK(*back == k1);

    SrrfeHelperData tampered = h1;
    tampered.p[3].flip_bit(100);
    CHECK(!srrfe_rep(w, tampered, crs).has_value());
}

TEST_CASE("multiple enrollments under one CRS all round-trip") {
    Params p = toy_params();
    Rng rng(79);
    Crs crs = generate_crs(p, rng);
    auto family = correlated_family(SourceModel::uniform(p.n), p.q_e + 1,
                                    CorrelationKind::Shift, p.t_prime, rng);
    for (const auto& w : family) {
        auto [key, helper] = srrfe_gen(w, crs, p, rng);
        auto back = srrfe_rep(w, helper, crs);
        REQUIRE(back.has_value());
        CHECK(*back == key);
    }
}

TEST_CASE("OTP-shift acceptance over exhaustive keys stays under ell*(L+1)*2^-lambda") {
    // fix everything except R1, xor a known delta into every block's R1
    // region with the original tag kept, and count accepting R1 values
    Params p;
    p.n = 64;
    p.m = 8;
    p.ell = 2;
    p.t = 4;
    p.t_prime = 2;
    p.xi = 4;
    p.lambda = 8;
    finalize_params(p, Construction::C2);
    REQUIRE(p.nu == 24);

    Rng rng(300);
    Crs crs = generate_crs(p, rng);
    BitString w = BitString::random(p.n, rng);
    BitString r = rng.bits(p.xi);
    Field f(p.lambda);

    auto run_case = [&](uint64_t d1, uint64_t d2) {
        uint64_t accepted = 0;
        for (uint64_t r1v = 0; r1v < (uint64_t{1} << 16); r1v++) {
            BitString r1(16);
            r1.set_window64(0, 16, r1v);
            // Gen with pinned (R, R1)
            BitString pad = BitString::zeros(p.t).concat(r).concat(r1);
            SrrfeHelperData helper;
            helper.params = p;
            BitString msg;
            for (uint32_t i = 0; i < p.ell; i++) {
                BitString d = extract(subsample(w, crs.index_sets[i]), crs.seed);
                helper.p.push_back(pad ^ d);
            }
            for (auto& b : helper.p) msg = msg.concat(b);
            helper.tag = mac_eval(f, msg, mac_key_from_bits(f, r1), p.L);
            // known-delta forgery, original tag kept
            SrrfeHelperData forged = helper;
            for (auto& b : forged.p) {
                b.set_window64(p.t + p.xi, 8, b.window64(p.t + p.xi, 8) ^ d1);
                b.set_window64(p.t + p.xi + 8, 8, b.window64(p.t + p.xi + 8, 8) ^ d2);
            }
            if (srrfe_rep(w, forged, crs).has_value()) accepted++;
        }
        return accepted;
    };

    const uint64_t bound =
        uint64_t((long double)p.ell * (p.L + 1) * std::exp2(-8.0L) * 65536.0L);
    // delta1 != 0: exactly one accepting y per x
    CHECK(run_case(0x01, 0x00) <= bound);
    // delta1 = 0, delta2 != 0: at most (L-3) roots in x, y free
    CHECK(run_case(0x00, 0x2A) <= bound);
}

TEST_CASE("correctness bound holds at Monte Carlo scale") {
    Params p = toy_params();
    Rng rng(78);
    const uint64_t trials = 3000;
    uint64_t failures = 0;
    SourceModel model = SourceModel::uniform(p.n);
    NoiseModel noise = NoiseModel::random_t(p.t_prime);
    for (uint64_t trial = 0; trial < trials; trial++) {
        Rng trng = rng.fork(trial);
        BitString w = model.draw(trng);
        BitString w2 = perturb(w, noise, trng);
        Crs crs = generate_crs(p, trng);
        auto [key, helper] = srrfe_gen(w, crs, p, trng);
        auto back = srrfe_rep(w2, helper, crs);
        if (!back.has_value() || !(*back == key)) failures++;
    }
    long double bound = correctness_bound(p, Construction::C2);
    long double sd = std::sqrt((long double)bound * (1 - bound) / trials);
    CHECK((long double)failures / trials <= bound + 3 * sd + 1e-9L);
}

TEST_SUITE_END();
