#include "fuzex/games.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "fuzex/extractor.hpp"
#include "fuzex/field.hpp"
#include "fuzex/mac.hpp"
#include "fuzex/rng.hpp"
#include "fuzex/serialize.hpp"

namespace fuzex {

WilsonInterval wilson95(uint64_t successes, uint64_t trials) {
    if (trials == 0) return {0.0, 1.0};
    const double z = 1.959963984540054;
    double n = double(trials), p = double(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2 * n)) / denom;
    double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

// ============================================================================
// Correlated-family helpers
// ============================================================================

namespace {

std::vector<std::function<BitString(const BitString&)>> window_permutations(
    uint32_t eta, uint32_t t_prime, size_t n) {
    // rotate the first min(t', n) bits by i: a deterministic transform that
    // moves at most t' positions
    std::vector<std::function<BitString(const BitString&)>> v;
    uint32_t wsize = uint32_t(std::min<size_t>(t_prime, n));
    for (uint32_t i = 1; i < eta; i++) {
        v.push_back([i, wsize](const BitString& w) {
            if (wsize == 0) return w;
            BitString out = w;
            for (uint32_t j = 0; j < wsize; j++) out.set_bit(j, w.bit((j + i) % wsize));
            return out;
        });
    }
    return v;
}

std::vector<BitString> draw_family(const SourceModel& model, uint32_t eta,
                                   CorrelationKind correlation, uint32_t t_prime,
                                   Rng& rng) {
    if (correlation == CorrelationKind::Arbitrary) {
        auto transforms = window_permutations(eta, t_prime, model.n);
        return correlated_family(model, eta, correlation, t_prime, rng, &transforms);
    }
    return correlated_family(model, eta, correlation, t_prime, rng);
}

struct Enrollment {
    ExtractedKey key;
    RevealedEnrollment pub;
};

Enrollment enroll_one(SchemeKind scheme, const BitString& w, const Params& params,
                      const ToeplitzSeed* z, const Crs* crs, Rng& rng) {
    Enrollment e;
    if (scheme == SchemeKind::Srrfe) {
        auto [key, helper] = srrfe_gen(w, *crs, params, rng);
        e.key = std::move(key);
        e.pub.blocks = helper.p;
        Field field(params.lambda);
        e.pub.tag = field.to_bits(helper.tag.value);
    } else {
        auto [key, helper] = rfe_gen(w, *z, params, rng);
        for (auto& entry : helper.entries) e.pub.blocks.push_back(entry.p);
        if (scheme == SchemeKind::BrokenRfe)
            key.bits = e.pub.blocks[0].slice(0, params.xi);  // leaks on purpose
        e.key = std::move(key);
    }
    return e;
}

}  // namespace

// ============================================================================
// Reusability
// ============================================================================

std::vector<ReusabilityStrategy> reusability_strategy_suite() {
    std::vector<ReusabilityStrategy> suite;
    suite.push_back({"constant-zero",
                     [](const BitString&, const std::vector<BitString>&,
                        const std::vector<RevealedEnrollment>&, uint32_t,
                        const Params&) { return 0; }});
    suite.push_back({"prefix-correlation",
                     [](const BitString& rb, const std::vector<BitString>&,
                        const std::vector<RevealedEnrollment>& pubs, uint32_t j,
                        const Params& prm) {
                         return rb == pubs[j].blocks[0].slice(0, prm.xi) ? 1 : 0;
                     }});
    suite.push_back({"suffix-correlation",
                     [](const BitString& rb, const std::vector<BitString>&,
                        const std::vector<RevealedEnrollment>& pubs, uint32_t j,
                        const Params& prm) {
                         return rb == pubs[j].blocks[0].slice(prm.t, prm.xi) ? 1 : 0;
                     }});
    suite.push_back({"xor-of-p",
                     [](const BitString& rb, const std::vector<BitString>& others,
                        const std::vector<RevealedEnrollment>& pubs, uint32_t j,
                        const Params& prm) {
                         if (others.empty()) return 0;
                         uint32_t j2 = (j == 0) ? 1 : 0;  // some revealed enrollment
                         size_t other_pos = (j2 < j) ? j2 : j2 - 1;
                         BitString v = pubs[j].blocks[0] ^ pubs[j2].blocks[0];
                         BitString target = v.slice(prm.t, prm.xi) ^ others[other_pos];
                         return rb == target ? 1 : 0;
                     }});
    suite.push_back({"parity",
                     [](const BitString& rb, const std::vector<BitString>&,
                        const std::vector<RevealedEnrollment>& pubs, uint32_t j,
                        const Params&) {
                         int a = int(rb.hamming_weight() & 1);
                         int b = int(pubs[j].blocks[0].hamming_weight() & 1);
                         return a ^ b;
                     }});
    return suite;
}

AdvantageEstimate run_reusability_game(SchemeKind scheme, const ReusabilityStrategy& adv,
                                       const SourceModel& model, CorrelationKind correlation,
                                       const Params& params, uint32_t eta, uint32_t j,
                                       uint64_t trials, Rng& rng) {
    if (j >= eta) throw std::invalid_argument("unrevealed index j out of range");
    if (eta == 0 || trials == 0) throw std::invalid_argument("need eta, trials >= 1");
    uint64_t ones[2] = {0, 0};
    for (uint64_t trial = 0; trial < trials; trial++) {
        Rng trng = rng.fork(trial);
        auto family = draw_family(model, eta, correlation, params.t_prime, trng);

        // per-deployment public randomness, shared by all enrollments
        ToeplitzSeed z;
        Crs crs;
        if (scheme == SchemeKind::Srrfe)
            crs = generate_crs(params, trng);
        else
            z = make_toeplitz_seed(params.m, params.nu, trng);

        std::vector<BitString> keys;
        std::vector<RevealedEnrollment> pubs;
        for (uint32_t i = 0; i < eta; i++) {
            Enrollment e = enroll_one(scheme, family[i], params, &z, &crs, trng);
            keys.push_back(std::move(e.key.bits));
            pubs.push_back(std::move(e.pub));
        }
        std::vector<BitString> others;
        for (uint32_t i = 0; i < eta; i++)
            if (i != j) others.push_back(keys[i]);

        BitString random_key = trng.bits(params.xi);
        // coupled arms: same world, only the challenge differs
        ones[0] += adv.decide(keys[j], others, pubs, j, params) ? 1 : 0;
        ones[1] += adv.decide(random_key, others, pubs, j, params) ? 1 : 0;
    }
    AdvantageEstimate est;
    est.trials = trials;
    est.p0 = double(ones[0]) / trials;
    est.p1 = double(ones[1]) / trials;
    est.advantage = std::abs(est.p0 - est.p1);
    auto w0 = wilson95(ones[0], trials), w1 = wilson95(ones[1], trials);
    est.ci_margin = (w0.hi - w0.lo) / 2 + (w1.hi - w1.lo) / 2;
    return est;
}

// ============================================================================
// Robustness
// ============================================================================

namespace {

// p-block offset of the R1 region (the recovered MAC key shifts by whatever
// is xored here)
size_t r1_offset(const Params& prm) { return size_t(prm.t) + prm.xi; }

SrrfeHelperData flip_bit_keep_tag(const RobustnessContext& ctx) {
    SrrfeHelperData forged = ctx.helpers[0];
    forged.p[0].flip_bit(r1_offset(ctx.params));  // shifts recovered x by delta1=1
    return forged;
}

}  // namespace

std::vector<RobustnessStrategy> robustness_strategy_suite(bool with_exhaustive_forger) {
    std::vector<RobustnessStrategy> suite;

    suite.push_back({"bitflip-keep-tag",
                     [](const RobustnessContext& ctx, const RepOracle&, Rng&) {
                         return flip_bit_keep_tag(ctx);
                     }});

    suite.push_back({"random-tag",
                     [](const RobustnessContext& ctx, const RepOracle&, Rng& rng) {
                         SrrfeHelperData forged = ctx.helpers[0];
                         Field field(ctx.params.lambda);
                         forged.p[0].flip_bit(ctx.params.t);  // fresh message
                         forged.tag = Tag{field.random(rng)};
                         return forged;
                     }});

    // OTP-shift with tag compensation: xor a known delta into every block's
    // R1 region, probe tag guesses T + c through the oracle, submit the
    // remaining guess
    suite.push_back({"otp-shift-compensate",
                     [](const RobustnessContext& ctx, const RepOracle& oracle, Rng&) {
                         const Params& prm = ctx.params;
                         Field field(prm.lambda);
                         uint64_t lam_mask = prm.lambda >= 64
                             ? ~uint64_t{0}
                             : (uint64_t{1} << prm.lambda) - 1;
                         SrrfeHelperData forged = ctx.helpers[0];
                         for (auto& block : forged.p) block.flip_bit(r1_offset(prm));
                         uint64_t budget = prm.q_d > 0 ? prm.q_d - 1 : 0;
                         for (uint64_t c = 1; c <= budget; c++) {
                             SrrfeHelperData probe = forged;
                             probe.tag = Tag{field.add(ctx.helpers[0].tag.value,
                                                       field.from_u64(c & lam_mask))};
                             if (oracle(probe).has_value()) return probe;
                         }
                         forged.tag = Tag{field.add(ctx.helpers[0].tag.value,
                                                    field.from_u64((budget + 1) & lam_mask))};
                         return forged;
                     }});

    suite.push_back({"fabricate",
                     [](const RobustnessContext& ctx, const RepOracle&, Rng& rng) {
                         const Params& prm = ctx.params;
                         Field field(prm.lambda);
                         SrrfeHelperData forged;
                         forged.params = prm;
                         for (uint32_t i = 0; i < prm.ell; i++)
                             forged.p.push_back(BitString::random(prm.nu, rng));
                         forged.tag = Tag{field.random(rng)};
                         return forged;
                     }});

    if (with_exhaustive_forger) {
        suite.push_back({"exhaustive-tiny-key",
                         [](const RobustnessContext& ctx, const RepOracle&, Rng&) {
                             const Params& prm = ctx.params;
                             if (prm.lambda > 8)
                                 throw std::invalid_argument(
                                     "exhaustive forger needs lambda <= 8");
                             Field field(prm.lambda);
                             BitString msg;
                             for (const auto& b : ctx.helpers[0].p) msg = msg.concat(b);
                             // first key consistent with the observed tag
                             MacKey cand{field.zero(), field.zero()};
                             uint64_t space = uint64_t{1} << prm.lambda;
                             bool found = false;
                             for (uint64_t x = 0; x < space && !found; x++)
                                 for (uint64_t y = 0; y < space && !found; y++) {
                                     MacKey k{field.from_u64(x), field.from_u64(y)};
                                     if (mac_verify(field, msg, ctx.helpers[0].tag, k, prm.L)) {
                                         cand = k;
                                         found = true;
                                     }
                                 }
                             SrrfeHelperData forged = ctx.helpers[0];
                             forged.p[0].flip_bit(prm.t);  // fresh message, R1 region intact
                             BitString msg2;
                             for (const auto& b : forged.p) msg2 = msg2.concat(b);
                             forged.tag = mac_eval(field, msg2, cand, prm.L);
                             return forged;
                         }});
    }
    return suite;
}

WinEstimate run_robustness_game(const RobustnessStrategy& adv, const SourceModel& model,
                                const Params& params, const Crs* fixed_crs,
                                uint64_t trials, Rng& rng,
                                GameTranscript* last_transcript) {
    if (trials == 0) throw std::invalid_argument("trials must be >= 1");
    if (params.q_e == 0)
        throw std::invalid_argument("robustness game needs at least one enrollment");
    uint64_t wins = 0;
    GameTranscript transcript;
    for (uint64_t trial = 0; trial < trials; trial++) {
        Rng trng = rng.fork(trial);
        transcript = GameTranscript{};
        transcript.rng_seed = trng.seed();

        Crs crs = fixed_crs ? *fixed_crs : generate_crs(params, trng);
        uint32_t eta = uint32_t(params.q_e) + 1;
        auto family = draw_family(model, eta, CorrelationKind::Shift, params.t_prime, trng);
        const BitString& w_target = family[0];  // w^eta; enrollments are within t'

        std::vector<ExtractedKey> keys;
        std::vector<SrrfeHelperData> helpers;
        for (uint32_t i = 1; i < eta; i++) {
            auto [key, helper] = srrfe_gen(family[i], crs, params, trng);
            keys.push_back(std::move(key));
            helpers.push_back(std::move(helper));
        }

        uint64_t queries = 0;
        RepOracle oracle = [&](const SrrfeHelperData& probe) -> std::optional<ExtractedKey> {
            if (++queries > params.q_d)
                throw std::runtime_error("protocol error: reproduction query budget exceeded");
            std::optional<ExtractedKey> res;
            try {
                res = srrfe_rep(w_target, probe, crs);
            } catch (const std::invalid_argument&) {
                res = std::nullopt;  // structurally bad probe counts as reject
            }
            transcript.queries.push_back({serialize_helper(probe), res.has_value()});
            return res;
        };

        RobustnessContext ctx{keys, helpers, crs, params};
        SrrfeHelperData forged = adv.forge(ctx, oracle, trng);

        auto forged_bytes = serialize_helper(forged);
        bool fresh = true;
        for (const auto& h : helpers)
            if (serialize_helper(h) == forged_bytes) {
                fresh = false;
                break;
            }
        bool accepted = false;
        if (fresh) {
            try {
                accepted = srrfe_rep(w_target, forged, crs).has_value();
            } catch (const std::invalid_argument&) {
                accepted = false;
            }
        }
        transcript.win = fresh && accepted;
        wins += transcript.win ? 1 : 0;
    }
    if (last_transcript) *last_transcript = std::move(transcript);
    WinEstimate est;
    est.wins = wins;
    est.trials = trials;
    est.rate = double(wins) / trials;
    est.ci = wilson95(wins, trials);
    return est;
}

// ============================================================================
// Correctness
// ============================================================================

CorrectnessEstimate measure_correctness(SchemeKind scheme, const Params& params,
                                        const SourceModel& model, const NoiseModel& noise,
                                        uint64_t trials, Rng& rng) {
    CorrectnessEstimate est;
    est.trials = trials;
    for (uint64_t trial = 0; trial < trials; trial++) {
        Rng trng = rng.fork(trial);
        BitString w = model.draw(trng);
        BitString w2 = perturb(w, noise, trng);
        std::optional<ExtractedKey> res;
        ExtractedKey key;
        if (scheme == SchemeKind::Srrfe) {
            Crs crs = generate_crs(params, trng);
            auto [k, helper] = srrfe_gen(w, crs, params, trng);
            key = std::move(k);
            res = srrfe_rep(w2, helper, crs);
        } else {
            ToeplitzSeed z = make_toeplitz_seed(params.m, params.nu, trng);
            auto [k, helper] = rfe_gen(w, z, params, trng);
            key = std::move(k);
            res = rfe_rep(w2, helper, z);
        }
        if (!res)
            est.bottom++;
        else if (*res == key)
            est.success++;
        else
            est.wrong_key++;
    }
    uint64_t failures = est.bottom + est.wrong_key;
    est.failure_rate = double(failures) / trials;
    est.ci = wilson95(failures, trials);
    return est;
}

// ============================================================================
// Exact tiny-scale distribution oracle
// ============================================================================

namespace {

constexpr uint64_t kOracleWorkCap = uint64_t{1} << 28;

// odometer over ell ordered m-tuples of distinct indices
struct ConfigIterator {
    uint32_t n, m, ell;
    std::vector<uint32_t> flat;  // ell*m indices
    bool done = false;

    ConfigIterator(uint32_t n_, uint32_t m_, uint32_t ell_) : n(n_), m(m_), ell(ell_) {
        flat.assign(size_t(ell) * m, 0);
        for (uint32_t s = 0; s < ell; s++)
            if (!first_tuple(s)) done = true;
    }

    bool first_tuple(uint32_t s) {
        for (uint32_t i = 0; i < m; i++) flat[size_t(s) * m + i] = i;
        return m <= n;
    }

    bool tuple_valid(uint32_t s) const {
        for (uint32_t i = 0; i < m; i++)
            for (uint32_t j = i + 1; j < m; j++)
                if (flat[size_t(s) * m + i] == flat[size_t(s) * m + j]) return false;
        return true;
    }

    bool next_tuple(uint32_t s) {
        while (true) {
            int i = int(m) - 1;
            while (i >= 0) {
                uint32_t& v = flat[size_t(s) * m + uint32_t(i)];
                if (v + 1 < n) {
                    v++;
                    for (uint32_t j = uint32_t(i) + 1; j < m; j++) flat[size_t(s) * m + j] = 0;
                    break;
                }
                i--;
            }
            if (i < 0) return false;
            if (tuple_valid(s)) return true;
        }
    }

    void advance() {
        for (uint32_t s = ell; s-- > 0;) {
            if (next_tuple(s)) return;
            first_tuple(s);
        }
        done = true;
    }
};

// relabel by first occurrence; valid as a class key for exchangeable sources
std::vector<uint8_t> canonical_key(const std::vector<uint32_t>& flat) {
    std::vector<uint8_t> key;
    key.reserve(flat.size());
    std::unordered_map<uint32_t, uint8_t> label;
    for (uint32_t v : flat) {
        auto it = label.find(v);
        if (it == label.end()) {
            uint8_t l = uint8_t(label.size());
            label.emplace(v, l);
            key.push_back(l);
        } else {
            key.push_back(it->second);
        }
    }
    return key;
}

struct SliceAccum {
    // packed key: r | (tag << xi) | (p << (xi + lambda)); value: probability
    std::vector<std::pair<uint64_t, long double>> entries;

    long double delta(uint32_t xi, uint32_t tail_bits) {
        // tail_bits = lambda + p-width: everything above the r field
        (void)tail_bits;
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        // merge duplicates
        size_t out = 0;
        for (size_t i = 0; i < entries.size(); i++) {
            if (out > 0 && entries[out - 1].first == entries[i].first)
                entries[out - 1].second += entries[i].second;
            else
                entries[out++] = entries[i];
        }
        entries.resize(out);
        long double uniform = std::exp2(-(long double)xi);
        long double sum = 0;
        size_t i = 0;
        while (i < entries.size()) {
            uint64_t group = entries[i].first >> xi;
            long double total = 0;
            size_t begin = i;
            while (i < entries.size() && (entries[i].first >> xi) == group) {
                total += entries[i].second;
                i++;
            }
            // sum over all 2^xi values of r of |Pr[r, rest] - 2^-xi Pr[rest]|;
            // absent r values contribute uniform * total each
            uint64_t present = i - begin;
            long double absent = ((long double)((uint64_t{1} << xi) - present)) * uniform * total;
            long double acc = absent;
            for (size_t k = begin; k < i; k++)
                acc += std::fabs(entries[k].second - uniform * total);
            sum += acc;
        }
        return 0.5L * sum;
    }
};

}  // namespace

DistanceOracleResult exact_distance_oracle(SchemeKind scheme, const Params& params,
                                           const SourceModel& model) {
    if (scheme == SchemeKind::BrokenRfe)
        throw std::invalid_argument("distance oracle targets the real constructions");
    const bool c2 = scheme == SchemeKind::Srrfe;
    const uint32_t n = params.n, m = params.m, ell = params.ell;
    const uint32_t t = params.t, xi = params.xi, nu = params.nu;
    const uint32_t lambda = c2 ? params.lambda : 0;
    if (model.n != n) throw std::invalid_argument("model length must equal n");
    if (c2 && nu != xi + t + 2 * lambda)
        throw std::invalid_argument("nu must equal xi + t + 2*lambda");
    if (!c2 && nu != xi + t) throw std::invalid_argument("nu must equal xi + t");

    const uint32_t pwidth = ell * nu;
    if (pwidth + lambda + xi > 62)
        throw std::invalid_argument("instance too wide for the packed enumeration");
    const uint32_t seed_bits = m + nu - 1;
    if (seed_bits > 26) throw std::invalid_argument("seed space too large");

    const bool exchangeable = model.kind != SourceModel::Kind::BlockStructured;
    if (!exchangeable && n > 200)
        throw std::invalid_argument("non-exchangeable sources need n <= 200 here");

    // ---- enumerate index configurations, fold into classes ----
    std::map<std::vector<uint8_t>, uint64_t> classes;
    uint64_t total_configs = 0;
    {
        ConfigIterator it(n, m, ell);
        if (it.done) throw std::invalid_argument("no valid index configuration");
        const uint64_t kConfigCap = uint64_t{1} << 22;
        while (!it.done) {
            total_configs++;
            if (total_configs > kConfigCap)
                throw std::invalid_argument("index configuration space too large");
            std::vector<uint8_t> key = exchangeable
                ? canonical_key(it.flat)
                : std::vector<uint8_t>(it.flat.begin(), it.flat.end());
            classes[key]++;
            it.advance();
        }
    }

    // distinct positions a representative touches
    auto used_count = [&](const std::vector<uint8_t>& key) {
        uint8_t mx = 0;
        if (exchangeable) {
            for (uint8_t v : key) mx = std::max(mx, v);
            return uint32_t(mx) + 1;
        }
        return n;  // block path enumerates the full model
    };

    // ---- cost estimate, refuse rather than sample ----
    uint64_t z_count = uint64_t{1} << seed_bits;
    uint64_t inner = (uint64_t{1} << xi) << (2 * lambda);
    uint64_t worst_w = 0;
    for (const auto& [key, cnt] : classes)
        worst_w = std::max<uint64_t>(worst_w,
            exchangeable ? (uint64_t{1} << used_count(key))
                         : (uint64_t{1} << (model.blocks * model.seed_bits)));
    uint64_t estimate = classes.size() * z_count * (worst_w + worst_w * inner);
    if (estimate > kOracleWorkCap)
        throw std::invalid_argument("enumeration work exceeds the oracle cap");

    Field field = c2 ? Field(lambda) : Field(8);  // unused for C1
    DistanceOracleResult result;
    long double delta = 0;

    for (const auto& [classkey, count] : classes) {
        // representative config
        std::vector<IndexSet> sets(ell);
        for (uint32_t s = 0; s < ell; s++) {
            sets[s].indices.assign(classkey.begin() + size_t(s) * m,
                                   classkey.begin() + size_t(s + 1) * m);
        }
        uint32_t world = exchangeable ? used_count(classkey) : n;

        // per-position one-probabilities for the w enumeration
        long double p_one = 0.5L;
        if (model.kind == SourceModel::Kind::BiasedBit) p_one = (long double)model.rho;

        long double class_weight = (long double)count / (long double)total_configs;

        for (uint64_t zv = 0; zv < z_count; zv++) {
            BitString zbits(seed_bits);
            zbits.set_window64(0, seed_bits, zv);
            ToeplitzSeed z = toeplitz_seed_from_bits(zbits, m, nu);

            // distribution of the concatenated extractor outputs
            std::unordered_map<uint64_t, long double> dq;
            if (exchangeable) {
                for (uint64_t wv = 0; wv < (uint64_t{1} << world); wv++) {
                    long double prob = 1.0L;
                    for (uint32_t b = 0; b < world; b++)
                        prob *= ((wv >> b) & 1) ? p_one : (1.0L - p_one);
                    if (prob == 0.0L) continue;
                    BitString w(world);
                    w.set_window64(0, world, wv);
                    uint64_t dkey = 0;
                    for (uint32_t s = 0; s < ell; s++) {
                        BitString d = extract(subsample(w, sets[s]), z);
                        dkey |= d.window64(0, nu) << (s * nu);
                    }
                    dq[dkey] += prob;
                }
            } else {
                uint64_t seeds = uint64_t{1} << (model.blocks * model.seed_bits);
                uint32_t block_size = model.n / model.blocks;
                for (uint64_t sv = 0; sv < seeds; sv++) {
                    BitString w(n);
                    for (uint32_t b = 0; b < model.blocks; b++) {
                        uint64_t bs = (sv >> (b * model.seed_bits)) &
                                      ((uint64_t{1} << model.seed_bits) - 1);
                        for (uint32_t jj = 0; jj < block_size; jj++)
                            w.set_bit(size_t(b) * block_size + jj,
                                      model.expansion_bit(jj, bs));
                    }
                    uint64_t dkey = 0;
                    for (uint32_t s = 0; s < ell; s++) {
                        BitString d = extract(subsample(w, sets[s]), z);
                        dkey |= d.window64(0, nu) << (s * nu);
                    }
                    dq[dkey] += 1.0L / (long double)seeds;
                }
            }

            SliceAccum accum;
            accum.entries.reserve(dq.size() * inner);
            long double key_prob = 1.0L / (long double)inner;
            for (uint64_t r = 0; r < (uint64_t{1} << xi); r++) {
                uint64_t r1_space = c2 ? (uint64_t{1} << (2 * lambda)) : 1;
                for (uint64_t r1 = 0; r1 < r1_space; r1++) {
                    // block mask: zero prefix | r | r1
                    uint64_t mask = (r << t);
                    if (c2) mask |= r1 << (t + xi);
                    uint64_t repmask = 0;
                    for (uint32_t s = 0; s < ell; s++) repmask |= mask << (s * nu);

                    for (const auto& [dkey, q] : dq) {
                        uint64_t pk = dkey ^ repmask;
                        uint64_t tagv = 0;
                        if (c2) {
                            BitString pbits(pwidth);
                            pbits.set_window64(0, std::min<uint32_t>(pwidth, 64), pk);
                            BitString r1bits(2 * lambda);
                            r1bits.set_window64(0, 2 * lambda, r1);
                            MacKey mk = mac_key_from_bits(field, r1bits);
                            Tag tag = mac_eval(field, pbits, mk, params.L);
                            tagv = tag.value.lo;
                        }
                        uint64_t packed = r | (tagv << xi) | (pk << (xi + lambda));
                        accum.entries.push_back({packed, q * key_prob});
                        result.work++;
                    }
                }
            }
            delta += class_weight * (1.0L / (long double)z_count) *
                     accum.delta(xi, pwidth + lambda);
            result.slices++;
        }
    }
    result.delta = delta;
    return result;
}

}  // namespace fuzex
