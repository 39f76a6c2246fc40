#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fuzex/params.hpp"
#include "fuzex/rfe.hpp"
#include "fuzex/sampler.hpp"
#include "fuzex/sources.hpp"
#include "fuzex/srrfe.hpp"

namespace fuzex {

class Rng;

enum class SchemeKind : uint8_t {
    Rfe,
    Srrfe,
    BrokenRfe,  // canary: deliberately leaks the key into the helper data
};

// ============================================================================
// Estimates and intervals
// ============================================================================

struct WilsonInterval {
    double lo = 0, hi = 0;
};

/// 95% Wilson score interval.
WilsonInterval wilson95(uint64_t successes, uint64_t trials);

struct AdvantageEstimate {
    double p0 = 0, p1 = 0;    // P[b'=1 | b=0], P[b'=1 | b=1]
    double advantage = 0;     // |p0 - p1|
    double ci_margin = 0;     // sum of the two arms' Wilson half-widths
    uint64_t trials = 0;      // per arm
};

struct WinEstimate {
    double rate = 0;
    WilsonInterval ci;
    uint64_t wins = 0;
    uint64_t trials = 0;
};

struct CorrectnessEstimate {
    uint64_t trials = 0, success = 0, bottom = 0, wrong_key = 0;
    double failure_rate = 0;  // (bottom + wrong_key) / trials
    WilsonInterval ci;        // on the failure rate
};

// ============================================================================
// Adversary strategies
// ============================================================================

/// Public per-enrollment view handed to reusability distinguishers: the
/// ciphertext blocks and, for the srrFE, the tag bits.
struct RevealedEnrollment {
    std::vector<BitString> blocks;
    std::optional<BitString> tag;
};

struct ReusabilityStrategy {
    std::string name;
    // decide(r_b, revealed keys (index j skipped, order preserved), public
    // outputs, j, params) -> guess bit
    std::function<int(const BitString&, const std::vector<BitString>&,
                      const std::vector<RevealedEnrollment>&, uint32_t,
                      const Params&)> decide;
};

std::vector<ReusabilityStrategy> reusability_strategy_suite();

struct RobustnessContext {
    const std::vector<ExtractedKey>& keys;
    const std::vector<SrrfeHelperData>& helpers;
    const Crs& crs;
    const Params& params;
};

using RepOracle = std::function<std::optional<ExtractedKey>(const SrrfeHelperData&)>;

struct RobustnessStrategy {
    std::string name;
    std::function<SrrfeHelperData(const RobustnessContext&, const RepOracle&, Rng&)> forge;
};

/// The fixed suite: bit-flip with kept tag, random tag, OTP shift with tag
/// compensation, from-scratch fabrication. with_exhaustive_forger adds the
/// tiny-lambda exhaustive key forger (lambda <= 8 only).
std::vector<RobustnessStrategy> robustness_strategy_suite(bool with_exhaustive_forger = false);

// ============================================================================
// Games
// ============================================================================

struct GameTranscript {
    struct Query {
        std::vector<uint8_t> helper_bytes;
        bool accepted = false;
    };
    std::vector<Query> queries;
    bool win = false;
    uint64_t rng_seed = 0;
};

// Games run trials sequentially; each trial forks its own stream off the
// caller's rng, so every run is replayable bit-exactly from the seed.

/// Real-vs-random reusability experiment, run trials times per arm.
/// j is the unrevealed enrollment (0-based).
AdvantageEstimate run_reusability_game(SchemeKind scheme, const ReusabilityStrategy& adv,
                                       const SourceModel& model, CorrelationKind correlation,
                                       const Params& params, uint32_t eta, uint32_t j,
                                       uint64_t trials, Rng& rng);

/// Robustness experiment for the srrFE: q_e enrollments revealed with keys,
/// at most q_d reproduction-oracle queries, fresh forged helper must be
/// accepted. fixed_crs pins one CRS across trials; nullptr draws a fresh CRS
/// per trial. last_transcript, when non-null, receives the final trial's log.
WinEstimate run_robustness_game(const RobustnessStrategy& adv, const SourceModel& model,
                                const Params& params, const Crs* fixed_crs,
                                uint64_t trials, Rng& rng,
                                GameTranscript* last_transcript = nullptr);

/// Draw w, perturb within the noise model, Gen, Rep, classify.
CorrectnessEstimate measure_correctness(SchemeKind scheme, const Params& params,
                                        const SourceModel& model, const NoiseModel& noise,
                                        uint64_t trials, Rng& rng);

// ============================================================================
// Exact tiny-scale distribution oracle
// ============================================================================

struct DistanceOracleResult {
    long double delta = 0;   // exact Delta((R, P); (U, P))
    uint64_t slices = 0;     // (Z, A-class) slices enumerated
    uint64_t work = 0;       // inner enumeration steps
};

/// Enumerates the full joint distribution of (R, P) and computes the exact
/// statistical distance to (U, P). P = (p, Z, A) for the rFE and
/// (p, Z, A, T) for the srrFE. Exchangeable sources (uniform, biased) are
/// enumerated per equivalence class of index configurations; the effective
/// work is capped and the oracle refuses larger instances rather than
/// sampling.
DistanceOracleResult exact_distance_oracle(SchemeKind scheme, const Params& params,
                                           const SourceModel& model);

}  // namespace fuzex
