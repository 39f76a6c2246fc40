#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fuzex {

enum class Construction : uint8_t { C1 = 1, C2 = 2 };

/// Full parameter record. nu is derived (xi + t for Construction 1,
/// xi + t + 2*lambda for Construction 2) but stored so files and digests are
/// self-describing.
struct Params {
    uint32_t n = 0;        // sample length (bits)
    uint32_t m = 0;        // subsample length (bits)
    uint32_t ell = 0;      // number of subsamples
    uint32_t t = 0;        // zero-prefix check length (bits)
    uint32_t t_prime = 0;  // max Hamming distance between samples
    uint32_t xi = 0;       // key length (bits)
    uint32_t lambda = 0;   // MAC field width (Construction 2; 0 for C1)
    uint32_t nu = 0;       // extractor output length (bits)
    uint32_t L = 0;        // MAC degree parameter (Construction 2; 0 for C1)

    long double alpha = 0;      // avg conditional min-entropy of subsamples
    long double sigma = 0;      // key-security bound
    long double eps_prime = 0;  // correctness bound
    uint64_t N = 0;             // source conditioning budget (bits)
    uint64_t eta = 1;           // licensed reuse count (C1)
    uint64_t q_e = 0;           // generation query budget (C2)
    uint64_t q_d = 0;           // reproduction query budget (C2)

    bool operator==(const Params&) const = default;
};

/// Smallest L' >= ceil(ell*nu/lambda) + 4 with L' = 3 mod 4.
uint32_t mac_degree(uint32_t ell, uint32_t nu, uint32_t lambda);

/// Derives nu and (for C2) L from the primary fields.
void finalize_params(Params& p, Construction c);

/// (1 - (1 - t'/(n-m))^m)^ell plus the collision term:
/// ell * 2^-t for C1, ell * 2^-t * L * 2^-lambda for C2.
long double correctness_bound(const Params& p, Construction c);

struct SolveEllResult {
    bool feasible = false;
    uint32_t ell = 0;
    std::string reason;  // set when infeasible
};

/// Minimal ell meeting target_eps under a 50/50 budget split between the
/// miss and collision terms.
SolveEllResult solve_ell(uint32_t n, uint32_t m, uint32_t t_prime, uint32_t t,
                         long double target_eps);

/// floor of the Theorem key-length bound, clamped at 0.
/// C1: alpha + 2 - 2*log2(2*ell/sigma) - t
/// C2: alpha + 2 - 2*log2(4*ell/sigma) - t - 2*lambda
int64_t max_key_length(long double alpha, uint32_t ell, long double sigma,
                       uint32_t t, uint32_t lambda, Construction c);
/// Same, unclamped (may be negative).
int64_t max_key_length_raw(long double alpha, uint32_t ell, long double sigma,
                           uint32_t t, uint32_t lambda, Construction c);

/// Per-subsample extractor error budget implied by sigma:
/// sigma/(2*ell) for C1, sigma/(4*ell) for C2.
long double extractor_epsilon_budget(const Params& p, Construction c);

/// Theorem robustness bound: (q_d+q_e)*ell*eps + q_d * 2^-lambda * ell * (L+1).
long double robustness_delta(uint64_t q_e, uint64_t q_d, uint32_t ell,
                             uint32_t lambda, uint32_t L, long double eps);

/// Empty vector = ok; otherwise one line per violated constraint with both
/// sides' values.
std::vector<std::string> validate(const Params& p, Construction c);

}  // namespace fuzex
