#include "fuzex/params.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fuzex/field.hpp"

namespace fuzex {

namespace {

// log2(num/den) with exact integer arithmetic when both are powers of two
// (frexp exposes the exponent; a power of two has mantissa 0.5). Floors are
// taken by callers after the subtraction, so boundary cases like
// sigma = 2^-32, ell = 256 stay exact.
long double log2_ratio(long double num, long double den) {
    int en = 0, ed = 0;
    long double mn = std::frexp(num, &en);
    long double md = std::frexp(den, &ed);
    if (mn == 0.5L && md == 0.5L) return (long double)(en - ed);
    return std::log2(num) - std::log2(den);
}

long double miss_term(uint32_t n, uint32_t m, uint32_t t_prime, uint32_t ell) {
    if (t_prime == 0) return 0.0L;
    // q = (1 - t'/(n-m))^m, miss = (1-q)^ell, via log1p/expm1 so tiny and
    // near-one probabilities keep their precision
    long double ratio = (long double)t_prime / ((long double)n - m);
    long double log_q = (long double)m * std::log1p(-ratio);
    long double one_minus_q = -std::expm1(log_q);
    if (one_minus_q <= 0.0L) return 0.0L;
    return std::exp((long double)ell * std::log(one_minus_q));
}

}  // namespace

uint32_t mac_degree(uint32_t ell, uint32_t nu, uint32_t lambda) {
    if (lambda == 0) throw std::invalid_argument("lambda must be nonzero");
    uint64_t base = (uint64_t(ell) * nu + lambda - 1) / lambda + 4;
    while (base % 4 != 3) base++;
    return uint32_t(base);
}

void finalize_params(Params& p, Construction c) {
    if (c == Construction::C1) {
        p.nu = p.xi + p.t;
        p.lambda = 0;
        p.L = 0;
    } else {
        if (!Field::supported(p.lambda))
            throw std::invalid_argument("Construction 2 requires a supported lambda");
        p.nu = p.xi + p.t + 2 * p.lambda;
        p.L = mac_degree(p.ell, p.nu, p.lambda);
    }
}

long double correctness_bound(const Params& p, Construction c) {
    if (p.m >= p.n) throw std::invalid_argument("m must be < n");
    if (p.t_prime >= p.n - p.m)
        throw std::invalid_argument("t' must be < n - m");
    long double miss = miss_term(p.n, p.m, p.t_prime, p.ell);
    long double coll = (long double)p.ell * std::exp2(-(long double)p.t);
    if (c == Construction::C2)
        coll *= (long double)p.L * std::exp2(-(long double)p.lambda);
    return miss + coll;
}

SolveEllResult solve_ell(uint32_t n, uint32_t m, uint32_t t_prime, uint32_t t,
                         long double target_eps) {
    if (target_eps <= 0.0L || target_eps >= 1.0L)
        throw std::invalid_argument("target must be in (0,1)");
    if (m >= n || t_prime >= n - m)
        throw std::invalid_argument("need m < n and t' < n - m");

    long double half = target_eps / 2.0L;
    long double coll_unit = std::exp2(-(long double)t);
    if (coll_unit > half) {
        std::ostringstream os;
        os << "collision floor 2^-" << t << " exceeds target/2";
        return {false, 0, os.str()};
    }

    constexpr uint32_t kMaxEll = 1u << 20;
    uint32_t ell = 0;
    for (uint32_t cand = 1; cand <= kMaxEll; cand++) {
        if (miss_term(n, m, t_prime, cand) <= half) {
            ell = cand;
            break;
        }
    }
    if (ell == 0)
        return {false, 0, "miss term does not reach target/2 within the ell cap"};
    if ((long double)ell * coll_unit > half) {
        std::ostringstream os;
        os << "collision term " << ell << "*2^-" << t
           << " exceeds target/2 at the minimal ell";
        return {false, 0, os.str()};
    }
    return {true, ell, ""};
}

int64_t max_key_length_raw(long double alpha, uint32_t ell, long double sigma,
                           uint32_t t, uint32_t lambda, Construction c) {
    if (alpha <= 0 || sigma <= 0 || ell == 0)
        throw std::invalid_argument("max_key_length needs positive alpha, sigma, ell");
    long double factor = (c == Construction::C1) ? 2.0L : 4.0L;
    long double log_term = log2_ratio(factor * (long double)ell, sigma);
    long double rhs = alpha + 2.0L - 2.0L * log_term - (long double)t;
    if (c == Construction::C2) rhs -= 2.0L * lambda;
    return int64_t(std::floor(rhs));
}

int64_t max_key_length(long double alpha, uint32_t ell, long double sigma,
                       uint32_t t, uint32_t lambda, Construction c) {
    int64_t raw = max_key_length_raw(alpha, ell, sigma, t, lambda, c);
    return raw < 0 ? 0 : raw;
}

long double extractor_epsilon_budget(const Params& p, Construction c) {
    long double factor = (c == Construction::C1) ? 2.0L : 4.0L;
    return p.sigma / (factor * (long double)p.ell);
}

long double robustness_delta(uint64_t q_e, uint64_t q_d, uint32_t ell,
                             uint32_t lambda, uint32_t L, long double eps) {
    return (long double)(q_d + q_e) * ell * eps +
           (long double)q_d * std::exp2(-(long double)lambda) * ell * (L + 1);
}

std::vector<std::string> validate(const Params& p, Construction c) {
    std::vector<std::string> v;
    auto fail = [&](const std::string& s) { v.push_back(s); };
    std::ostringstream os;

    if (p.m > p.n) {
        os.str("");
        os << "subsample size: m = " << p.m << " exceeds n = " << p.n;
        fail(os.str());
        return v;  // nothing else is meaningful
    }
    if (p.t_prime >= p.n - p.m) {
        os.str("");
        os << "noise bound: t' = " << p.t_prime << " must be < n - m = " << (p.n - p.m);
        fail(os.str());
    }

    uint32_t expect_nu = (c == Construction::C1) ? p.xi + p.t
                                                 : p.xi + p.t + 2 * p.lambda;
    if (p.nu != expect_nu) {
        os.str("");
        os << "output split: nu = " << p.nu << " but xi + t"
           << (c == Construction::C2 ? " + 2*lambda" : "") << " = " << expect_nu;
        fail(os.str());
    }

    int64_t xi_max = max_key_length(p.alpha, p.ell, p.sigma, p.t, p.lambda, c);
    if ((int64_t)p.xi > xi_max) {
        os.str("");
        os << "key length: xi = " << p.xi << " exceeds the Theorem bound " << xi_max;
        fail(os.str());
    }

    if (c == Construction::C1) {
        if (p.eta * (uint64_t)p.ell * p.m >= p.N) {
            os.str("");
            os << "source budget: ell*eta*m = " << p.eta * (uint64_t)p.ell * p.m
               << " must be < N = " << p.N;
            fail(os.str());
        }
    } else {
        if ((p.q_e + 1) * (uint64_t)p.ell * p.m >= p.N) {
            os.str("");
            os << "source budget: (q_e+1)*ell*m = " << (p.q_e + 1) * (uint64_t)p.ell * p.m
               << " must be < N = " << p.N;
            fail(os.str());
        }
        if ((p.q_e + p.q_d) * (uint64_t)p.ell * p.m >= p.N) {
            os.str("");
            os << "source budget: (q_e+q_d)*ell*m = "
               << (p.q_e + p.q_d) * (uint64_t)p.ell * p.m << " must be < N = " << p.N;
            fail(os.str());
        }
        if (!Field::supported(p.lambda)) {
            os.str("");
            os << "field width: lambda = " << p.lambda << " is not a supported width";
            fail(os.str());
        } else {
            uint32_t min_L = uint32_t((uint64_t(p.ell) * p.nu + p.lambda - 1) / p.lambda + 4);
            if (p.L < min_L) {
                os.str("");
                os << "MAC degree: L = " << p.L << " must be >= ceil(ell*nu/lambda)+4 = "
                   << min_L;
                fail(os.str());
            }
            if (p.L % 4 != 3) {
                os.str("");
                os << "MAC degree congruence: L = " << p.L
                   << " must be 3 mod 4 (suggested " << mac_degree(p.ell, p.nu, p.lambda)
                   << ")";
                fail(os.str());
            }
        }
    }

    if (p.t_prime < p.n - p.m) {  // only evaluable when the precondition holds
        long double bound = correctness_bound(p, c);
        if (bound > p.eps_prime) {
            os.str("");
            os << "correctness: formula bound " << (double)bound
               << " exceeds eps' = " << (double)p.eps_prime;
            fail(os.str());
        }
    }
    return v;
}

}  // namespace fuzex
