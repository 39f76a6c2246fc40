#include "fuzex/cli.hpp"

#include <CLI11.hpp>
#include <openssl/sha.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>

#include "fuzex/extractor.hpp"
#include "fuzex/games.hpp"
#include "fuzex/params.hpp"
#include "fuzex/rng.hpp"
#include "fuzex/serialize.hpp"
#include "fuzex/sources.hpp"

namespace fuzex {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBottom = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitDigest = 3;
constexpr int kExitMalformed = 4;
constexpr int kExitBoundViolation = 5;
constexpr int kExitUsage = 64;

uint64_t pick_seed(std::optional<uint64_t> flag_seed) {
    if (flag_seed) return *flag_seed;
    if (const char* env = std::getenv("FUZEX_SEED")) return std::strtoull(env, nullptr, 0);
    std::random_device rd;
    return uint64_t(rd()) << 32 | rd();
}

std::string sha256_hex(std::span<const uint8_t> bytes) {
    unsigned char digest[SHA256_DIGEST_LENGTH];
    SHA256(bytes.data(), bytes.size(), digest);
    std::ostringstream os;
    for (unsigned char b : digest)
        os << std::hex << std::setw(2) << std::setfill('0') << int(b);
    return os.str();
}

void print_key_commitment(std::ostream& out, const ExtractedKey& key) {
    out << "key-commitment sha256:" << sha256_hex(key.bits.to_bytes()) << "\n";
}

SourceModel parse_model(const std::string& spec) {
    // uniform | biased:RHO | block:B:K (n attached by the caller)
    std::istringstream is(spec);
    std::string kind;
    std::getline(is, kind, ':');
    SourceModel m = SourceModel::uniform(1);
    if (kind == "uniform") {
        m.kind = SourceModel::Kind::Uniform;
    } else if (kind == "biased") {
        std::string rho;
        if (!std::getline(is, rho, ':')) throw std::invalid_argument("biased:RHO");
        m.kind = SourceModel::Kind::BiasedBit;
        m.rho = std::stod(rho);
    } else if (kind == "block") {
        std::string b, k;
        if (!std::getline(is, b, ':') || !std::getline(is, k, ':'))
            throw std::invalid_argument("block:B:K");
        m.kind = SourceModel::Kind::BlockStructured;
        m.blocks = uint32_t(std::stoul(b));
        m.seed_bits = uint32_t(std::stoul(k));
    } else {
        throw std::invalid_argument("unknown source model: " + kind);
    }
    return m;
}

SourceModel model_with_n(SourceModel m, uint32_t n) {
    switch (m.kind) {
        case SourceModel::Kind::Uniform: return SourceModel::uniform(n);
        case SourceModel::Kind::BiasedBit: return SourceModel::biased(n, m.rho);
        case SourceModel::Kind::BlockStructured:
            return SourceModel::block_structured(n, m.blocks, m.seed_bits);
    }
    throw std::logic_error("unreachable");
}

// ----------------------------------------------------------------------------
// plan
// ----------------------------------------------------------------------------

struct PlanArgs {
    int construction = 1;
    double alpha = 0, sigma = 0, eps_prime = 0;
    uint64_t N = 0, eta = 1, q_e = 0, q_d = 0;
    uint32_t n = 0, m = 0, t_prime = 0, lambda = 128;
    std::optional<uint32_t> t;
};

int cmd_plan(const PlanArgs& a, std::ostream& out, std::ostream& err) {
    Construction c = a.construction == 1 ? Construction::C1 : Construction::C2;
    uint32_t t;
    if (a.t) {
        t = *a.t;
    } else {
        // ell depends only on the miss term; solve it with a collision-free t
        // first, then size t so ell * 2^-t stays inside the budget half
        SolveEllResult probe = solve_ell(a.n, a.m, a.t_prime, 64,
                                         (long double)a.eps_prime);
        if (!probe.feasible) {
            err << "infeasible: " << probe.reason << "\n";
            return kExitInfeasible;
        }
        t = uint32_t(std::ceil(std::log2(2.0L * probe.ell / (long double)a.eps_prime)));
    }
    SolveEllResult se = solve_ell(a.n, a.m, a.t_prime, t, (long double)a.eps_prime);
    if (!se.feasible) {
        err << "infeasible: " << se.reason << "\n";
        return kExitInfeasible;
    }
    int64_t xi_max = max_key_length((long double)a.alpha, se.ell, (long double)a.sigma, t,
                                    a.lambda, c);
    if (xi_max <= 0) {
        err << "infeasible: key-length constraint gives xi_max = " << xi_max
            << " (alpha too small for these sigma, ell, t"
            << (c == Construction::C2 ? ", lambda)" : ")") << "\n";
        return kExitInfeasible;
    }
    Params p;
    p.n = a.n;
    p.m = a.m;
    p.ell = se.ell;
    p.t = t;
    p.t_prime = a.t_prime;
    p.xi = uint32_t(xi_max);
    p.lambda = c == Construction::C2 ? a.lambda : 0;
    p.alpha = (long double)a.alpha;
    p.sigma = (long double)a.sigma;
    p.eps_prime = (long double)a.eps_prime;
    p.N = a.N;
    p.eta = a.eta;
    p.q_e = a.q_e;
    p.q_d = a.q_d;
    finalize_params(p, c);

    auto violations = validate(p, c);
    out << "construction " << a.construction << "\n";
    out << "ell " << p.ell << "\n";
    out << "t " << p.t << "\n";
    out << "xi_max " << p.xi << "\n";
    out << "nu " << p.nu << "\n";
    if (c == Construction::C2) out << "L " << p.L << "\n";
    out << "extractor-epsilon " << double(extractor_epsilon_budget(p, c)) << "\n";
    out << "correctness-bound " << double(correctness_bound(p, c)) << " target "
        << a.eps_prime << "\n";
    if (c == Construction::C1)
        out << "source-budget " << p.eta * uint64_t(p.ell) * p.m << " of N " << p.N << "\n";
    else {
        out << "source-budget-enroll " << (p.q_e + 1) * uint64_t(p.ell) * p.m << " of N "
            << p.N << "\n";
        out << "source-budget-queries " << (p.q_e + p.q_d) * uint64_t(p.ell) * p.m
            << " of N " << p.N << "\n";
        out << "robustness-delta "
            << double(robustness_delta(p.q_e, p.q_d, p.ell, p.lambda, p.L,
                                       extractor_epsilon_budget(p, c)))
            << "\n";
    }
    if (!violations.empty()) {
        for (const auto& v : violations) err << "violated: " << v << "\n";
        return kExitInfeasible;
    }
    out << "feasible\n";
    return kExitOk;
}

// ----------------------------------------------------------------------------
// sample / crs / enroll / reproduce
// ----------------------------------------------------------------------------

struct ParamFlags {
    uint32_t n = 0, m = 0, ell = 0, t = 0, t_prime = 0, xi = 0, lambda = 128;
};

Params params_from_flags(const ParamFlags& f, Construction c) {
    Params p;
    p.n = f.n;
    p.m = f.m;
    p.ell = f.ell;
    p.t = f.t;
    p.t_prime = f.t_prime;
    p.xi = f.xi;
    p.lambda = c == Construction::C2 ? f.lambda : 0;
    finalize_params(p, c);
    return p;
}

int cmd_sample(const std::string& model_spec, uint32_t n, const std::string& out_path,
               std::optional<uint64_t> seed, std::optional<uint32_t> perturb_t,
               const std::string& base_path, std::ostream& out, std::ostream& err) {
    Rng rng(pick_seed(seed));
    BitString w;
    if (!base_path.empty()) {
        if (!perturb_t) {
            err << "--base requires --perturb\n";
            return kExitUsage;
        }
        w = parse_sample(read_file(base_path));
        w = perturb(w, NoiseModel::random_t(*perturb_t), rng);
    } else {
        SourceModel model = model_with_n(parse_model(model_spec), n);
        w = model.draw(rng);
        if (perturb_t) w = perturb(w, NoiseModel::random_t(*perturb_t), rng);
    }
    auto bytes = serialize_sample(w);
    write_file(out_path, bytes);
    out << "sample " << out_path << " bits " << w.size() << "\n";
    return kExitOk;
}

int cmd_crs(const ParamFlags& f, const std::string& out_path,
            std::optional<uint64_t> seed, std::ostream& out, std::ostream&) {
    Params p = params_from_flags(f, Construction::C2);
    Rng rng(pick_seed(seed));
    Crs crs = generate_crs(p, rng);
    write_file(out_path, serialize_crs(crs, p));
    out << "crs " << out_path << " sets " << p.ell << " seed-bits "
        << (size_t(p.m) + p.nu - 1) << "\n";
    return kExitOk;
}

int cmd_enroll(int construction, const ParamFlags& f, const std::string& sample_path,
               const std::string& crs_path, const std::string& helper_path,
               const std::string& key_path, std::optional<uint64_t> seed,
               std::ostream& out, std::ostream& err) {
    Construction c = construction == 1 ? Construction::C1 : Construction::C2;
    Params p = params_from_flags(f, c);
    BitString w = parse_sample(read_file(sample_path));
    if (w.size() != p.n) {
        err << "sample length " << w.size() << " does not match n = " << p.n << "\n";
        return kExitMalformed;
    }
    Rng rng(pick_seed(seed));
    ExtractedKey key;
    std::vector<uint8_t> helper_bytes;
    if (c == Construction::C1) {
        ToeplitzSeed z = make_toeplitz_seed(p.m, p.nu, rng);
        auto [k, helper] = rfe_gen(w, z, p, rng);
        key = std::move(k);
        helper_bytes = serialize_helper(helper, z);
    } else {
        if (crs_path.empty()) {
            err << "Construction 2 enrollment requires --crs\n";
            return kExitUsage;
        }
        Crs crs = parse_crs(read_file(crs_path));
        ParamsDigest expect{p.n, p.m, p.ell, p.nu};
        if (!(crs.digest == expect)) {
            err << "CRS digest mismatch: file (" << crs.digest.n << "," << crs.digest.m
                << "," << crs.digest.ell << "," << crs.digest.nu << ") vs params ("
                << expect.n << "," << expect.m << "," << expect.ell << "," << expect.nu
                << ")\n";
            return kExitDigest;
        }
        auto [k, helper] = srrfe_gen(w, crs, p, rng);
        key = std::move(k);
        helper_bytes = serialize_helper(helper);
    }
    write_file(helper_path, helper_bytes);
    print_key_commitment(out, key);
    out << "helper " << helper_path << "\n";
    if (!key_path.empty()) {
        write_file(key_path, serialize_key(key, p, c));
        out << "key " << key_path << "\n";
    }
    return kExitOk;
}

int cmd_reproduce(const std::string& sample_path, const std::string& helper_path,
                  const std::string& crs_path, const std::string& key_path,
                  std::ostream& out, std::ostream& err) {
    BitString w = parse_sample(read_file(sample_path));
    auto helper_bytes = read_file(helper_path);
    uint8_t version = helper_version(helper_bytes);
    std::optional<ExtractedKey> key;
    Params p;
    if (version == 1) {
        auto [helper, z] = parse_helper_c1(helper_bytes);
        p = helper.params;
        if (w.size() != p.n) {
            err << "sample length " << w.size() << " does not match n = " << p.n << "\n";
            return kExitMalformed;
        }
        key = rfe_rep(w, helper, z);
    } else {
        if (crs_path.empty()) {
            err << "Construction 2 reproduction requires --crs\n";
            return kExitUsage;
        }
        SrrfeHelperData helper = parse_helper_c2(helper_bytes);
        p = helper.params;
        Crs crs = parse_crs(read_file(crs_path));
        if (!(crs.digest == helper.digest())) {
            err << "CRS digest does not match helper data\n";
            return kExitDigest;
        }
        if (w.size() != p.n) {
            err << "sample length " << w.size() << " does not match n = " << p.n << "\n";
            return kExitMalformed;
        }
        key = srrfe_rep(w, helper, crs);
    }
    if (!key) {
        out << "bottom\n";
        return kExitBottom;
    }
    print_key_commitment(out, *key);
    if (!key_path.empty()) {
        write_file(key_path, serialize_key(*key, p, version == 1 ? Construction::C1
                                                                 : Construction::C2));
        out << "key " << key_path << "\n";
    }
    return kExitOk;
}

// ----------------------------------------------------------------------------
// experiment
// ----------------------------------------------------------------------------

struct ExperimentConfig {
    std::string game, scheme = "rfe", model = "uniform", correlation = "shift";
    ParamFlags f;
    uint64_t trials = 1000, seed = 1, eta = 2, q_e = 1, q_d = 1;
    double sigma = 0.1, eps_prime = 0.1;
    uint64_t N = 0;
};

ExperimentConfig parse_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config: " + path);
    ExperimentConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream is(line);
        std::string key;
        if (!(is >> key) || key[0] == '#') continue;
        std::string value;
        if (!(is >> value)) throw ParseError("config line without value: " + line);
        auto u32 = [&] {
            try {
                return uint32_t(std::stoul(value));
            } catch (const std::exception&) {
                throw ParseError("bad config value: " + line);
            }
        };
        auto u64 = [&]() -> uint64_t {
            try {
                return std::stoull(value);
            } catch (const std::exception&) {
                throw ParseError("bad config value: " + line);
            }
        };
        auto f64 = [&] {
            try {
                return std::stod(value);
            } catch (const std::exception&) {
                throw ParseError("bad config value: " + line);
            }
        };
        if (key == "game") cfg.game = value;
        else if (key == "scheme") cfg.scheme = value;
        else if (key == "model") cfg.model = value;
        else if (key == "correlation") cfg.correlation = value;
        else if (key == "n") cfg.f.n = u32();
        else if (key == "m") cfg.f.m = u32();
        else if (key == "ell") cfg.f.ell = u32();
        else if (key == "t") cfg.f.t = u32();
        else if (key == "t-prime") cfg.f.t_prime = u32();
        else if (key == "xi") cfg.f.xi = u32();
        else if (key == "lambda") cfg.f.lambda = u32();
        else if (key == "trials") cfg.trials = u64();
        else if (key == "seed") cfg.seed = u64();
        else if (key == "eta") cfg.eta = u64();
        else if (key == "qe") cfg.q_e = u64();
        else if (key == "qd") cfg.q_d = u64();
        else if (key == "sigma") cfg.sigma = f64();
        else if (key == "eps-prime") cfg.eps_prime = f64();
        else if (key == "N") cfg.N = u64();
        else throw ParseError("unknown config key: " + key);
    }
    if (cfg.game.empty()) throw ParseError("config missing 'game'");
    return cfg;
}

int cmd_experiment(const std::string& config_path, const std::string& report_path,
                   std::ostream& out, std::ostream& err) {
    ExperimentConfig cfg = parse_experiment_config(config_path);
    Construction c = cfg.scheme == "srrfe" ? Construction::C2 : Construction::C1;
    SchemeKind scheme = cfg.scheme == "srrfe"  ? SchemeKind::Srrfe
                        : cfg.scheme == "broken" ? SchemeKind::BrokenRfe
                                                 : SchemeKind::Rfe;
    Params p = params_from_flags(cfg.f, c);
    p.sigma = (long double)cfg.sigma;
    p.eps_prime = (long double)cfg.eps_prime;
    p.eta = cfg.eta;
    p.q_e = cfg.q_e;
    p.q_d = cfg.q_d;
    p.N = cfg.N;
    SourceModel model = SourceModel::uniform(1);
    try {
        model = model_with_n(parse_model(cfg.model), p.n);
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad config model: ") + e.what());
    }
    p.alpha = model.certified_alpha(p.m, 0);
    Rng rng(cfg.seed);

    std::ostringstream report;
    report << "# fuzex experiment report\n";
    report << "game " << cfg.game << "\n";
    report << "scheme " << cfg.scheme << "\n";
    report << "trials " << cfg.trials << "\n";
    report << "seed " << cfg.seed << "\n";
    report << "note security bounds are checked against a fixed strategy suite, "
              "not over all adversaries\n";
    bool all_pass = true;

    if (cfg.game == "correctness") {
        NoiseModel noise = NoiseModel::random_t(p.t_prime);
        auto est = measure_correctness(scheme, p, model, noise, cfg.trials, rng);
        long double bound = correctness_bound(p, c);
        bool pass = est.failure_rate <= (double)bound || est.ci.lo <= (double)bound;
        all_pass &= pass;
        report << "metric failure-rate estimate " << est.failure_rate << " ci "
               << est.ci.lo << " " << est.ci.hi << " bound " << (double)bound << " "
               << (pass ? "PASS" : "FAIL") << "\n";
        report << "split bottom " << est.bottom << " wrong-key " << est.wrong_key
               << " success " << est.success << "\n";
    } else if (cfg.game == "reusability") {
        CorrelationKind corr = cfg.correlation == "window" ? CorrelationKind::Arbitrary
                                                           : CorrelationKind::Shift;
        long double bound = (long double)cfg.sigma;
        for (const auto& strat : reusability_strategy_suite()) {
            auto est = run_reusability_game(scheme, strat, model, corr, p,
                                            uint32_t(cfg.eta), 0, cfg.trials, rng);
            bool pass = est.advantage <= (double)bound + est.ci_margin;
            all_pass &= pass;
            report << "metric advantage strategy " << strat.name << " estimate "
                   << est.advantage << " ci-margin " << est.ci_margin << " bound "
                   << (double)bound << " " << (pass ? "PASS" : "FAIL") << "\n";
        }
    } else if (cfg.game == "robustness") {
        // statistical distance never exceeds 1, so the extractor error is
        // clamped before it enters the delta formula
        long double eps = std::min<long double>(1.0L, lhl_epsilon(p.nu, p.alpha));
        long double delta = robustness_delta(p.q_e, p.q_d, p.ell, p.lambda, p.L, eps);
        for (const auto& strat : robustness_strategy_suite()) {
            auto est = run_robustness_game(strat, model, p, nullptr, cfg.trials, rng);
            bool pass = est.rate <= (double)delta || est.ci.lo <= (double)delta;
            all_pass &= pass;
            report << "metric win-rate strategy " << strat.name << " estimate "
                   << est.rate << " ci " << est.ci.lo << " " << est.ci.hi << " bound "
                   << (double)delta << " " << (pass ? "PASS" : "FAIL") << "\n";
        }
    } else if (cfg.game == "distance") {
        auto res = exact_distance_oracle(scheme, p, model);
        long double eps = lhl_epsilon(p.nu, p.alpha);
        long double bound = (scheme == SchemeKind::Srrfe ? 4.0L : 2.0L) * p.ell * eps;
        bool pass = res.delta <= bound;
        all_pass &= pass;
        report << "metric exact-distance estimate " << (double)res.delta << " bound "
               << (double)bound << " " << (pass ? "PASS" : "FAIL") << "\n";
    } else {
        err << "unknown game: " << cfg.game << "\n";
        return kExitMalformed;
    }

    report << "status " << (all_pass ? "PASS" : "FAIL") << "\n";
    std::string text = report.str();
    if (!report_path.empty()) {
        std::vector<uint8_t> bytes(text.begin(), text.end());
        write_file(report_path, bytes);
    }
    out << text;
    return all_pass ? kExitOk : kExitBoundViolation;
}

}  // namespace

// ----------------------------------------------------------------------------

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"fuzzy extractors for structured sources (sample-then-lock)"};
    app.require_subcommand(1);

    // plan
    PlanArgs plan;
    auto* sub_plan = app.add_subcommand("plan", "solve the parameter inequalities");
    sub_plan->add_option("--construction", plan.construction)->check(CLI::Range(1, 2))
        ->required();
    sub_plan->add_option("--alpha", plan.alpha)->required();
    sub_plan->add_option("--source-budget", plan.N)->required();
    sub_plan->add_option("--n", plan.n)->required();
    sub_plan->add_option("--m", plan.m)->required();
    sub_plan->add_option("--t-prime", plan.t_prime)->required();
    sub_plan->add_option("--sigma", plan.sigma)->required();
    sub_plan->add_option("--eps-prime", plan.eps_prime)->required();
    uint32_t plan_t = 0;
    auto* plan_t_opt = sub_plan->add_option("--t", plan_t);
    sub_plan->add_option("--eta", plan.eta);
    sub_plan->add_option("--qe", plan.q_e);
    sub_plan->add_option("--qd", plan.q_d);
    sub_plan->add_option("--lambda", plan.lambda);

    // sample
    std::string smp_model = "uniform", smp_out, smp_base;
    uint32_t smp_n = 0;
    std::optional<uint64_t> smp_seed;
    std::optional<uint32_t> smp_perturb;
    uint64_t smp_seed_v = 0;
    uint32_t smp_perturb_v = 0;
    auto* sub_sample = app.add_subcommand("sample", "draw a source sample file");
    sub_sample->add_option("--model", smp_model);
    sub_sample->add_option("--n", smp_n);
    sub_sample->add_option("--out", smp_out)->required();
    auto* smp_seed_opt = sub_sample->add_option("--seed", smp_seed_v);
    auto* smp_pert_opt = sub_sample->add_option("--perturb", smp_perturb_v);
    sub_sample->add_option("--base", smp_base);

    auto add_param_flags = [](CLI::App* sub, ParamFlags& f, bool with_lambda) {
        sub->add_option("--n", f.n)->required();
        sub->add_option("--m", f.m)->required();
        sub->add_option("--ell", f.ell)->required();
        sub->add_option("--t", f.t)->required();
        sub->add_option("--t-prime", f.t_prime);
        sub->add_option("--xi", f.xi)->required();
        if (with_lambda) sub->add_option("--lambda", f.lambda);
    };

    // crs
    ParamFlags crs_f;
    std::string crs_out;
    uint64_t crs_seed_v = 0;
    auto* sub_crs = app.add_subcommand("crs", "generate a common random string file");
    add_param_flags(sub_crs, crs_f, true);
    sub_crs->add_option("--out", crs_out)->required();
    auto* crs_seed_opt = sub_crs->add_option("--seed", crs_seed_v);

    // enroll
    int enr_construction = 0;
    ParamFlags enr_f;
    std::string enr_sample, enr_crs, enr_helper, enr_key;
    uint64_t enr_seed_v = 0;
    auto* sub_enroll = app.add_subcommand("enroll", "run Gen on a sample file");
    sub_enroll->add_option("--construction", enr_construction)->check(CLI::Range(1, 2))
        ->required();
    add_param_flags(sub_enroll, enr_f, true);
    sub_enroll->add_option("--sample", enr_sample)->required();
    sub_enroll->add_option("--crs", enr_crs);
    sub_enroll->add_option("--out-helper", enr_helper)->required();
    sub_enroll->add_option("--emit-key", enr_key);
    auto* enr_seed_opt = sub_enroll->add_option("--seed", enr_seed_v);

    // reproduce
    std::string rep_sample, rep_helper, rep_crs, rep_key;
    auto* sub_rep = app.add_subcommand("reproduce", "run Rep on a sample + helper file");
    sub_rep->add_option("--sample", rep_sample)->required();
    sub_rep->add_option("--helper", rep_helper)->required();
    sub_rep->add_option("--crs", rep_crs);
    sub_rep->add_option("--emit-key", rep_key);

    // experiment
    std::string exp_config, exp_out;
    auto* sub_exp = app.add_subcommand("experiment", "run a configured experiment");
    sub_exp->add_option("--config", exp_config)->required();
    sub_exp->add_option("--out", exp_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (sub_plan->parsed()) {
            if (*plan_t_opt) plan.t = plan_t;
            return cmd_plan(plan, out, err);
        }
        if (sub_sample->parsed()) {
            if (*smp_seed_opt) smp_seed = smp_seed_v;
            if (*smp_pert_opt) smp_perturb = smp_perturb_v;
            if (smp_base.empty() && smp_n == 0) {
                err << "sample needs --n (or --base)\n";
                return kExitUsage;
            }
            return cmd_sample(smp_model, smp_n, smp_out, smp_seed, smp_perturb, smp_base,
                              out, err);
        }
        if (sub_crs->parsed()) {
            std::optional<uint64_t> s;
            if (*crs_seed_opt) s = crs_seed_v;
            return cmd_crs(crs_f, crs_out, s, out, err);
        }
        if (sub_enroll->parsed()) {
            std::optional<uint64_t> s;
            if (*enr_seed_opt) s = enr_seed_v;
            return cmd_enroll(enr_construction, enr_f, enr_sample, enr_crs, enr_helper,
                              enr_key, s, out, err);
        }
        if (sub_rep->parsed())
            return cmd_reproduce(rep_sample, rep_helper, rep_crs, rep_key, out, err);
        if (sub_exp->parsed()) return cmd_experiment(exp_config, exp_out, out, err);
    } catch (const DigestMismatchError& e) {
        err << "digest mismatch: " << e.what() << "\n";
        return kExitDigest;
    } catch (const ParseError& e) {
        err << "malformed input: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const std::invalid_argument& e) {
        err << "invalid parameters: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitMalformed;
    }
    return kExitUsage;
}

}  // namespace fuzex
