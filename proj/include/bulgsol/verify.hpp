#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bulgsol/sigma_rule.hpp"

namespace bulgsol {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    std::int64_t core_n = 60;         // enumeration-count cross-check cap
    std::int64_t rules_h = 10000;     // permutation-property scan cap
    std::int64_t dynamics_n = 16;     // step vs step_layers exhaustive cap
    std::int64_t cycle_oracle_n = 18; // find_cycle vs naive-oracle cap
    std::int64_t stability_n = 24;    // uniqueness-by-exhaustion cap
    std::int64_t convexity_n = 18;    // convexity-characterization cap
    std::int64_t marked_n = 12;       // marked-solitaire exhaustive cap
    std::int64_t conjecture_n = 30;   // conjecture-probe cap
    std::int64_t dominance_pairs = 20000;
    std::int64_t marked_triples = 2000;
    std::vector<std::int64_t> pile_bound_ns = {1000, 10000};
    std::int64_t pile_bound_starts = 50;
    bool big_regimes = false;         // n up to 1e7 shape sweeps and 1e6 trajectories
    std::uint64_t seed = 0;
    int workers = 1;
};

/// The standard rule battery: q = k/10 for k = 1..10, ordinary solitaire, and
/// twenty seeded random levels rules, all defined up to h_max.
std::vector<SigmaRule> verify_battery(std::int64_t h_max, std::uint64_t seed);

// Individual invariant batteries. Each returns one result per named check.
std::vector<CheckResult> check_core(const VerifyOptions& opt);
std::vector<CheckResult> check_rules(const VerifyOptions& opt);
std::vector<CheckResult> check_dynamics(const VerifyOptions& opt);
std::vector<CheckResult> check_stability(const VerifyOptions& opt);
std::vector<CheckResult> check_marked(const VerifyOptions& opt);
std::vector<CheckResult> check_shapes(const VerifyOptions& opt);
std::vector<CheckResult> check_conjecture(const VerifyOptions& opt);

// Single checks, for callers that pin their own sizes.
CheckResult check_step_layers_equiv(std::int64_t cap, std::uint64_t seed, int workers);
CheckResult check_dominance(std::int64_t random_pairs, std::uint64_t seed, int workers);
CheckResult check_new_pile_bounds(std::uint64_t seed);
CheckResult check_lifetime_bound();
CheckResult check_pile_count_bound(const std::vector<std::int64_t>& ns, std::int64_t starts,
                                   std::uint64_t seed, int workers);
CheckResult check_uniqueness_exhaustive(std::int64_t cap, std::uint64_t seed, int workers);
CheckResult check_convexity_characterization(std::int64_t cap);
CheckResult check_marked_exhaustive(std::int64_t cap, std::uint64_t seed, int workers);
CheckResult check_marked_random(std::int64_t triples, std::uint64_t seed, int workers);
CheckResult check_mark_roundtrip(std::uint64_t seed);
CheckResult check_g_function();
CheckResult check_z_solver();
CheckResult check_interpolating_family();
CheckResult check_regime_convergence(bool big);
CheckResult check_recurrent_regimes(bool big, std::uint64_t seed);
CheckResult check_conjecture_probe(std::int64_t cap, int workers);

/// suite in {core, rules, dynamics, stability, marked, shapes, conjecture, all}.
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opt);

/// Applies fn(i) for i in [0, count) across the worker pool; order-independent
/// work, deterministic aggregation is the caller's job.
void parallel_for(std::int64_t count, int workers, const std::function<void(std::int64_t)>& fn);

} // namespace bulgsol
