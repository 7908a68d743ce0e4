#include "bulgsol/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "bulgsol/dynamics.hpp"
#include "bulgsol/marked.hpp"
#include "bulgsol/rng.hpp"
#include "bulgsol/shapes.hpp"
#include "bulgsol/stability.hpp"

namespace bulgsol {

void parallel_for(std::int64_t count, int workers, const std::function<void(std::int64_t)>& fn) {
    if (workers <= 1 || count <= 1) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    const int spawn = static_cast<int>(std::min<std::int64_t>(workers, count));
    for (int w = 0; w < spawn; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const std::int64_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

std::vector<SigmaRule> verify_battery(std::int64_t h_max, std::uint64_t seed) {
    std::vector<SigmaRule> battery;
    for (int k = 1; k <= 10; ++k) battery.push_back(SigmaRule::q_proportion(Rational(k, 10)));
    battery.push_back(SigmaRule::levels({1}, h_max));  // ordinary solitaire
    Rng rng(seed);
    for (int i = 0; i < 20; ++i) {
        std::vector<std::int64_t> levels{1};
        for (std::int64_t h = 2; h <= h_max; ++h) {
            if (rng.below(3) == 0) levels.push_back(h);
        }
        battery.push_back(SigmaRule::levels(std::move(levels), h_max));
    }
    return battery;
}

namespace {

CheckResult pass(const std::string& name, const std::string& detail = "") {
    return {name, true, detail};
}

CheckResult failed(const std::string& name, const std::string& detail) {
    return {name, false, detail};
}

CheckResult guarded(const std::string& name, const std::function<CheckResult()>& body) {
    try {
        return body();
    } catch (const Error& e) {
        return failed(name, std::string("raised ") + e.what());
    } catch (const std::exception& e) {
        return failed(name, std::string("raised ") + e.what());
    }
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

bool is_fixpoint(const SigmaRule& rule, const std::vector<std::int64_t>& parts) {
    Stepper stepper(rule);
    std::vector<std::int64_t> next = parts;
    stepper.step_inplace(next);
    return next == parts;
}

} // namespace

// ---------------------------------------------------------------- core ----

CheckResult check_enumeration_counts(std::int64_t cap) {
    return guarded("core.enumeration-count", [&]() -> CheckResult {
        for (std::int64_t n = 0; n <= cap; ++n) {
            std::int64_t count = 0;
            std::vector<std::int64_t> prev;
            PartitionStream stream(n);
            std::vector<std::int64_t> parts;
            bool first = true;
            while (stream.next(parts)) {
                ++count;
                std::int64_t total = 0;
                for (std::int64_t v : parts) total += v;
                if (total != n) return failed("core.enumeration-count", "bad total at n=" + std::to_string(n));
                if (!first && !(parts < prev)) {
                    return failed("core.enumeration-count", "order violation at n=" + std::to_string(n));
                }
                prev = parts;
                first = false;
            }
            if (count != partition_count(n)) {
                return failed("core.enumeration-count",
                              "n=" + std::to_string(n) + ": got " + std::to_string(count) +
                                  ", pentagonal recurrence says " + std::to_string(partition_count(n)));
            }
        }
        return pass("core.enumeration-count", "p(n) matched for n <= " + std::to_string(cap));
    });
}

CheckResult check_boundary_properties(std::uint64_t seed) {
    return guarded("core.boundary", [&]() -> CheckResult {
        Rng rng(seed);
        for (int it = 0; it < 200; ++it) {
            const Partition p = random_partition(rng, rng.between(1, 400));
            // weakly decreasing, constant on unit steps
            double prev = std::numeric_limits<double>::infinity();
            for (std::int64_t k = 0; k <= static_cast<std::int64_t>(p.ell()) + 1; ++k) {
                const double x = static_cast<double>(k);
                const double y = static_cast<double>(boundary(p, x));
                if (y > prev) return failed("core.boundary", "boundary increased at " + p.str());
                if (boundary(p, x + 0.25) != boundary(p, x + 0.75)) {
                    return failed("core.boundary", "non-constant step at " + p.str());
                }
                prev = y;
            }
            if (downscale_boundary(p, p.n(), 0.0) != 1.0) {
                return failed("core.boundary", "downscale height not 1 at " + p.str());
            }
            // exact unit area: every column spans lambda1/n in x; query its
            // interior at an exact rational and accumulate width * height.
            // Heights are parts[i]/lambda1, so the area telescopes to
            // sum(parts)/n, which must be exactly 1.
            __int128 area_num = 0;
            const std::int64_t l1 = p.lambda1();
            for (std::size_t i = 0; i < p.ell(); ++i) {
                const Rational mid(static_cast<std::int64_t>(2 * i + 1) * l1, 2 * p.n());
                const double height = downscale_boundary(p, p.n(), mid);
                if (height != static_cast<double>(p.part(i)) / static_cast<double>(l1)) {
                    return failed("core.boundary", "column height mismatch at " + p.str());
                }
                area_num += p.part(i);
            }
            if (area_num != p.n()) return failed("core.boundary", "area != 1 at " + p.str());
        }
        return pass("core.boundary", "monotone piecewise-constant boundary, unit height and area");
    });
}

CheckResult check_convexity_bruteforce(std::int64_t cap) {
    return guarded("core.convexity-definition", [&]() -> CheckResult {
        for (std::int64_t n = 0; n <= cap; ++n) {
            PartitionStream stream(n);
            std::vector<std::int64_t> parts;
            while (stream.next(parts)) {
                const Partition p = Partition::validate(parts);
                // definition with two trailing virtual zeros
                std::vector<std::int64_t> padded = parts;
                padded.push_back(0);
                padded.push_back(0);
                bool brute = true;
                for (std::size_t i = 0; i + 2 < padded.size() && brute; ++i) {
                    if (padded[i] - padded[i + 1] < padded[i + 1] - padded[i + 2]) brute = false;
                }
                if (brute != is_convex(p)) {
                    return failed("core.convexity-definition", "mismatch at " + p.str());
                }
            }
        }
        return pass("core.convexity-definition", "matches the padded-difference definition");
    });
}

// --------------------------------------------------------------- rules ----

CheckResult check_q_grid_well_behaved() {
    return guarded("rules.q-grid-well-behaved", [&]() -> CheckResult {
        for (std::int64_t den = 1; den <= 20; ++den) {
            for (std::int64_t num = 1; num <= den; ++num) {
                const auto rule = SigmaRule::q_proportion(Rational(num, den));
                const auto report = is_well_behaved(rule, 2000);
                if (!report.ok) {
                    return failed("rules.q-grid-well-behaved",
                                  "q=" + Rational(num, den).str() + ": " + report.violations.front().describe());
                }
            }
        }
        return pass("rules.q-grid-well-behaved", "dense rational grid of (0,1]");
    });
}

CheckResult check_q_small_is_ordinary() {
    return guarded("rules.q-below-1/n-is-ordinary", [&]() -> CheckResult {
        for (std::int64_t n : {5LL, 17LL, 100LL, 999LL}) {
            const auto rule = SigmaRule::q_proportion(Rational(1, n));
            for (std::int64_t h = 1; h <= n; ++h) {
                if (rule.sigma(h) != 1) {
                    return failed("rules.q-below-1/n-is-ordinary",
                                  "q=1/" + std::to_string(n) + " sigma(" + std::to_string(h) + ") != 1");
                }
            }
        }
        return pass("rules.q-below-1/n-is-ordinary", "constant-1 rule on h <= n");
    });
}

CheckResult check_permutation_property(std::int64_t h_cap, std::uint64_t seed) {
    return guarded("rules.pick-level-permutation", [&]() -> CheckResult {
        std::vector<SigmaRule> rules;
        rules.push_back(SigmaRule::q_proportion(Rational(3, 10)));
        rules.push_back(SigmaRule::q_proportion(Rational(1, 7)));
        rules.push_back(SigmaRule::q_proportion(Rational(9, 10)));
        rules.push_back(SigmaRule::levels({1}, h_cap));
        Rng rng(seed);
        std::vector<std::int64_t> levels{1};
        for (std::int64_t h = 2; h <= h_cap; ++h) {
            if (rng.below(5) == 0) levels.push_back(h);
        }
        rules.push_back(SigmaRule::levels(std::move(levels), h_cap));

        for (const auto& rule : rules) {
            const auto H = picked_levels(rule, h_cap);
            // sliding window of P over [h - sigma(h) + 1, h]
            std::unordered_map<std::int64_t, std::int64_t> window;
            std::int64_t tail = 1;
            bool ok = true;
            std::int64_t bad_h = 0;
            std::size_t levels_below = 0;
            for (std::int64_t h = 1; h <= h_cap && ok; ++h) {
                const std::int64_t s = rule.sigma(h);
                // sigma counts the picked levels up to h
                while (levels_below < H.size() && H[levels_below] <= h) ++levels_below;
                if (s != static_cast<std::int64_t>(levels_below)) { ok = false; bad_h = h; break; }
                while (tail < h - s + 1) {
                    auto it = window.find(pick_level(rule, tail));
                    if (--(it->second) == 0) window.erase(it);
                    ++tail;
                }
                const std::int64_t p = pick_level(rule, h);
                if (p > H[static_cast<std::size_t>(s - 1)]) { ok = false; bad_h = h; break; }
                if (++window[p] > 1) { ok = false; bad_h = h; break; }
                if (static_cast<std::int64_t>(window.size()) != s) { ok = false; bad_h = h; break; }
            }
            if (!ok) {
                return failed("rules.pick-level-permutation",
                              rule.str() + " fails at h=" + std::to_string(bad_h));
            }
        }
        return pass("rules.pick-level-permutation",
                    "window of P(h) is a permutation of the picked prefix, h <= " + std::to_string(h_cap));
    });
}

CheckResult check_rule_from_convex(std::int64_t cap) {
    return guarded("rules.rule-from-convex", [&]() -> CheckResult {
        for (std::int64_t n = 1; n <= cap; ++n) {
            PartitionStream stream(n);
            std::vector<std::int64_t> parts;
            while (stream.next(parts)) {
                const Partition p = Partition::validate(parts);
                if (!is_convex(p)) continue;
                const SigmaRule rule = rule_from_convex(p);
                if (!is_well_behaved(rule, p.lambda1()).ok) {
                    return failed("rules.rule-from-convex", "rule not well-behaved for " + p.str());
                }
                for (std::size_t i = 0; i < p.ell(); ++i) {
                    if (rule.sigma(p.part(i)) != p.part(i) - p.part(i + 1)) {
                        return failed("rules.rule-from-convex", "sigma(lambda_i) mismatch for " + p.str());
                    }
                }
                if (step(rule, p) != p) {
                    return failed("rules.rule-from-convex", "rule does not fix " + p.str());
                }
            }
        }
        return pass("rules.rule-from-convex", "well-behaved and fixing, all convex p, n <= " + std::to_string(cap));
    });
}

// ------------------------------------------------------------ dynamics ----

CheckResult check_step_layers_equiv(std::int64_t cap, std::uint64_t seed, int workers) {
    return guarded("dynamics.step-layers-equivalence", [&]() -> CheckResult {
        const auto battery = verify_battery(std::max<std::int64_t>(cap, 8), seed);
        std::atomic<bool> ok{true};
        std::mutex mu;
        std::string detail;
        parallel_for(static_cast<std::int64_t>(battery.size()), workers, [&](std::int64_t r) {
            const auto& rule = battery[static_cast<std::size_t>(r)];
            for (std::int64_t n = 0; n <= cap && ok.load(); ++n) {
                PartitionStream stream(n);
                std::vector<std::int64_t> parts;
                while (stream.next(parts)) {
                    const Partition p = Partition::validate(parts);
                    if (step(rule, p) != step_layers(rule, p)) {
                        ok = false;
                        std::lock_guard<std::mutex> lock(mu);
                        detail = rule.str() + " at " + p.str();
                        return;
                    }
                }
            }
        });
        if (!ok) return failed("dynamics.step-layers-equivalence", detail);
        return pass("dynamics.step-layers-equivalence",
                    "all p in P(n), n <= " + std::to_string(cap) + ", full battery");
    });
}

CheckResult check_card_conservation(std::uint64_t seed) {
    return guarded("dynamics.card-conservation", [&]() -> CheckResult {
        Rng rng(seed);
        const auto battery = verify_battery(100000, seed);
        for (const auto& rule : battery) {
            for (int it = 0; it < 20; ++it) {
                Partition p = random_partition(rng, rng.between(1, 5000));
                Stepper stepper(rule);
                std::vector<std::int64_t> parts = p.parts();
                for (int t = 0; t < 50; ++t) {
                    stepper.step_inplace(parts);
                    std::int64_t total = 0;
                    for (std::int64_t v : parts) total += v;
                    if (total != p.n()) {
                        return failed("dynamics.card-conservation", rule.str() + " from " + p.str());
                    }
                }
            }
        }
        return pass("dynamics.card-conservation", "battery x random starts x 50 moves");
    });
}

CheckResult check_dominance(std::int64_t random_pairs, std::uint64_t seed, int workers) {
    return guarded("dynamics.dominance-preservation", [&]() -> CheckResult {
        // exhaustive over small n: every dominated pair inside P(m) x P(n)
        const auto small_battery = verify_battery(64, seed);
        for (std::int64_t n = 1; n <= 9; ++n) {
            std::vector<Partition> all;
            for (std::int64_t m = 0; m <= n; ++m) {
                PartitionStream stream(m);
                std::vector<std::int64_t> parts;
                while (stream.next(parts)) all.push_back(Partition::validate(parts));
            }
            for (const auto& kappa : all) {
                for (const auto& lam : all) {
                    if (!dominates(kappa, lam)) continue;
                    for (const auto& rule : small_battery) {
                        if (!dominates(step(rule, kappa), step(rule, lam))) {
                            return failed("dynamics.dominance-preservation",
                                          rule.str() + ": " + kappa.str() + " vs " + lam.str());
                        }
                    }
                }
            }
        }
        // random large pairs
        const auto battery = verify_battery(4000, seed);
        std::atomic<std::int64_t> violations{0};
        const int spawn = std::max(workers, 1);
        parallel_for(spawn, workers, [&](std::int64_t w) {
            Rng rng(seed + 17 * static_cast<std::uint64_t>(w) + 1);
            const std::int64_t quota = random_pairs / spawn + 1;
            for (std::int64_t it = 0; it < quota; ++it) {
                const Partition kappa = random_partition(rng, rng.between(1, 2000));
                const Partition lam = random_dominated(rng, kappa);
                const auto& rule = battery[static_cast<std::size_t>(rng.below(battery.size()))];
                if (!dominates(step(rule, kappa), step(rule, lam))) {
                    violations.fetch_add(1);
                }
            }
        });
        if (violations.load() > 0) {
            return failed("dynamics.dominance-preservation",
                          std::to_string(violations.load()) + " random-pair violations");
        }
        return pass("dynamics.dominance-preservation",
                    "exhaustive n <= 9 and " + std::to_string(random_pairs) + "+ random dominated pairs");
    });
}

CheckResult check_new_pile_bounds(std::uint64_t seed) {
    return guarded("dynamics.new-pile-bounds", [&]() -> CheckResult {
        Rng rng(seed);
        for (int k = 1; k <= 10; ++k) {
            const Rational q(k, 10);
            const auto rule = SigmaRule::q_proportion(q);
            Stepper stepper(rule);
            for (int it = 0; it < 25; ++it) {
                const Partition start = random_partition(rng, rng.between(1, 20000));
                std::vector<std::int64_t> parts = start.parts();
                for (int t = 0; t < 200; ++t) {
                    const std::int64_t m = static_cast<std::int64_t>(parts.size());
                    if (m == 0) break;
                    stepper.step_inplace(parts);
                    const std::int64_t nu = stepper.last_new_pile();
                    // nq <= nu < nq + m, exactly in integers
                    const __int128 lhs = static_cast<__int128>(q.num) * start.n();
                    const __int128 mid = static_cast<__int128>(nu) * q.den;
                    const __int128 rhs = lhs + static_cast<__int128>(m) * q.den;
                    if (!(lhs <= mid && mid < rhs)) {
                        return failed("dynamics.new-pile-bounds",
                                      "q=" + q.str() + " from " + start.str() + " at move " + std::to_string(t));
                    }
                }
            }
        }
        return pass("dynamics.new-pile-bounds", "nq <= new pile < nq + m on every logged step");
    });
}

CheckResult check_lifetime_bound() {
    return guarded("dynamics.pile-lifetime-bound", [&]() -> CheckResult {
        for (std::int64_t den : {2LL, 3LL, 5LL, 10LL, 30LL, 100LL, 1000LL}) {
            for (std::int64_t num = 1; num <= std::min<std::int64_t>(den, 9); num += 2) {
                const Rational q(num, den);
                const auto rule = SigmaRule::q_proportion(q);
                for (std::int64_t h = 1; h <= 1000000; h *= 4) {
                    const double qh = q.to_double() * static_cast<double>(h);
                    if (qh < 1.0) continue;
                    const double bound = (std::log(qh) + 1.0) / q.to_double();
                    const std::int64_t life = pile_lifetime(rule, h);
                    if (static_cast<double>(life) > bound + 1e-9) {
                        return failed("dynamics.pile-lifetime-bound",
                                      "q=" + q.str() + " h=" + std::to_string(h) + ": " +
                                          std::to_string(life) + " > " + fmt(bound));
                    }
                }
            }
        }
        return pass("dynamics.pile-lifetime-bound", "(ln(qh)+1)/q holds on the (q,h) log grid");
    });
}

CheckResult check_pile_count_bound(const std::vector<std::int64_t>& ns, std::int64_t starts,
                                   std::uint64_t seed, int workers) {
    return guarded("dynamics.pile-count-bound", [&]() -> CheckResult {
        const std::vector<Rational> qs = {Rational(9, 10), Rational(1, 2), Rational(1, 10),
                                          Rational(1, 100), Rational(1, 1000)};
        std::atomic<std::int64_t> violations{0};
        for (std::int64_t n : ns) {
            parallel_for(starts, workers, [&](std::int64_t s) {
                Rng rng(seed + 977 * static_cast<std::uint64_t>(s) + static_cast<std::uint64_t>(n));
                const Rational q = qs[static_cast<std::size_t>(s) % qs.size()];
                Stepper stepper(SigmaRule::q_proportion(q));
                std::vector<std::int64_t> parts = random_partition(rng, n, n).parts();
                for (std::int64_t t = 0; t < n; ++t) stepper.step_inplace(parts);
                const std::int64_t piles = static_cast<std::int64_t>(parts.size());
                if (piles * piles > 4 * n) violations.fetch_add(1);
            });
        }
        if (violations.load() > 0) {
            return failed("dynamics.pile-count-bound", std::to_string(violations.load()) + " violations");
        }
        std::string sizes;
        for (std::int64_t n : ns) sizes += (sizes.empty() ? "" : ",") + std::to_string(n);
        return pass("dynamics.pile-count-bound",
                    "<= 2*sqrt(n) piles after n moves, n in {" + sizes + "}, " +
                        std::to_string(starts) + " starts each");
    });
}

CheckResult check_cycle_oracle(std::int64_t cap, std::uint64_t seed) {
    return guarded("dynamics.cycle-oracle", [&]() -> CheckResult {
        std::vector<SigmaRule> rules;
        rules.push_back(SigmaRule::levels({1}, std::max<std::int64_t>(cap, 4)));
        rules.push_back(SigmaRule::q_proportion(Rational(3, 10)));
        rules.push_back(SigmaRule::q_proportion(Rational(1, 2)));
        Rng rng(seed);
        std::vector<std::int64_t> levels{1};
        for (std::int64_t h = 2; h <= cap; ++h) {
            if (rng.below(2) == 0) levels.push_back(h);
        }
        rules.push_back(SigmaRule::levels(std::move(levels), std::max<std::int64_t>(cap, 4)));
        for (const auto& rule : rules) {
            for (std::int64_t n = 1; n <= cap; ++n) {
                PartitionStream stream(n);
                std::vector<std::int64_t> parts;
                while (stream.next(parts)) {
                    const Partition start = Partition::validate(parts);
                    // naive oracle: hash every visited configuration
                    std::unordered_map<std::string, std::int64_t> seen;
                    std::vector<std::int64_t> cur = parts;
                    Stepper stepper(rule);
                    std::int64_t t = 0;
                    std::string key;
                    while (true) {
                        key.clear();
                        for (std::int64_t v : cur) key.push_back(static_cast<char>(v));
                        auto [it, fresh] = seen.emplace(key, t);
                        if (!fresh) {
                            const std::int64_t tail = it->second;
                            const std::int64_t period = t - tail;
                            const CycleInfo info = find_cycle(rule, start);
                            if (info.tail_length != tail || info.cycle_length != period) {
                                return failed("dynamics.cycle-oracle",
                                              rule.str() + " from " + start.str() + ": naive (" +
                                                  std::to_string(tail) + "," + std::to_string(period) +
                                                  ") vs brent (" + std::to_string(info.tail_length) + "," +
                                                  std::to_string(info.cycle_length) + ")");
                            }
                            // cycle members must map around and close
                            for (std::size_t i = 0; i < info.cycle.size(); ++i) {
                                const Partition& a = info.cycle[i];
                                const Partition& b = info.cycle[(i + 1) % info.cycle.size()];
                                if (step(rule, a) != b) {
                                    return failed("dynamics.cycle-oracle", "cycle does not close for " + start.str());
                                }
                            }
                            break;
                        }
                        stepper.step_inplace(cur);
                        ++t;
                    }
                }
            }
        }
        return pass("dynamics.cycle-oracle", "brent agrees with hash-all-visited, n <= " + std::to_string(cap));
    });
}

CheckResult check_recurrent_sharding(std::uint64_t seed) {
    return guarded("dynamics.recurrent-shard-determinism", [&]() -> CheckResult {
        const auto q = SigmaRule::q_proportion(Rational(3, 10));
        for (std::int64_t n : {8LL, 11LL, 14LL}) {
            const auto one = enumerate_recurrent(q, n, 45, 1);
            const auto three = enumerate_recurrent(q, n, 45, 3);
            const auto five = enumerate_recurrent(q, n, 45, 5);
            if (one != three || one != five) {
                return failed("dynamics.recurrent-shard-determinism", "n=" + std::to_string(n));
            }
        }
        (void)seed;
        return pass("dynamics.recurrent-shard-determinism", "1, 3 and 5 shards agree");
    });
}

// ----------------------------------------------------------- stability ----

CheckResult check_stable_fixpoints(std::uint64_t seed) {
    return guarded("stability.stable-from-top-fixpoint", [&]() -> CheckResult {
        const auto battery = verify_battery(2000, seed);
        for (const auto& rule : battery) {
            for (std::int64_t l1 = 1; l1 <= 300; l1 += 7) {
                const Partition p = stable_from_top(rule, l1);
                if (step(rule, p) != p) {
                    return failed("stability.stable-from-top-fixpoint",
                                  rule.str() + " lambda1=" + std::to_string(l1));
                }
            }
        }
        // large tops for unbounded q-rules
        for (int k = 1; k <= 10; ++k) {
            const auto rule = SigmaRule::q_proportion(Rational(k, 10));
            for (std::int64_t l1 : {100000LL, 1000000LL}) {
                const Partition p = stable_from_top(rule, l1);
                if (step(rule, p) != p) {
                    return failed("stability.stable-from-top-fixpoint",
                                  rule.str() + " lambda1=" + std::to_string(l1));
                }
            }
        }
        return pass("stability.stable-from-top-fixpoint", "battery tops and q-rule tops up to 1e6");
    });
}

CheckResult check_uniqueness_exhaustive(std::int64_t cap, std::uint64_t seed, int workers) {
    return guarded("stability.uniqueness-by-exhaustion", [&]() -> CheckResult {
        const auto battery = verify_battery(std::max<std::int64_t>(cap, 8), seed);
        std::atomic<bool> ok{true};
        std::mutex mu;
        std::string detail;
        parallel_for(static_cast<std::int64_t>(battery.size()), workers, [&](std::int64_t r) {
            const auto& rule = battery[static_cast<std::size_t>(r)];
            for (std::int64_t n = 1; n <= cap && ok.load(); ++n) {
                std::vector<Partition> fixpoints;
                PartitionStream stream(n);
                std::vector<std::int64_t> parts;
                while (stream.next(parts)) {
                    if (is_fixpoint(rule, parts)) fixpoints.push_back(Partition::validate(parts));
                }
                std::string problem;
                if (fixpoints.size() > 1) {
                    problem = "two fixpoints at n=" + std::to_string(n);
                } else {
                    const auto search = find_stable(rule, n);
                    if (search.found != (fixpoints.size() == 1)) {
                        problem = "find_stable verdict mismatch at n=" + std::to_string(n);
                    } else if (search.found && !(search.config == fixpoints.front())) {
                        problem = "find_stable config mismatch at n=" + std::to_string(n);
                    }
                    for (const auto& fp : fixpoints) {
                        if (!is_convex(fp)) problem = "non-convex fixpoint " + fp.str();
                    }
                }
                if (!problem.empty()) {
                    ok = false;
                    std::lock_guard<std::mutex> lock(mu);
                    detail = rule.str() + ": " + problem;
                    return;
                }
            }
        });
        if (!ok.load()) return failed("stability.uniqueness-by-exhaustion", detail);
        return pass("stability.uniqueness-by-exhaustion",
                    "<=1 fixpoint per (rule, n), matching find_stable, n <= " + std::to_string(cap));
    });
}

CheckResult check_gap_bound(std::uint64_t seed) {
    return guarded("stability.gap-bound", [&]() -> CheckResult {
        const auto battery = verify_battery(11000, seed);
        for (const auto& rule : battery) {
            Partition prev = stable_from_top(rule, 1);
            for (std::int64_t l1 = 2; l1 <= 10000; ++l1) {
                const std::int64_t t_prev = prev.n();
                const Partition cur = stable_from_top(rule, l1);
                const std::int64_t gap = cur.n() - t_prev;
                if (gap < 1 || gap > static_cast<std::int64_t>(prev.ell()) + 1) {
                    return failed("stability.gap-bound",
                                  rule.str() + " lambda1=" + std::to_string(l1) + " gap=" + std::to_string(gap));
                }
                prev = cur;
            }
        }
        return pass("stability.gap-bound", "1 <= T(l1+1)-T(l1) <= ell+1 for l1 <= 10^4");
    });
}

CheckResult check_nstar_monotone(std::uint64_t seed) {
    return guarded("stability.n-star-monotone", [&]() -> CheckResult {
        const auto battery = verify_battery(600, seed);
        for (const auto& rule : battery) {
            std::int64_t prev = 0;
            std::optional<std::int64_t> hint;
            for (std::int64_t n = 1; n <= 500; ++n) {
                const auto r = n_star(rule, n, hint);
                hint = r.lambda1;
                if (r.n_star < prev || r.n_star > n) {
                    return failed("stability.n-star-monotone", rule.str() + " at n=" + std::to_string(n));
                }
                if (n - r.n_star > static_cast<std::int64_t>(r.config.ell()) + 1) {
                    return failed("stability.n-star-monotone",
                                  rule.str() + " distance to n* exceeds ell+1 at n=" + std::to_string(n));
                }
                prev = r.n_star;
            }
        }
        return pass("stability.n-star-monotone", "n* non-decreasing with n - n* <= ell+1, n <= 500");
    });
}

CheckResult check_convexity_characterization(std::int64_t cap) {
    return guarded("stability.convexity-characterization", [&]() -> CheckResult {
        for (std::int64_t n = 1; n <= cap; ++n) {
            PartitionStream stream(n);
            std::vector<std::int64_t> parts;
            while (stream.next(parts)) {
                const Partition p = Partition::validate(parts);
                if (is_convex(p)) {
                    if (step(rule_from_convex(p), p) != p) {
                        return failed("stability.convexity-characterization",
                                      "constructed rule does not fix convex " + p.str());
                    }
                } else {
                    bool refused = false;
                    try {
                        (void)rule_from_convex(p);
                    } catch (const Error& e) {
                        refused = (e.code() == ErrorCode::NotConvex);
                    }
                    if (!refused) {
                        return failed("stability.convexity-characterization",
                                      "non-convex " + p.str() + " not refused");
                    }
                }
            }
        }
        return pass("stability.convexity-characterization",
                    "convex <=> fixed by its constructed rule, n <= " + std::to_string(cap));
    });
}

// -------------------------------------------------------------- marked ----

CheckResult check_marked_exhaustive(std::int64_t cap, std::uint64_t seed, int workers) {
    return guarded("marked.exhaustive-monotonicity", [&]() -> CheckResult {
        std::vector<SigmaRule> rules;
        for (int k = 1; k <= 10; ++k) rules.push_back(SigmaRule::q_proportion(Rational(k, 10)));
        rules.push_back(SigmaRule::levels({1}, 4 * cap));
        Rng lrng(seed);
        for (int i = 0; i < 4; ++i) {
            std::vector<std::int64_t> levels{1};
            for (std::int64_t h = 2; h <= 4 * cap; ++h) {
                if (lrng.below(3) == 0) levels.push_back(h);
            }
            rules.push_back(SigmaRule::levels(std::move(levels), 4 * cap));
        }
        std::atomic<bool> ok{true};
        std::mutex mu;
        std::string detail;
        parallel_for(static_cast<std::int64_t>(rules.size()), workers, [&](std::int64_t r) {
            const auto& rule = rules[static_cast<std::size_t>(r)];
            for (std::int64_t l1 = 1; l1 <= cap && ok.load(); ++l1) {
                const Partition ref = stable_from_top(rule, l1);
                for (std::int64_t n = 0; n <= cap && ok.load(); ++n) {
                    PartitionStream stream(n);
                    std::vector<std::int64_t> parts;
                    while (stream.next(parts)) {
                        const Partition start = Partition::validate(parts);
                        MarkedConfig mc = mark(rule, start, ref);
                        std::int64_t plus = mc.plus_total();
                        std::int64_t minus = mc.minus_total();
                        std::string problem;
                        if (plus - minus != n - ref.n()) problem = "totals difference wrong at t=0";
                        if (mc.live_projection() != start) problem = "live projection wrong at t=0";
                        Partition expect = start;
                        for (int t = 0; t < 25 && problem.empty(); ++t) {
                            mc = marked_step(rule, mc);
                            expect = step(rule, expect);
                            const std::int64_t p2 = mc.plus_total();
                            const std::int64_t m2 = mc.minus_total();
                            if (p2 > plus || m2 > minus) problem = "totals increased at t=" + std::to_string(t + 1);
                            if (p2 - m2 != n - ref.n()) problem = "difference drifted at t=" + std::to_string(t + 1);
                            if (mc.live_projection() != expect) problem = "live projection diverged";
                            if (!(mc.reference == ref)) problem = "reference mutated";
                            for (const auto& pile : mc.piles) {
                                if (pile.plus != 0 && pile.minus != 0) problem = "pile carries both marks";
                            }
                            plus = p2;
                            minus = m2;
                        }
                        if (!problem.empty()) {
                            ok = false;
                            std::lock_guard<std::mutex> lock(mu);
                            detail = rule.str() + " ref=" + ref.str() + " start=" + start.str() + ": " + problem;
                            return;
                        }
                    }
                }
            }
        });
        if (!ok.load()) return failed("marked.exhaustive-monotonicity", detail);
        return pass("marked.exhaustive-monotonicity",
                    "projections and non-increasing totals, all starts n <= " + std::to_string(cap));
    });
}

CheckResult check_marked_random(std::int64_t triples, std::uint64_t seed, int workers) {
    return guarded("marked.random-triples", [&]() -> CheckResult {
        const auto battery = verify_battery(3000, seed);
        std::atomic<std::int64_t> bad{0};
        const int spawn = std::max(workers, 1);
        parallel_for(spawn, workers, [&](std::int64_t w) {
            Rng rng(seed + 31 * static_cast<std::uint64_t>(w) + 7);
            const std::int64_t quota = triples / spawn + 1;
            for (std::int64_t it = 0; it < quota; ++it) {
                const auto& rule = battery[static_cast<std::size_t>(rng.below(battery.size()))];
                const std::int64_t l1 = rng.between(1, 60);
                const Partition ref = stable_from_top(rule, l1);
                const Partition start = random_partition(rng, rng.between(1, 2 * ref.n() + 10));
                const auto trace = surplus_trace(rule, start, ref, 40);
                for (std::size_t t = 1; t < trace.size(); ++t) {
                    if (trace[t].first > trace[t - 1].first || trace[t].second > trace[t - 1].second) {
                        bad.fetch_add(1);
                        break;
                    }
                }
            }
        });
        if (bad.load() > 0) {
            return failed("marked.random-triples", std::to_string(bad.load()) + " non-monotone traces");
        }
        return pass("marked.random-triples",
                    std::to_string(triples) + "+ random (rule, start, reference) traces non-increasing");
    });
}

CheckResult check_mark_roundtrip(std::uint64_t seed) {
    return guarded("marked.roundtrip", [&]() -> CheckResult {
        Rng rng(seed);
        const auto battery = verify_battery(500, seed);
        for (int it = 0; it < 300; ++it) {
            const auto& rule = battery[static_cast<std::size_t>(rng.below(battery.size()))];
            const Partition ref = stable_from_top(rule, rng.between(1, 40));
            const Partition p = random_partition(rng, rng.between(1, 150));
            const MarkedConfig mc = mark(rule, p, ref);
            if (mc.live_projection() != p) return failed("marked.roundtrip", "live projection broken");
            std::vector<std::int64_t> ref_parts;
            for (const auto& pile : mc.piles) {
                if (pile.ref() > 0) ref_parts.push_back(pile.ref());
            }
            if (Partition::from_unsorted(ref_parts) != ref) {
                return failed("marked.roundtrip", "reference projection broken");
            }
            const auto dev = deviation(p, ref);
            if (dev.surplus_total != mc.plus_total() || dev.deficit_total != mc.minus_total()) {
                return failed("marked.roundtrip", "mark totals disagree with deviation");
            }
            if (dev.surplus_total - dev.deficit_total != p.n() - ref.n()) {
                return failed("marked.roundtrip", "deviation totals don't sum to n - n*");
            }
        }
        return pass("marked.roundtrip", "mark projections reproduce p and the reference");
    });
}

// -------------------------------------------------------------- shapes ----

CheckResult check_g_function() {
    return guarded("shapes.g-monotone-continuous", [&]() -> CheckResult {
        double prev = 0.0;
        for (double z = 0.01; z <= 50.0; z += 0.01) {
            const double g = g_of_z(z);
            if (g <= prev) return failed("shapes.g-monotone-continuous", "not increasing at z=" + fmt(z));
            prev = g;
        }
        for (std::int64_t k = 1; k <= 50; ++k) {
            const double lo = g_of_z(static_cast<double>(k) - 1e-9);
            const double hi = g_of_z(static_cast<double>(k) + 1e-9);
            if (std::abs(hi - lo) > 1e-7) {
                return failed("shapes.g-monotone-continuous", "jump at z=" + std::to_string(k));
            }
        }
        return pass("shapes.g-monotone-continuous", "strictly increasing, continuous at integers");
    });
}

CheckResult check_z_solver() {
    return guarded("shapes.z-solver", [&]() -> CheckResult {
        if (std::abs(solve_z(0.5) - 1.0) > 1e-9) return failed("shapes.z-solver", "solve_z(0.5) != 1");
        if (std::abs(solve_z(1.0) - std::sqrt(3.0)) > 1e-9) {
            return failed("shapes.z-solver", "solve_z(1) != sqrt(3): " + fmt(solve_z(1.0)));
        }
        if (std::abs(solve_z(0.02) - 0.2) > 1e-12) return failed("shapes.z-solver", "solve_z(0.02) != 0.2");
        if (std::abs(g_of_z(1.0) - 1.0) > 1e-12) return failed("shapes.z-solver", "g(1) != 1");
        if (std::abs(g_of_z(std::sqrt(3.0)) - 2.0) > 1e-12) return failed("shapes.z-solver", "g(sqrt 3) != 2");
        return pass("shapes.z-solver", "closed form and bisection agree with hand values");
    });
}

CheckResult check_interpolating_family() {
    return guarded("shapes.interpolating-family", [&]() -> CheckResult {
        for (double e = -3.0; e <= 3.0 + 1e-12; e += 0.1) {
            const double C = std::pow(10.0, e);
            const LimitShape shape = interpolating_shape(C);  // construction verifies height/area at 1e-9
            if (C <= 0.5) {
                for (double x = 0.0; x <= 2.2; x += 0.01) {
                    if (std::abs(shape_eval(shape, x) - std::max(0.0, 1.0 - 0.5 * x)) > 1e-9) {
                        return failed("shapes.interpolating-family", "no triangle collapse at C=" + fmt(C));
                    }
                }
            }
        }
        double prev = std::numeric_limits<double>::infinity();
        for (double C : {10.0, 100.0, 1000.0}) {
            const LimitShape shape = interpolating_shape(C);
            double sup = 0.0;
            for (int i = 0; i <= 4096; ++i) {
                const double x = 4.0 * static_cast<double>(i) / 4096.0;
                sup = std::max(sup, std::abs(shape_eval(shape, x) - std::exp(-x)));
            }
            if (sup >= prev) {
                return failed("shapes.interpolating-family", "exp distance not decreasing at C=" + fmt(C));
            }
            prev = sup;
        }
        return pass("shapes.interpolating-family",
                    "height/area at 1e-9 on the C log grid, triangle collapse, exp approach");
    });
}

CheckResult check_regime_classifier() {
    return guarded("shapes.regime-classifier", [&]() -> CheckResult {
        if (regime_shape(Rational(1, 1000), 1000).kind != ShapeKind::Triangle) {
            return failed("shapes.regime-classifier", "q=1/n not triangle");
        }
        if (regime_shape(Rational(1, 32), 1000000).kind != ShapeKind::Exponential) {
            return failed("shapes.regime-classifier", "q=n^{-1/4} at n=1e6 not exponential");
        }
        const LimitShape mid = regime_shape(Rational(1, 1000), 1000000);
        if (mid.kind != ShapeKind::Interpolating || std::abs(mid.C - 1.0) > 1e-9) {
            return failed("shapes.regime-classifier", "q=sqrt(1/n) not interpolating(1)");
        }
        return pass("shapes.regime-classifier", "three finite-n regimes classified");
    });
}

CheckResult check_staircase_distance() {
    return guarded("shapes.staircase-distance", [&]() -> CheckResult {
        std::vector<std::int64_t> parts;
        for (std::int64_t v = 1000; v >= 1; --v) parts.push_back(v);
        const Partition p = Partition::validate(parts);
        const LimitShape tri = LimitShape::triangle();
        const auto grid = default_distance_grid(tri, p, p.n());
        const auto dist = empirical_distance(p, p.n(), tri, grid);
        if (dist.sup_error > 2.0 / 1000.0) {
            return failed("shapes.staircase-distance", "sup=" + fmt(dist.sup_error) + " > 2/1000");
        }
        return pass("shapes.staircase-distance", "exact staircase within 2/lambda1 of the triangle");
    });
}

CheckResult check_shape_to_stable() {
    return guarded("shapes.shape-to-stable", [&]() -> CheckResult {
        // c = 0, triangle: exact totals, convexity, fixpoint, and the scaled
        // boundary converging to the triangle on the construction's own grid.
        double prev_sup = std::numeric_limits<double>::infinity();
        for (std::int64_t n : {10000LL, 1000000LL}) {
            const Partition mu = shape_to_stable(LimitShape::triangle(), 0.0, n);
            if (mu.n() != n) return failed("shapes.shape-to-stable", "total != n");
            if (!is_convex(mu)) return failed("shapes.shape-to-stable", "c=0 result not convex");
            if (step(rule_from_convex(mu), mu) != mu) {
                return failed("shapes.shape-to-stable", "c=0 result not fixed");
            }
            const double a = shape_to_stable_scaling(0.0, n);
            double sup = 0.0;
            for (int i = 0; i < 256; ++i) {
                const double x = 0.1 + 1.8 * static_cast<double>(i) / 255.0;
                const std::size_t k = static_cast<std::size_t>(std::ceil(a * x));
                const double y = a / static_cast<double>(n) * static_cast<double>(mu.part(k - 1));
                sup = std::max(sup, std::abs(y - (1.0 - 0.5 * x)));
            }
            if (sup >= prev_sup || sup > 0.04) {
                return failed("shapes.shape-to-stable",
                              "triangle tail distance " + fmt(sup) + " at n=" + std::to_string(n));
            }
            prev_sup = sup;
        }
        // c > 0 with the interpolating shape: slopes are multiples of C/z^2.
        {
            const LimitShape shape = interpolating_shape(1.0);
            const double c = shape.C / (shape.z * shape.z);
            const Partition mu = shape_to_stable(shape, c, 10000);
            if (mu.n() != 10000 || !is_convex(mu)) {
                return failed("shapes.shape-to-stable", "interpolating c>0 result malformed");
            }
            if (step(rule_from_convex(mu), mu) != mu) {
                return failed("shapes.shape-to-stable", "interpolating c>0 result not fixed");
            }
        }
        // c > 0 with the triangle and c = 1/2
        {
            const Partition mu = shape_to_stable(LimitShape::triangle(), 0.5, 10000);
            if (mu.n() != 10000 || !is_convex(mu) || step(rule_from_convex(mu), mu) != mu) {
                return failed("shapes.shape-to-stable", "triangle c=1/2 result malformed");
            }
        }
        // degenerate deck
        if (!(shape_to_stable(LimitShape::triangle(), 0.0, 1) == Partition::validate({1}))) {
            return failed("shapes.shape-to-stable", "n=1 is not (1)");
        }
        // exponential refuses c > 0
        bool refused = false;
        try {
            (void)shape_to_stable(LimitShape::exponential(), 0.25, 1000);
        } catch (const Error& e) {
            refused = (e.code() == ErrorCode::DerivativeNotMultipleOfC);
        }
        if (!refused) return failed("shapes.shape-to-stable", "exponential c>0 not refused");
        return pass("shapes.shape-to-stable", "exact totals, convex fixpoints, converging triangle tail");
    });
}

CheckResult check_regime_convergence(bool big) {
    return guarded("shapes.regime-convergence", [&]() -> CheckResult {
        const std::vector<std::int64_t> ns =
            big ? std::vector<std::int64_t>{10000, 100000, 1000000, 10000000}
                : std::vector<std::int64_t>{10000, 100000, 1000000};
        std::ostringstream report;
        // triangle regime: q = n^{-3/4}
        double prev = std::numeric_limits<double>::infinity();
        double last = 0.0;
        for (std::int64_t n : ns) {
            const auto q = Rational(1, std::llround(std::pow(static_cast<double>(n), 0.75)));
            const auto found = find_stable(SigmaRule::q_proportion(q), n);
            const LimitShape tri = LimitShape::triangle();
            const auto dist =
                empirical_distance(found.config, n, tri, default_distance_grid(tri, found.config, n));
            if (dist.sup_error >= prev) {
                return failed("shapes.regime-convergence", "triangle distance not decreasing at n=" + std::to_string(n));
            }
            prev = dist.sup_error;
            last = dist.sup_error;
        }
        report << "triangle " << fmt(last);
        if (big && last > 0.01) return failed("shapes.regime-convergence", "triangle final " + fmt(last) + " > 0.01");
        // exponential regime: q = n^{-1/4}
        prev = std::numeric_limits<double>::infinity();
        for (std::int64_t n : ns) {
            const auto q = Rational(1, std::llround(std::pow(static_cast<double>(n), 0.25)));
            const auto found = find_stable(SigmaRule::q_proportion(q), n);
            const LimitShape expo = LimitShape::exponential();
            const auto dist =
                empirical_distance(found.config, n, expo, default_distance_grid(expo, found.config, n));
            if (dist.sup_error >= prev) {
                return failed("shapes.regime-convergence", "exp distance not decreasing at n=" + std::to_string(n));
            }
            prev = dist.sup_error;
            last = dist.sup_error;
        }
        report << ", exponential " << fmt(last);
        if (big && last > 0.02) return failed("shapes.regime-convergence", "exp final " + fmt(last) + " > 0.02");
        // interpolating regime: q = sqrt(C/n)
        for (double C : {1.0, 2.5}) {
            const LimitShape shape = interpolating_shape(C);
            prev = std::numeric_limits<double>::infinity();
            for (std::int64_t n : ns) {
                const double qd = std::sqrt(C / static_cast<double>(n));
                const auto q = Rational(std::llround(qd * 1e6), 1000000);
                const auto found = find_stable(SigmaRule::q_proportion(q), n);
                const auto dist =
                    empirical_distance(found.config, n, shape, default_distance_grid(shape, found.config, n));
                if (dist.sup_error >= prev) {
                    return failed("shapes.regime-convergence",
                                  "interpolating C=" + fmt(C) + " not decreasing at n=" + std::to_string(n));
                }
                prev = dist.sup_error;
                last = dist.sup_error;
            }
            report << ", interpolating(" << fmt(C) << ") " << fmt(last);
            if (big && last > 0.02) {
                return failed("shapes.regime-convergence", "interpolating final " + fmt(last) + " > 0.02");
            }
        }
        return pass("shapes.regime-convergence", "sup distances strictly decreasing; finals: " + report.str());
    });
}

CheckResult check_recurrent_regimes(bool big, std::uint64_t seed) {
    return guarded("shapes.recurrent-regimes", [&]() -> CheckResult {
        std::ostringstream report;
        // ordinary-regime reduction: q = n^{-3/4}
        {
            const std::int64_t n = big ? 1000000 : 10000;
            const auto q = Rational(1, std::llround(std::pow(static_cast<double>(n), 0.75)));
            Rng rng(seed);
            const Partition start = random_partition(rng, n);
            Stepper stepper(SigmaRule::q_proportion(q));
            std::vector<std::int64_t> parts = start.parts();
            for (std::int64_t t = 0; t < 2 * n; ++t) stepper.step_inplace(parts);
            for (std::int64_t t = 0; t < 4000; ++t) {
                stepper.step_inplace(parts);
                if (stepper.last_max_pick() != 1) {
                    return failed("shapes.recurrent-regimes", "pick > 1 after 2n moves at n=" + std::to_string(n));
                }
            }
            const LimitShape tri = LimitShape::triangle();
            double worst = 0.0;
            const Partition probe = Partition::validate(parts);
            const auto info = find_cycle_visit(
                SigmaRule::q_proportion(q), probe, [&](const std::vector<std::int64_t>& member) {
                    const Partition p = Partition::validate(member);
                    const auto dist = empirical_distance(p, n, tri, default_distance_grid(tri, p, n));
                    worst = std::max(worst, dist.sup_error);
                });
            report << "ordinary-regime period " << info.cycle_length << ", sup " << fmt(worst);
            if (worst > 0.02) {
                return failed("shapes.recurrent-regimes", "recurrent triangle distance " + fmt(worst) + " > 0.02");
            }
        }
        // exponential regime: q = n^{-1/4}
        {
            const std::int64_t n = big ? 1000000 : 100000;
            const auto q = Rational(1, std::llround(std::pow(static_cast<double>(n), 0.25)));
            Rng rng(seed + 1);
            const Partition start = random_partition(rng, n);
            Stepper stepper(SigmaRule::q_proportion(q));
            std::vector<std::int64_t> parts = start.parts();
            for (std::int64_t t = 0; t < 5000; ++t) stepper.step_inplace(parts);
            const LimitShape expo = LimitShape::exponential();
            std::vector<double> grid;
            double worst = 0.0;
            const Partition probe = Partition::validate(parts);
            const auto info = find_cycle_visit(
                SigmaRule::q_proportion(q), probe, [&](const std::vector<std::int64_t>& member) {
                    const Partition p = Partition::validate(member);
                    if (grid.empty()) {
                        grid = default_distance_grid(expo, p, n);
                        while (!grid.empty() && grid.back() > 3.0) grid.pop_back();
                    }
                    const auto dist = empirical_distance(p, n, expo, grid);
                    worst = std::max(worst, dist.sup_error);
                });
            report << "; exponential-regime period " << info.cycle_length << ", sup " << fmt(worst);
            if (worst > 0.05) {
                return failed("shapes.recurrent-regimes", "recurrent exp distance " + fmt(worst) + " > 0.05");
            }
        }
        return pass("shapes.recurrent-regimes", report.str());
    });
}

// ---------------------------------------------------------- conjecture ----

CheckResult check_conjecture_probe(std::int64_t cap, int workers) {
    return guarded("conjecture.deviation-trend", [&]() -> CheckResult {
        if (cap < 4) return failed("conjecture.deviation-trend", "cap must be at least 4");
        std::vector<Rational> qs;
        for (int k = 1; k <= 9; ++k) qs.emplace_back(k, 10);
        std::vector<double> avg(static_cast<std::size_t>(cap) + 1, 0.0);
        std::atomic<bool> had_error{false};
        parallel_for(cap, workers, [&](std::int64_t idx) {
            const std::int64_t n = idx + 1;
            double total = 0.0;
            try {
                for (const auto& q : qs) {
                    const auto rule = SigmaRule::q_proportion(q);
                    const Partition ref = n_star(rule, n).config;
                    std::int64_t worst = 0;
                    for (const auto& rec : enumerate_recurrent(rule, n, cap)) {
                        const auto dev = deviation(rec, ref);
                        worst = std::max(worst, dev.surplus_total + dev.deficit_total);
                    }
                    total += static_cast<double>(worst) / static_cast<double>(n);
                }
            } catch (const Error&) {
                had_error = true;
            }
            avg[static_cast<std::size_t>(n)] = total / static_cast<double>(qs.size());
        });
        if (had_error.load()) return failed("conjecture.deviation-trend", "probe raised");
        // Trend, not pointwise: regression slope and half-means must not grow.
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double count = static_cast<double>(cap);
        for (std::int64_t n = 1; n <= cap; ++n) {
            sx += static_cast<double>(n);
            sy += avg[static_cast<std::size_t>(n)];
            sxx += static_cast<double>(n) * static_cast<double>(n);
            sxy += static_cast<double>(n) * avg[static_cast<std::size_t>(n)];
        }
        const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
        double first_half = 0, second_half = 0;
        const std::int64_t half = cap / 2;
        for (std::int64_t n = 1; n <= half; ++n) first_half += avg[static_cast<std::size_t>(n)];
        for (std::int64_t n = half + 1; n <= cap; ++n) second_half += avg[static_cast<std::size_t>(n)];
        first_half /= static_cast<double>(half);
        second_half /= static_cast<double>(cap - half);
        std::ostringstream os;
        os << "grid-averaged max (surplus+deficit)/n: slope " << fmt(slope) << ", means " << fmt(first_half)
           << " -> " << fmt(second_half) << " over n <= " << cap << "; series";
        for (std::int64_t n = 1; n <= cap; ++n) {
            os << ' ' << fmt(avg[static_cast<std::size_t>(n)]);
        }
        if (slope > 0.0 || second_half > first_half) {
            return failed("conjecture.deviation-trend", os.str());
        }
        return pass("conjecture.deviation-trend", os.str());
    });
}

std::vector<CheckResult> check_core(const VerifyOptions& opt) {
    return {check_enumeration_counts(opt.core_n), check_boundary_properties(opt.seed),
            check_convexity_bruteforce(std::min<std::int64_t>(opt.core_n, 18))};
}

std::vector<CheckResult> check_rules(const VerifyOptions& opt) {
    return {check_q_grid_well_behaved(), check_q_small_is_ordinary(),
            check_permutation_property(opt.rules_h, opt.seed),
            check_rule_from_convex(std::min<std::int64_t>(opt.convexity_n, 16))};
}

std::vector<CheckResult> check_dynamics(const VerifyOptions& opt) {
    return {check_card_conservation(opt.seed),
            check_step_layers_equiv(opt.dynamics_n, opt.seed, opt.workers),
            check_dominance(opt.dominance_pairs, opt.seed, opt.workers),
            check_new_pile_bounds(opt.seed),
            check_lifetime_bound(),
            check_pile_count_bound(opt.pile_bound_ns, opt.pile_bound_starts, opt.seed, opt.workers),
            check_cycle_oracle(opt.cycle_oracle_n, opt.seed),
            check_recurrent_sharding(opt.seed)};
}

std::vector<CheckResult> check_stability(const VerifyOptions& opt) {
    return {check_stable_fixpoints(opt.seed),
            check_uniqueness_exhaustive(opt.stability_n, opt.seed, opt.workers),
            check_gap_bound(opt.seed), check_nstar_monotone(opt.seed),
            check_convexity_characterization(opt.convexity_n)};
}

std::vector<CheckResult> check_marked(const VerifyOptions& opt) {
    return {check_marked_exhaustive(opt.marked_n, opt.seed, opt.workers),
            check_marked_random(opt.marked_triples, opt.seed, opt.workers),
            check_mark_roundtrip(opt.seed)};
}

std::vector<CheckResult> check_shapes(const VerifyOptions& opt) {
    return {check_g_function(),       check_z_solver(),           check_interpolating_family(),
            check_regime_classifier(), check_staircase_distance(), check_shape_to_stable(),
            check_regime_convergence(opt.big_regimes),
            check_recurrent_regimes(opt.big_regimes, opt.seed)};
}

std::vector<CheckResult> check_conjecture(const VerifyOptions& opt) {
    return {check_conjecture_probe(opt.conjecture_n, opt.workers)};
}

std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opt) {
    if (suite == "core") return check_core(opt);
    if (suite == "rules") return check_rules(opt);
    if (suite == "dynamics") return check_dynamics(opt);
    if (suite == "stability") return check_stability(opt);
    if (suite == "marked") return check_marked(opt);
    if (suite == "shapes") return check_shapes(opt);
    if (suite == "conjecture") return check_conjecture(opt);
    if (suite == "all") {
        std::vector<CheckResult> all;
        for (const char* s : {"core", "rules", "dynamics", "stability", "marked", "shapes", "conjecture"}) {
            const auto part = run_suite(s, opt);
            all.insert(all.end(), part.begin(), part.end());
        }
        return all;
    }
    fail(ErrorCode::UnknownSuite, "no suite named '" + suite + "'");
}

} // namespace bulgsol
