// Command-line front end for the solitaire engine: play trajectories, find
// stable and recurrent configurations, compute limit shapes and convergence
// sweeps, and run the invariant batteries.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bulgsol/dynamics.hpp"
#include "bulgsol/io.hpp"
#include "bulgsol/marked.hpp"
#include "bulgsol/rng.hpp"
#include "bulgsol/shapes.hpp"
#include "bulgsol/stability.hpp"
#include "bulgsol/verify.hpp"

namespace {

using namespace bulgsol;

int env_workers() {
    if (const char* env = std::getenv("BULGSOL_WORKERS")) {
        const int w = std::atoi(env);
        if (w >= 1) return w;
    }
    return 1;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) fail(ErrorCode::BadInput, "cannot open output file '" + path + "'");
    return file;
}

Partition resolve_start(const std::string& start, std::optional<std::int64_t> random_n,
                        std::uint64_t seed, Json* header) {
    if (!start.empty()) return parse_partition_literal(start);
    if (random_n) {
        Rng rng(seed);
        if (header) {
            (*header)["prng"] = Rng::name();
            (*header)["seed"] = seed;
        }
        return random_partition(rng, *random_n);
    }
    fail(ErrorCode::BadInput, "need --start or --random-start");
}

int cmd_play(const std::string& rule_spec, const std::string& start, std::optional<std::int64_t> random_n,
             std::int64_t moves, std::int64_t thin, std::uint64_t seed, bool diagnostics,
             const std::string& out_path) {
    const SigmaRule rule = parse_rule_spec(rule_spec);
    Json header;
    const Partition p = resolve_start(start, random_n, seed, &header);
    std::ofstream file;
    std::ostream& os = open_output(file, out_path);
    if (!header.empty()) os << "# " << header.dump() << '\n';
    write_trajectory_jsonl(os, play_trajectory(rule, p, moves, thin, diagnostics));
    return 0;
}

int cmd_stable(const std::string& rule_spec, std::int64_t n) {
    const SigmaRule rule = parse_rule_spec(rule_spec);
    const auto result = find_stable(rule, n);
    Json out{{"found", result.found},
             {"n_star", result.n_star},
             {"lambda1", result.lambda1},
             {"parts", result.config.parts()}};
    std::cout << out.dump() << '\n';
    return 0;
}

int cmd_cycle(const std::string& rule_spec, const std::string& start, std::optional<std::int64_t> random_n,
              std::uint64_t seed) {
    const SigmaRule rule = parse_rule_spec(rule_spec);
    Json header;
    const Partition p = resolve_start(start, random_n, seed, &header);
    Json out = cycle_to_json(find_cycle(rule, p));
    if (!header.empty()) out["start"] = header;
    std::cout << out.dump() << '\n';
    return 0;
}

int cmd_recurrent(const std::string& rule_spec, std::int64_t n, std::int64_t guard, int workers) {
    const SigmaRule rule = parse_rule_spec(rule_spec);
    const auto recurrent = enumerate_recurrent(rule, n, guard, workers);
    Json configs = Json::array();
    for (const auto& p : recurrent) configs.push_back(p.parts());
    Json out{{"n", n}, {"count", recurrent.size()}, {"recurrent", configs}};
    std::cout << out.dump() << '\n';
    return 0;
}

int cmd_shape(std::optional<double> C, const std::string& q_text, std::optional<std::int64_t> n,
              double c_lo, double c_hi, std::optional<std::int64_t> construct_n, double construct_c,
              const std::string& measure, const std::string& out_path) {
    LimitShape shape;
    if (C) {
        shape = interpolating_shape(*C);
    } else if (!q_text.empty() && n) {
        shape = regime_shape(Rational::parse(q_text), *n, c_lo, c_hi);
    } else {
        fail(ErrorCode::BadInput, "need --C or both --q and --n");
    }
    if (construct_n) {
        // a stable configuration of exactly construct_n cards realizing the shape
        const Partition mu = shape_to_stable(shape, construct_c, *construct_n);
        Json out{{"n", mu.n()}, {"lambda1", mu.lambda1()}, {"parts", mu.parts()}};
        std::cout << out.dump() << '\n';
        return 0;
    }
    if (measure.empty()) {
        std::cout << shape_to_json(shape).dump() << '\n';
        return 0;
    }
    // measure: "stable" compares the n*-stable configuration of the q-rule
    // against the shape; otherwise a partition literal is compared.
    Partition p;
    std::int64_t deck = 0;
    if (measure == "stable") {
        if (q_text.empty() || !n) fail(ErrorCode::BadInput, "--measure stable needs --q and --n");
        p = find_stable(SigmaRule::q_proportion(Rational::parse(q_text)), *n).config;
        deck = *n;
    } else {
        p = parse_partition_literal(measure);
        deck = n.value_or(p.n());
    }
    const auto grid = default_distance_grid(shape, p, deck);
    const auto dist = empirical_distance(p, deck, shape, grid);
    std::ofstream file;
    std::ostream& os = open_output(file, out_path);
    write_distance_csv(os, p, deck, shape, dist);
    return 0;
}

int cmd_deviation(const std::string& rule_spec, const std::string& start, const std::string& ref_text,
                  std::int64_t moves, const std::string& out_path) {
    const SigmaRule rule = parse_rule_spec(rule_spec);
    const Partition p = parse_partition_literal(start);
    Partition ref;
    if (ref_text.empty() || ref_text == "auto") {
        ref = n_star(rule, p.n()).config;
    } else {
        ref = parse_partition_literal(ref_text);
    }
    const auto trace = surplus_trace(rule, p, ref, moves);
    std::ofstream file;
    std::ostream& os = open_output(file, out_path);
    write_trace_csv(os, trace);
    return 0;
}

int cmd_verify(const std::string& suite, const VerifyOptions& opt) {
    const auto results = run_suite(suite, opt);
    bool all_pass = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
        if (!r.detail.empty()) std::cout << " - " << r.detail;
        std::cout << '\n';
        all_pass = all_pass && r.pass;
    }
    std::cout << (all_pass ? "verify: all checks passed" : "verify: FAILURES") << '\n';
    return all_pass ? 0 : 1;
}

int cmd_sweep(const std::string& regime, const std::string& ns_text, const std::string& out_dir,
              std::uint64_t seed, int workers) {
    std::vector<std::int64_t> ns;
    for (std::size_t pos = 0; pos < ns_text.size();) {
        const auto comma = ns_text.find(',', pos);
        const std::string tok = ns_text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        ns.push_back(static_cast<std::int64_t>(std::stod(tok)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (ns.empty()) fail(ErrorCode::BadInput, "empty n list");

    struct Row {
        std::int64_t n;
        std::string q;
        std::int64_t n_star;
        std::int64_t lambda1;
        double sup_error;
    };
    std::vector<Row> rows(ns.size());
    std::vector<double> cs = {1.0};
    LimitShape target;
    if (regime == "triangle") target = LimitShape::triangle();
    else if (regime == "exponential") target = LimitShape::exponential();
    else if (regime == "interpolating") target = interpolating_shape(1.0);
    else fail(ErrorCode::BadInput, "regime must be triangle|exponential|interpolating");

    parallel_for(static_cast<std::int64_t>(ns.size()), workers, [&](std::int64_t i) {
        const std::int64_t n = ns[static_cast<std::size_t>(i)];
        Rational q(1, 1);
        if (regime == "triangle") {
            q = Rational(1, std::llround(std::pow(static_cast<double>(n), 0.75)));
        } else if (regime == "exponential") {
            q = Rational(1, std::llround(std::pow(static_cast<double>(n), 0.25)));
        } else {
            q = Rational(std::llround(std::sqrt(1.0 / static_cast<double>(n)) * 1e6), 1000000);
        }
        const auto found = find_stable(SigmaRule::q_proportion(q), n);
        const auto dist =
            empirical_distance(found.config, n, target, default_distance_grid(target, found.config, n));
        rows[static_cast<std::size_t>(i)] = {n, q.str(), found.n_star, found.lambda1, dist.sup_error};
    });

    const std::string prefix = out_dir.empty() ? "sweep" : out_dir + "/sweep";
    const std::string csv_path = prefix + "_" + regime + "_sup_error.csv";
    std::ofstream csv(csv_path);
    if (!csv) fail(ErrorCode::BadInput, "cannot write " + csv_path);
    csv << "n,q,n_star,lambda1,sup_error\n";
    for (const auto& row : rows) {
        csv << row.n << ',' << row.q << ',' << row.n_star << ',' << row.lambda1 << ',' << row.sup_error << '\n';
    }
    Json manifest{{"command", "sweep"}, {"regime", regime},          {"ns", ns},
                  {"prng", Rng::name()}, {"seed", seed},              {"workers", workers},
                  {"outputs", Json::array({csv_path})}};
    std::ofstream mf(prefix + "_" + regime + "_manifest.json");
    mf << manifest.dump(2) << '\n';
    std::cout << "wrote " << csv_path << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized Bulgarian solitaire engine"};
    app.require_subcommand(1);

    std::string rule_spec, start, ref_text, measure, out_path, suite = "all", regime, ns_text, out_dir;
    std::int64_t n = 0, moves = 1, thin = 1, guard = 45;
    std::optional<std::int64_t> random_n;
    std::optional<double> shape_C;
    std::string shape_q;
    std::optional<std::int64_t> shape_n;
    double c_lo = 0.05, c_hi = 50.0;
    std::optional<std::int64_t> construct_n;
    double construct_c = 0.0;
    bool diagnostics = false;
    std::uint64_t seed = 0;
    VerifyOptions vopt;
    vopt.workers = env_workers();

    auto* play = app.add_subcommand("play", "iterate the solitaire and export the trajectory");
    play->add_option("--rule", rule_spec, "rule literal (q:3/10, levels:1,4@7, table:1,1,2) or JSON path")->required();
    play->add_option("--start", start, "comma-separated descending pile sizes");
    play->add_option("--random-start", random_n, "random start with this many cards");
    play->add_option("--moves", moves, "number of moves")->required();
    play->add_option("--thin", thin, "record every thin-th configuration");
    play->add_option("--seed", seed, "PRNG seed for random starts");
    play->add_flag("--diagnostics", diagnostics, "check the new-pile window on every move");
    play->add_option("--out", out_path, "output JSONL path (default stdout)");

    auto* stable = app.add_subcommand("stable", "unique stable configuration and n*");
    stable->add_option("--rule", rule_spec)->required();
    stable->add_option("--n", n, "deck size")->required();

    auto* cycle = app.add_subcommand("cycle", "tail length, period and cycle configurations");
    cycle->add_option("--rule", rule_spec)->required();
    cycle->add_option("--start", start);
    cycle->add_option("--random-start", random_n);
    cycle->add_option("--seed", seed);

    auto* recurrent = app.add_subcommand("recurrent", "all recurrent configurations over P(n)");
    recurrent->add_option("--rule", rule_spec)->required();
    recurrent->add_option("--n", n)->required();
    recurrent->add_option("--guard", guard, "refuse n above this bound");

    auto* shape = app.add_subcommand("shape", "analytic limit shapes and empirical distances");
    shape->add_option("--C", shape_C, "interpolating-family parameter");
    shape->add_option("--q", shape_q, "q for regime classification");
    shape->add_option("--n", shape_n, "deck size for regime classification");
    shape->add_option("--c-lo", c_lo, "triangle threshold on n*q^2");
    shape->add_option("--c-hi", c_hi, "exponential threshold on n*q^2");
    shape->add_option("--construct", construct_n, "build a stable configuration of this many cards");
    shape->add_option("--construct-c", construct_c, "slope unit c of the construction (0 = floor-rounded)");
    shape->add_option("--measure", measure, "'stable' or a partition literal to compare");
    shape->add_option("--out", out_path, "distance CSV path (default stdout)");

    auto* dev = app.add_subcommand("deviation", "surplus/deficit trace of the marked solitaire");
    dev->add_option("--rule", rule_spec)->required();
    dev->add_option("--start", start)->required();
    dev->add_option("--ref", ref_text, "stable reference partition ('auto' = n*)");
    dev->add_option("--moves", moves)->required();
    dev->add_option("--out", out_path);

    auto* verify = app.add_subcommand("verify", "run invariant batteries");
    verify->add_option("--suite", suite, "core|rules|dynamics|stability|marked|shapes|conjecture|all");
    verify->add_option("--seed", vopt.seed);
    verify->add_option("--core-n", vopt.core_n);
    verify->add_option("--rules-h", vopt.rules_h);
    verify->add_option("--stability-n", vopt.stability_n);
    verify->add_option("--dynamics-n", vopt.dynamics_n);
    verify->add_option("--cycle-n", vopt.cycle_oracle_n);
    verify->add_option("--convexity-n", vopt.convexity_n);
    verify->add_option("--marked-n", vopt.marked_n);
    verify->add_option("--conjecture-n", vopt.conjecture_n);
    verify->add_option("--pairs", vopt.dominance_pairs);
    verify->add_option("--triples", vopt.marked_triples);
    verify->add_option("--pile-ns", vopt.pile_bound_ns, "deck sizes for the pile-count bound");
    verify->add_option("--pile-starts", vopt.pile_bound_starts);
    verify->add_flag("--big-regimes", vopt.big_regimes, "full-size shape and trajectory sweeps");

    auto* sweep = app.add_subcommand("sweep", "convergence CSVs over an n grid");
    sweep->add_option("--regime", regime, "triangle|exponential|interpolating")->required();
    sweep->add_option("--ns", ns_text, "comma-separated deck sizes")->required();
    sweep->add_option("--out-dir", out_dir, "output directory (default cwd)");
    sweep->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }

    try {
        if (play->parsed()) return cmd_play(rule_spec, start, random_n, moves, thin, seed, diagnostics, out_path);
        if (stable->parsed()) return cmd_stable(rule_spec, n);
        if (cycle->parsed()) return cmd_cycle(rule_spec, start, random_n, seed);
        if (recurrent->parsed()) return cmd_recurrent(rule_spec, n, guard, vopt.workers);
        if (shape->parsed()) {
            return cmd_shape(shape_C, shape_q, shape_n, c_lo, c_hi, construct_n, construct_c, measure, out_path);
        }
        if (dev->parsed()) return cmd_deviation(rule_spec, start, ref_text, moves, out_path);
        if (verify->parsed()) return cmd_verify(suite, vopt);
        if (sweep->parsed()) return cmd_sweep(regime, ns_text, out_dir, seed, vopt.workers);
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
