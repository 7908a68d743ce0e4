#include <doctest.h>

#include <random>

#include "bulgsol/sigma_rule.hpp"

using namespace bulgsol;

namespace {

bool throws_code(ErrorCode code, const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

} // namespace

TEST_CASE("q-proportion rule rounds up") {
    const auto q310 = SigmaRule::q_proportion(Rational(3, 10));
    CHECK(q310.sigma(6) == 2);
    CHECK(q310.sigma(1) == 1);
    CHECK(q310.sigma(10) == 3);
    CHECK(q310.sigma_bar(10) == 7);
    CHECK(throws_code(ErrorCode::QOutOfRange, [] { SigmaRule::q_proportion(Rational(0, 1)); }));
    CHECK(throws_code(ErrorCode::QOutOfRange, [] { SigmaRule::q_proportion(Rational(11, 10)); }));
    CHECK(throws_code(ErrorCode::QOutOfRange, [] { SigmaRule::q_proportion(Rational(-1, 2)); }));
}

TEST_CASE("table rules are finite and validated") {
    const auto counterexample = SigmaRule::table({1, 1, 3});
    CHECK(counterexample.sigma(3) == 3);
    CHECK(counterexample.h_max() == 3);
    CHECK(throws_code(ErrorCode::PileTooLarge, [&] { counterexample.sigma(4); }));
    CHECK(throws_code(ErrorCode::SigmaExceedsPile, [] { SigmaRule::table({2}); }));
    CHECK(throws_code(ErrorCode::SigmaExceedsPile, [] { SigmaRule::table({1, -1}); }));
    CHECK(SigmaRule::table({1, 2}).sigma(2) == 2);
}

TEST_CASE("levels rules count picked layers") {
    const auto fig2 = SigmaRule::levels({1, 4}, 7);
    CHECK(fig2.sigma(7) == 2);
    CHECK(fig2.sigma(3) == 1);
    CHECK(fig2.sigma(4) == 2);
    CHECK(throws_code(ErrorCode::PileTooLarge, [&] { fig2.sigma(8); }));
    CHECK(SigmaRule::levels({1}, 100).sigma(57) == 1);
    CHECK(throws_code(ErrorCode::MissingLevelOne, [] { SigmaRule::levels({2, 4}, 7); }));
    CHECK(throws_code(ErrorCode::Unsorted, [] { SigmaRule::levels({1, 4, 3}, 7); }));
}

TEST_CASE("well-behavedness report") {
    CHECK(is_well_behaved(SigmaRule::q_proportion(Rational(3, 10)), 1000000).ok);
    CHECK(is_well_behaved(SigmaRule::table({1, 1, 1}), 3).ok);

    const auto report = is_well_behaved(SigmaRule::table({1, 1, 3}), 3);
    CHECK_FALSE(report.ok);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].h == 3);
    CHECK(report.violations[0].kind == WellBehavedViolation::Kind::SigmaBarDecreases);

    const auto bad_start = is_well_behaved(SigmaRule::table({0, 1}), 2);
    CHECK_FALSE(bad_start.ok);
    CHECK(bad_start.violations[0].kind == WellBehavedViolation::Kind::SigmaOneNotOne);

    const auto decreasing = is_well_behaved(SigmaRule::table({1, 2, 1}), 3);
    CHECK_FALSE(decreasing.ok);
    CHECK(decreasing.violations[0].kind == WellBehavedViolation::Kind::SigmaDecreases);
}

TEST_CASE("picked levels") {
    CHECK(picked_levels(SigmaRule::levels({1, 4}, 7), 7) == std::vector<std::int64_t>{1, 4});
    CHECK(picked_levels(SigmaRule::levels({1}, 64), 64) == std::vector<std::int64_t>{1});
    CHECK(picked_levels(SigmaRule::q_proportion(Rational(3, 10)), 10) == std::vector<std::int64_t>{1, 4, 7});
    CHECK(throws_code(ErrorCode::NotWellBehaved, [] { picked_levels(SigmaRule::table({1, 1, 3}), 3); }));
}

TEST_CASE("levels rule H=[1,4,7] matches q=3/10 up to 10") {
    const auto levels = SigmaRule::levels({1, 4, 7}, 10);
    const auto q = SigmaRule::q_proportion(Rational(3, 10));
    for (std::int64_t h = 1; h <= 10; ++h) CHECK(levels.sigma(h) == q.sigma(h));
}

TEST_CASE("pick level follows the drop chain") {
    const auto ordinary = SigmaRule::levels({1}, 64);
    for (std::int64_t h = 1; h <= 64; ++h) CHECK(pick_level(ordinary, h) == 1);
    CHECK(pick_level(SigmaRule::q_proportion(Rational(3, 10)), 5) == 1);  // 5 -> 3 -> 2 -> 1
    CHECK(pick_level(SigmaRule::levels({1, 4}, 8), 6) == 4);              // 6 -> 4
    CHECK(throws_code(ErrorCode::NotWellBehaved, [] { pick_level(SigmaRule::table({1, 1, 3}), 3); }));
}

TEST_CASE("rule_from_convex realizes the layer construction") {
    const auto rule = rule_from_convex(Partition::validate({5, 3, 2, 1}));
    CHECK(rule.sigma(5) == 2);
    CHECK(rule.sigma(3) == 1);
    CHECK(rule.sigma(2) == 1);
    CHECK(rule.sigma(1) == 1);
    CHECK(is_well_behaved(rule, 5).ok);
    // bottom-greedy choice puts the free level at 4
    CHECK(picked_levels(rule, 5) == std::vector<std::int64_t>{1, 4});

    const auto staircase = rule_from_convex(Partition::validate({3, 2, 1}));
    CHECK(picked_levels(staircase, 3) == std::vector<std::int64_t>{1});

    const auto single = rule_from_convex(Partition::validate({1}));
    CHECK(picked_levels(single, 1) == std::vector<std::int64_t>{1});

    CHECK(throws_code(ErrorCode::NotConvex, [] { rule_from_convex(Partition::validate({4, 4, 2, 1, 1})); }));
    CHECK(throws_code(ErrorCode::NotConvex, [] { rule_from_convex(Partition()); }));
}

TEST_CASE("q below 1/n restricts to ordinary solitaire") {
    const auto rule = SigmaRule::q_proportion(Rational(1, 50));
    for (std::int64_t h = 1; h <= 50; ++h) CHECK(rule.sigma(h) == 1);
    CHECK(rule.sigma(51) == 2);
}

TEST_CASE("random well-behaved tables agree with the levels view") {
    // tables built from random unit jumps of sigma are well-behaved; their
    // memoized pick levels must match the generic recursion.
    std::mt19937_64 gen(42);
    for (int it = 0; it < 30; ++it) {
        const std::int64_t h_max = 2 + static_cast<std::int64_t>(gen() % 120);
        std::vector<std::int64_t> sigma{1};
        for (std::int64_t h = 2; h <= h_max; ++h) {
            sigma.push_back(sigma.back() + static_cast<std::int64_t>(gen() % 2));
        }
        const auto table = SigmaRule::table(sigma);
        CHECK(is_well_behaved(table, h_max).ok);
        const auto levels = SigmaRule::levels(picked_levels(table, h_max), h_max);
        for (std::int64_t h = 1; h <= h_max; ++h) {
            CHECK(table.sigma(h) == levels.sigma(h));
            CHECK(pick_level(table, h) == pick_level(levels, h));
            // the memo agrees with unrolling the drop chain by hand
            std::int64_t cur = h;
            while (table.sigma(cur) == table.sigma(cur - 1)) cur -= table.sigma(cur);
            CHECK(pick_level(table, h) == cur);
        }
    }
}
