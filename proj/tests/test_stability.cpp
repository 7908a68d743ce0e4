#include <doctest.h>

#include "bulgsol/dynamics.hpp"
#include "bulgsol/stability.hpp"

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

const SigmaRule kOrdinary = SigmaRule::levels({1}, 1 << 20);
const SigmaRule kQ310 = SigmaRule::q_proportion(Rational(3, 10));

} // namespace

TEST_CASE("stable_from_top builds the sigma_bar chain") {
    CHECK(stable_from_top(kQ310, 5) == Partition::validate({5, 3, 2, 1}));
    CHECK(stable_from_top(kOrdinary, 4) == Partition::validate({4, 3, 2, 1}));
    CHECK(stable_from_top(kQ310, 6) == Partition::validate({6, 4, 2, 1}));
    CHECK(stable_from_top(kQ310, 6).n() == 13);
    CHECK(step(kQ310, stable_from_top(kQ310, 987)) == stable_from_top(kQ310, 987));
    CHECK(throws_code(ErrorCode::SigmaBarDecreasing, [] { stable_from_top(SigmaRule::table({1, 1, 3}), 3); }));
    // sigma(h)=0 would loop forever
    CHECK(throws_code(ErrorCode::SigmaBarDecreasing, [] { stable_from_top(SigmaRule::table({1, 1, 1, 0}), 4); }));
}

TEST_CASE("stable_total matches the materialized chain") {
    for (std::int64_t l1 = 1; l1 <= 200; ++l1) {
        CHECK(stable_total(kQ310, l1) == stable_from_top(kQ310, l1).n());
    }
}

TEST_CASE("find_stable locates the unique fixpoint") {
    const auto hit = find_stable(kQ310, 11);
    CHECK(hit.found);
    CHECK(hit.config == Partition::validate({5, 3, 2, 1}));
    CHECK(hit.n_star == 11);
    CHECK(hit.lambda1 == 5);

    const auto miss = find_stable(kOrdinary, 7);
    CHECK_FALSE(miss.found);
    CHECK(miss.n_star == 6);
    CHECK(miss.config == Partition::validate({3, 2, 1}));

    const auto thirteen = find_stable(kQ310, 13);
    CHECK(thirteen.found);
    CHECK(thirteen.config == Partition::validate({6, 4, 2, 1}));

    CHECK(throws_code(ErrorCode::NotWellBehaved, [] { find_stable(SigmaRule::table({1, 1, 3}), 3); }));
}

TEST_CASE("n_star reports the reachable deck size") {
    const auto twelve = n_star(kOrdinary, 12);
    CHECK(twelve.n_star == 10);
    CHECK(twelve.config == Partition::validate({4, 3, 2, 1}));

    CHECK(n_star(kQ310, 12).n_star == 11);

    const auto one = n_star(kQ310, 1);
    CHECK(one.found);
    CHECK(one.config == Partition::validate({1}));

    const auto zero = n_star(kQ310, 0);
    CHECK(zero.found);
    CHECK(zero.config == Partition());
}

TEST_CASE("lambda1 hints do not change the answer") {
    for (std::int64_t n : {5LL, 29LL, 100LL, 718LL, 4096LL}) {
        const auto plain = find_stable(kQ310, n);
        for (const std::int64_t hint : std::vector<std::int64_t>{1, 2, n / 2, n}) {
            const auto hinted = find_stable(kQ310, n, hint);
            CHECK(hinted.n_star == plain.n_star);
            CHECK(hinted.lambda1 == plain.lambda1);
        }
    }
}

TEST_CASE("n_star warm sweep stays monotone") {
    std::optional<std::int64_t> hint;
    std::int64_t prev = 0;
    for (std::int64_t n = 1; n <= 400; ++n) {
        const auto r = n_star(kQ310, n, hint);
        hint = r.lambda1;
        CHECK(r.n_star >= prev);
        CHECK(r.n_star <= n);
        CHECK(n - r.n_star <= static_cast<std::int64_t>(r.config.ell()) + 1);
        prev = r.n_star;
    }
}
