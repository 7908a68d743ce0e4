#include "bulgsol/stability.hpp"

#include <algorithm>

namespace bulgsol {

namespace {

void require_sigma_bar_monotone(const SigmaRule& rule, std::int64_t lambda1) {
    if (rule.well_behaved_by_construction()) {
        if (rule.bounded() && lambda1 > rule.h_max()) {
            fail(ErrorCode::PileTooLarge, "rule undefined up to h=" + std::to_string(lambda1));
        }
        return;
    }
    std::int64_t prev = 0;
    for (std::int64_t h = 1; h <= lambda1; ++h) {
        const std::int64_t bar = rule.sigma_bar(h);
        if (bar < prev) {
            fail(ErrorCode::SigmaBarDecreasing, "sigma_bar decreases at h=" + std::to_string(h));
        }
        prev = bar;
    }
}

} // namespace

Partition stable_from_top(const SigmaRule& rule, std::int64_t lambda1) {
    if (lambda1 < 1) fail(ErrorCode::BadInput, "lambda1 must be >= 1");
    require_sigma_bar_monotone(rule, lambda1);
    std::vector<std::int64_t> parts;
    std::int64_t h = lambda1;
    while (h > 0) {
        parts.push_back(h);
        const std::int64_t next = rule.sigma_bar(h);
        if (next >= h) {
            // sigma(h) = 0: the chain would never reach zero.
            fail(ErrorCode::SigmaBarDecreasing, "sigma(h)=0 at h=" + std::to_string(h));
        }
        h = next;
    }
    return Partition::validate(std::move(parts));
}

std::int64_t stable_total(const SigmaRule& rule, std::int64_t lambda1) {
    std::int64_t total = 0;
    std::int64_t h = lambda1;
    while (h > 0) {
        if (__builtin_add_overflow(total, h, &total)) {
            fail(ErrorCode::Overflow, "stable-configuration total exceeds 64 bits");
        }
        const std::int64_t next = rule.sigma_bar(h);
        if (next >= h) fail(ErrorCode::SigmaBarDecreasing, "sigma(h)=0 at h=" + std::to_string(h));
        h = next;
    }
    return total;
}

StableSearchResult find_stable(const SigmaRule& rule, std::int64_t n,
                               std::optional<std::int64_t> lambda1_hint) {
    if (n < 0) fail(ErrorCode::BadInput, "negative n");
    StableSearchResult result;
    if (n == 0) {
        result.found = true;
        return result;
    }
    require_well_behaved(rule, n);

    // Largest lambda1 with T(lambda1) <= n. T(1) = 1 and T is strictly
    // increasing, so the bracket [1, n] always contains the answer.
    std::int64_t lo = 1;
    std::int64_t hi = n;
    if (lambda1_hint && *lambda1_hint >= 1) {
        // Gallop outward from the hint to shrink the bracket.
        std::int64_t guess = std::clamp<std::int64_t>(*lambda1_hint, 1, n);
        if (stable_total(rule, guess) <= n) {
            lo = guess;
            std::int64_t step = 1;
            while (lo + step <= n && stable_total(rule, lo + step) <= n) {
                lo += step;
                step *= 2;
            }
            hi = std::min<std::int64_t>(n, lo + step);
        } else {
            hi = guess - 1;
            std::int64_t step = 1;
            while (hi - step >= 1 && stable_total(rule, hi - step) > n) {
                hi -= step;
                step *= 2;
            }
            lo = std::max<std::int64_t>(1, hi - step);
        }
    }
    while (lo < hi) {
        const std::int64_t mid = lo + (hi - lo + 1) / 2;
        if (stable_total(rule, mid) <= n) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    result.lambda1 = lo;
    result.config = stable_from_top(rule, lo);
    result.n_star = result.config.n();
    result.found = (result.n_star == n);
    // Strict growth of totals at the answer backs the search's correctness.
    if (lo < n && stable_total(rule, lo + 1) <= result.n_star) {
        fail(ErrorCode::NotWellBehaved, "stable totals not strictly increasing at lambda1=" + std::to_string(lo));
    }
    return result;
}

StableSearchResult n_star(const SigmaRule& rule, std::int64_t n,
                          std::optional<std::int64_t> lambda1_hint) {
    return find_stable(rule, n, lambda1_hint);
}

} // namespace bulgsol
