#pragma once

#include <cstdint>
#include <optional>

#include "bulgsol/partition.hpp"
#include "bulgsol/sigma_rule.hpp"

namespace bulgsol {

struct StableSearchResult {
    bool found = false;       // a stable configuration of exactly n cards exists
    Partition config;         // the stable configuration of n_star cards
    std::int64_t n_star = 0;  // largest n' <= n admitting a stable configuration
    std::int64_t lambda1 = 0; // top pile of config
};

/// The stable configuration determined by its top pile:
/// (l1, sigma_bar(l1), sigma_bar^2(l1), ...) down to zero.
Partition stable_from_top(const SigmaRule& rule, std::int64_t lambda1);

/// Total cards of stable_from_top without materializing it.
std::int64_t stable_total(const SigmaRule& rule, std::int64_t lambda1);

/// Unique stable configuration of exactly n cards if one exists, otherwise
/// the n* fallback. Binary search over lambda1; totals increase strictly with
/// the top pile, which the search asserts as it probes.
StableSearchResult find_stable(const SigmaRule& rule, std::int64_t n,
                               std::optional<std::int64_t> lambda1_hint = std::nullopt);

/// Same search, framed as the n* query.
StableSearchResult n_star(const SigmaRule& rule, std::int64_t n,
                          std::optional<std::int64_t> lambda1_hint = std::nullopt);

} // namespace bulgsol
