#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bulgsol/partition.hpp"
#include "bulgsol/sigma_rule.hpp"

namespace bulgsol {

struct DeviationSummary {
    std::vector<std::int64_t> deviation;  // lambda - ref, componentwise with virtual zeros
    std::int64_t surplus_total = 0;
    std::int64_t deficit_total = 0;
};

/// Componentwise difference against a stable reference.
DeviationSummary deviation(const Partition& p, const Partition& ref);

/// One pile of a marked configuration. Plus- and minus-cards never share a
/// pile: unmarked+plus reads as the live configuration, unmarked+minus as the
/// stable reference.
struct MarkedPile {
    std::int64_t unmarked = 0;
    std::int64_t plus = 0;
    std::int64_t minus = 0;

    std::int64_t live() const { return unmarked + plus; }
    std::int64_t ref() const { return unmarked + minus; }
    std::int64_t height() const { return unmarked + plus + minus; }

    friend bool operator==(const MarkedPile& a, const MarkedPile& b) {
        return a.unmarked == b.unmarked && a.plus == b.plus && a.minus == b.minus;
    }
};

struct MarkedConfig {
    std::vector<MarkedPile> piles;  // aligned: pile i carries lambda_i and ref_i
    Partition reference;

    Partition live_projection() const;
    std::int64_t plus_total() const;
    std::int64_t minus_total() const;
};

/// Marks p against a stable reference of the rule: plus-cards on top of
/// surplus piles, minus-cards appended to deficit piles. Refuses a reference
/// that one move does not fix.
MarkedConfig mark(const SigmaRule& rule, const Partition& p, const Partition& ref);

struct MarkedStepStats {
    std::int64_t new_pile_cancelled = 0;  // plus/minus pairs merged inside the new pile
    std::int64_t shift_cancelled = 0;     // first-pile minus-cards cancelled while left-shifting
};

/// One move of the marked solitaire. Picked layers of the marked diagram form
/// the new pile; marks float up and cancel pairwise there; left-shifting
/// cancels first-pile minus-cards against plus-cards they swap with
/// (bottom-to-top, leftmost plus first). Totals never increase.
MarkedConfig marked_step(const SigmaRule& rule, const MarkedConfig& mc, MarkedStepStats* stats = nullptr);

/// (surplus_total, deficit_total) at t = 0..moves.
std::vector<std::pair<std::int64_t, std::int64_t>> surplus_trace(const SigmaRule& rule, const Partition& p,
                                                                 const Partition& ref, std::int64_t moves);

} // namespace bulgsol
