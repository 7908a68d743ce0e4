#include <doctest.h>

#include <algorithm>

#include "bulgsol/dynamics.hpp"
#include "bulgsol/marked.hpp"
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

const SigmaRule kOrdinary = SigmaRule::levels({1}, 1 << 16);
const SigmaRule kQ310 = SigmaRule::q_proportion(Rational(3, 10));

// ---- card-level oracle --------------------------------------------------
//
// Plays one move of the marked solitaire literally, card by card: remove the
// picked layers, float and cancel marks in the new pile, then left-shift
// every layer with the first-pile minus-cards swapping rightwards (cancelling
// against the first plus-card they meet). Deliberately independent of the
// count-based implementation it checks.

enum class Card { Unmarked, Plus, Minus };

std::vector<MarkedPile> card_oracle_step(const SigmaRule& rule, const MarkedConfig& mc) {
    std::vector<std::vector<Card>> cols;
    for (const auto& pile : mc.piles) {
        std::vector<Card> col(static_cast<std::size_t>(pile.unmarked), Card::Unmarked);
        for (std::int64_t i = 0; i < pile.plus; ++i) col.push_back(Card::Plus);
        for (std::int64_t i = 0; i < pile.minus; ++i) col.push_back(Card::Minus);
        if (!col.empty()) cols.push_back(std::move(col));
    }
    std::int64_t h_max = 0;
    for (const auto& col : cols) h_max = std::max<std::int64_t>(h_max, static_cast<std::int64_t>(col.size()));
    const auto picked = h_max > 0 ? picked_levels(rule, h_max) : std::vector<std::int64_t>{};

    std::vector<Card> new_pile;
    std::vector<std::vector<Card>> rest;
    for (const auto& col : cols) {
        std::vector<Card> keep;
        std::size_t next = 0;
        for (std::size_t lvl = 1; lvl <= col.size(); ++lvl) {
            while (next < picked.size() && static_cast<std::size_t>(picked[next]) < lvl) ++next;
            if (next < picked.size() && static_cast<std::size_t>(picked[next]) == lvl) {
                new_pile.push_back(col[lvl - 1]);
            } else {
                keep.push_back(col[lvl - 1]);
            }
        }
        rest.push_back(std::move(keep));
    }
    // floats and pairwise cancellation in the new pile
    std::int64_t u = 0, p = 0, m = 0;
    for (Card c : new_pile) {
        if (c == Card::Unmarked) ++u;
        else if (c == Card::Plus) ++p;
        else ++m;
    }
    const std::int64_t c = std::min(p, m);
    u += c;
    p -= c;
    m -= c;
    std::vector<Card> first(static_cast<std::size_t>(u), Card::Unmarked);
    for (std::int64_t i = 0; i < p; ++i) first.push_back(Card::Plus);
    for (std::int64_t i = 0; i < m; ++i) first.push_back(Card::Minus);

    std::vector<std::vector<Card>> natural;
    natural.push_back(first);
    for (auto& col : rest) natural.push_back(std::move(col));
    std::size_t max_h = 0;
    for (const auto& col : natural) max_h = std::max(max_h, col.size());

    // full cell grid [col][lvl]; layers shift independently
    std::vector<std::vector<std::optional<Card>>> grid(natural.size(),
                                                       std::vector<std::optional<Card>>(max_h));
    for (std::size_t j = 0; j < natural.size(); ++j) {
        for (std::size_t lvl = 0; lvl < natural[j].size(); ++lvl) grid[j][lvl] = natural[j][lvl];
    }
    for (std::size_t lvl = 0; lvl < max_h; ++lvl) {
        std::vector<std::optional<Card>> row(grid.size());
        for (std::size_t j = 0; j < grid.size(); ++j) row[j] = grid[j][lvl];
        std::optional<std::size_t> first_pile_minus;
        if (row[0] && *row[0] == Card::Minus) first_pile_minus = 0;
        bool moved = true;
        while (moved) {
            moved = false;
            for (std::size_t j = 1; j < row.size(); ++j) {
                if (!row[j]) continue;
                if (!row[j - 1]) {
                    row[j - 1] = row[j];
                    row[j] = std::nullopt;
                    if (first_pile_minus && *first_pile_minus == j) first_pile_minus = j - 1;
                    moved = true;
                } else if (first_pile_minus && *first_pile_minus == j - 1 && *row[j] != Card::Minus) {
                    if (*row[j] == Card::Plus) {
                        row[j - 1] = Card::Unmarked;  // cancellation
                        row[j] = std::nullopt;
                        first_pile_minus.reset();
                    } else {
                        std::swap(row[j - 1], row[j]);
                        first_pile_minus = j;
                    }
                    moved = true;
                }
            }
        }
        for (std::size_t j = 0; j < grid.size(); ++j) grid[j][lvl] = row[j];
    }
    // compact each column downward and count card classes
    std::vector<MarkedPile> out;
    for (const auto& col : grid) {
        MarkedPile pile;
        for (const auto& cell : col) {
            if (!cell) continue;
            if (*cell == Card::Unmarked) ++pile.unmarked;
            else if (*cell == Card::Plus) ++pile.plus;
            else ++pile.minus;
        }
        if (pile.height() > 0) out.push_back(pile);
    }
    return out;
}

std::vector<MarkedPile> nonempty(const std::vector<MarkedPile>& piles) {
    std::vector<MarkedPile> out;
    for (const auto& p : piles) {
        if (p.height() > 0) out.push_back(p);
    }
    return out;
}

} // namespace

TEST_CASE("deviation against the stable reference") {
    const Partition ref = Partition::validate({5, 3, 2, 1});
    const auto d1 = deviation(Partition::validate({6, 2, 2, 1}), ref);
    CHECK(d1.deviation == std::vector<std::int64_t>{1, -1, 0, 0});
    CHECK(d1.surplus_total == 1);
    CHECK(d1.deficit_total == 1);

    const auto d2 = deviation(ref, ref);
    CHECK(d2.surplus_total == 0);
    CHECK(d2.deficit_total == 0);

    const auto d3 = deviation(Partition::validate({11}), ref);
    CHECK(d3.surplus_total == 6);
    CHECK(d3.deficit_total == 6);
}

TEST_CASE("mark places plus and minus cards") {
    const Partition ref = Partition::validate({5, 3, 2, 1});
    const MarkedConfig mc = mark(kQ310, Partition::validate({6, 2, 2, 1}), ref);
    REQUIRE(mc.piles.size() == 4);
    CHECK(mc.piles[0] == MarkedPile{5, 1, 0});
    CHECK(mc.piles[1] == MarkedPile{2, 0, 1});
    CHECK(mc.piles[2] == MarkedPile{2, 0, 0});
    CHECK(mc.piles[3] == MarkedPile{1, 0, 0});

    const MarkedConfig self = mark(kQ310, ref, ref);
    CHECK(self.plus_total() == 0);
    CHECK(self.minus_total() == 0);

    const MarkedConfig two = mark(kOrdinary, Partition::validate({3}), Partition::validate({2, 1}));
    REQUIRE(two.piles.size() == 2);
    CHECK(two.piles[0] == MarkedPile{2, 1, 0});
    CHECK(two.piles[1] == MarkedPile{0, 0, 1});

    CHECK(throws_code(ErrorCode::NotStableReference, [] {
        (void)mark(kOrdinary, Partition::validate({3}), Partition::validate({3}));
    }));
}

TEST_CASE("marked step equals the card-level oracle") {
    std::vector<SigmaRule> rules = {kOrdinary, kQ310, SigmaRule::q_proportion(Rational(1, 2)),
                                    SigmaRule::q_proportion(Rational(1, 1)),
                                    SigmaRule::levels({1, 3}, 1 << 16),
                                    SigmaRule::levels({1, 2, 5}, 1 << 16),
                                    SigmaRule::levels({1, 4}, 1 << 16)};
    for (const auto& rule : rules) {
        for (std::int64_t l1 = 1; l1 <= 6; ++l1) {
            const Partition ref = stable_from_top(rule, l1);
            for (std::int64_t n = 0; n <= 10; ++n) {
                for_each_partition(n, [&](const std::vector<std::int64_t>& parts) {
                    const Partition start = Partition::validate(parts);
                    MarkedConfig mc = mark(rule, start, ref);
                    for (int t = 0; t < 6; ++t) {
                        const auto oracle = card_oracle_step(rule, mc);
                        mc = marked_step(rule, mc);
                        REQUIRE(nonempty(mc.piles) == oracle);
                    }
                });
            }
        }
    }
}

TEST_CASE("marked step on the worked examples") {
    const Partition ref = Partition::validate({5, 3, 2, 1});
    MarkedConfig mc = mark(kQ310, Partition::validate({6, 2, 2, 1}), ref);
    for (int t = 0; t < 4; ++t) {
        mc = marked_step(kQ310, mc);
        CHECK(mc.plus_total() == 1);   // constant along the cycle
        CHECK(mc.minus_total() == 1);
    }
    CHECK(mc.live_projection() == Partition::validate({6, 2, 2, 1}));

    MarkedConfig still = mark(kQ310, ref, ref);
    for (int t = 0; t < 5; ++t) {
        still = marked_step(kQ310, still);
        CHECK(still.plus_total() == 0);
        CHECK(still.minus_total() == 0);
    }

    // ordinary solitaire from (4,2) converges to the staircase (3,2,1)
    MarkedConfig conv = mark(kOrdinary, Partition::validate({4, 2}), Partition::validate({3, 2, 1}));
    MarkedStepStats stats;
    std::int64_t cancelled = 0;
    for (int t = 0; t < 20; ++t) {
        conv = marked_step(kOrdinary, conv, &stats);
        cancelled += stats.new_pile_cancelled + stats.shift_cancelled;
    }
    CHECK(conv.plus_total() == 0);
    CHECK(conv.minus_total() == 0);
    CHECK(cancelled == 1);  // one surplus/deficit pair wiped out on the way
    CHECK(conv.live_projection() == Partition::validate({3, 2, 1}));
}

TEST_CASE("surplus traces never increase") {
    const Partition ref = Partition::validate({5, 3, 2, 1});
    const auto cyc = surplus_trace(kQ310, Partition::validate({6, 2, 2, 1}), ref, 8);
    REQUIRE(cyc.size() == 9);
    for (const auto& [s, d] : cyc) {
        CHECK(s == 1);
        CHECK(d == 1);
    }

    const auto conv = surplus_trace(kOrdinary, Partition::validate({6}), Partition::validate({3, 2, 1}), 20);
    CHECK(conv.back() == std::pair<std::int64_t, std::int64_t>{0, 0});
    for (std::size_t t = 1; t < conv.size(); ++t) {
        CHECK(conv[t].first <= conv[t - 1].first);
        CHECK(conv[t].second <= conv[t - 1].second);
    }

    const auto still = surplus_trace(kQ310, ref, ref, 5);
    for (const auto& [s, d] : still) {
        CHECK(s == 0);
        CHECK(d == 0);
    }
}
