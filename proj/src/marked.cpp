#include "bulgsol/marked.hpp"

#include <algorithm>

#include "bulgsol/dynamics.hpp"

namespace bulgsol {

DeviationSummary deviation(const Partition& p, const Partition& ref) {
    DeviationSummary out;
    const std::size_t len = std::max(p.ell(), ref.ell());
    out.deviation.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
        const std::int64_t d = p.part(i) - ref.part(i);
        out.deviation.push_back(d);
        if (d > 0) out.surplus_total += d;
        else out.deficit_total -= d;
    }
    return out;
}

Partition MarkedConfig::live_projection() const {
    std::vector<std::int64_t> parts;
    parts.reserve(piles.size());
    for (const auto& pile : piles) {
        if (pile.live() > 0) parts.push_back(pile.live());
    }
    return Partition::from_unsorted(std::move(parts));
}

std::int64_t MarkedConfig::plus_total() const {
    std::int64_t total = 0;
    for (const auto& pile : piles) total += pile.plus;
    return total;
}

std::int64_t MarkedConfig::minus_total() const {
    std::int64_t total = 0;
    for (const auto& pile : piles) total += pile.minus;
    return total;
}

namespace {

MarkedConfig aligned_mark(const Partition& p, const Partition& ref) {
    MarkedConfig mc;
    mc.reference = ref;
    const std::size_t len = std::max(p.ell(), ref.ell());
    mc.piles.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
        const std::int64_t live = p.part(i);
        const std::int64_t want = ref.part(i);
        MarkedPile pile;
        pile.unmarked = std::min(live, want);
        pile.plus = std::max<std::int64_t>(live - want, 0);
        pile.minus = std::max<std::int64_t>(want - live, 0);
        mc.piles.push_back(pile);
    }
    return mc;
}

} // namespace

MarkedConfig mark(const SigmaRule& rule, const Partition& p, const Partition& ref) {
    if (step(rule, ref) != ref) {
        fail(ErrorCode::NotStableReference, "reference " + ref.str() + " is not fixed by the rule");
    }
    return aligned_mark(p, ref);
}

MarkedConfig marked_step(const SigmaRule& rule, const MarkedConfig& mc, MarkedStepStats* stats) {
    const Partition& ref = mc.reference;
    require_well_behaved(rule, std::max(mc.piles.empty() ? 0 : mc.piles.front().height(), ref.lambda1()));

    // New pile, by card class. Picking sigma(h) cards from a pile whose
    // cards-of-one-class fill the bottom h levels removes sigma(h) of them;
    // plus/minus pairs landing together cancel into unmarked cards.
    std::int64_t new_plus = 0, new_minus = 0;
    for (const auto& pile : mc.piles) {
        const std::int64_t sig_live = rule.sigma(pile.live());
        const std::int64_t sig_ref = rule.sigma(pile.ref());
        const std::int64_t sig_min = std::min(sig_live, sig_ref);
        new_plus += sig_live - sig_min;
        new_minus += sig_ref - sig_min;
    }
    const std::int64_t cancel_new = std::min(new_plus, new_minus);
    new_plus -= cancel_new;

    const std::int64_t plus_after_stage1 = [&] {
        std::int64_t total = new_plus;
        for (const auto& pile : mc.piles) {
            total += std::max<std::int64_t>(rule.sigma_bar(pile.live()) - rule.sigma_bar(pile.ref()), 0);
        }
        return total;
    }();

    // Left-shifting realigns both projections: the result is the aligned
    // marking of the stepped live configuration against the same reference.
    const Partition next_live = step(rule, mc.live_projection());
    MarkedConfig out = aligned_mark(next_live, ref);

    if (stats) {
        stats->new_pile_cancelled = cancel_new;
        stats->shift_cancelled = plus_after_stage1 - out.plus_total();
    }
    return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> surplus_trace(const SigmaRule& rule, const Partition& p,
                                                                 const Partition& ref, std::int64_t moves) {
    if (moves < 0) fail(ErrorCode::BadInput, "negative move count");
    MarkedConfig mc = mark(rule, p, ref);
    std::vector<std::pair<std::int64_t, std::int64_t>> trace;
    trace.reserve(static_cast<std::size_t>(moves) + 1);
    trace.emplace_back(mc.plus_total(), mc.minus_total());
    for (std::int64_t t = 0; t < moves; ++t) {
        mc = marked_step(rule, mc);
        trace.emplace_back(mc.plus_total(), mc.minus_total());
    }
    return trace;
}

} // namespace bulgsol
