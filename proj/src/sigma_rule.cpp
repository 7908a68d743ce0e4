#include "bulgsol/sigma_rule.hpp"

#include <algorithm>

namespace bulgsol {

namespace {

constexpr std::int64_t kPickMemoCap = 1 << 20;

} // namespace

std::string WellBehavedViolation::describe() const {
    switch (kind) {
    case Kind::SigmaOneNotOne: return "sigma(1) != 1";
    case Kind::SigmaDecreases: return "sigma decreases at h=" + std::to_string(h);
    case Kind::SigmaBarDecreases: return "sigma_bar decreases at h=" + std::to_string(h);
    }
    return "?";
}

SigmaRule SigmaRule::q_proportion(const Rational& q) {
    if (q.num <= 0 || Rational(1, 1) < q) {
        fail(ErrorCode::QOutOfRange, "q must lie in (0,1], got " + q.str());
    }
    SigmaRule rule;
    rule.kind_ = RuleKind::QProportion;
    rule.q_ = q;
    return rule;
}

SigmaRule SigmaRule::table(std::vector<std::int64_t> sigma_values) {
    for (std::size_t i = 0; i < sigma_values.size(); ++i) {
        const std::int64_t h = static_cast<std::int64_t>(i) + 1;
        if (sigma_values[i] < 0 || sigma_values[i] > h) {
            fail(ErrorCode::SigmaExceedsPile,
                 "sigma(" + std::to_string(h) + ") = " + std::to_string(sigma_values[i]) + " outside [0,h]");
        }
    }
    SigmaRule rule;
    rule.kind_ = RuleKind::Table;
    rule.h_max_ = static_cast<std::int64_t>(sigma_values.size());
    rule.table_ = std::move(sigma_values);
    // P(h) memo, but only when the table happens to be well-behaved; general
    // tables keep no pick machinery.
    if (rule.h_max_ >= 1 && rule.h_max_ <= kPickMemoCap && rule.table_[0] == 1) {
        bool wb = true;
        for (std::int64_t h = 2; h <= rule.h_max_ && wb; ++h) {
            const std::int64_t delta =
                rule.table_[static_cast<std::size_t>(h - 1)] - rule.table_[static_cast<std::size_t>(h - 2)];
            wb = (delta == 0 || delta == 1);
        }
        if (wb) {
            auto memo = std::make_shared<std::vector<std::int64_t>>(static_cast<std::size_t>(rule.h_max_) + 1, 0);
            auto& p = *memo;
            std::int64_t prev = 0;
            for (std::int64_t h = 1; h <= rule.h_max_; ++h) {
                const std::int64_t cur = rule.table_[static_cast<std::size_t>(h - 1)];
                p[static_cast<std::size_t>(h)] = (cur > prev) ? h : p[static_cast<std::size_t>(h - cur)];
                prev = cur;
            }
            rule.pick_memo_ = std::move(memo);
        }
    }
    return rule;
}

SigmaRule SigmaRule::levels(std::vector<std::int64_t> picked, std::int64_t h_max) {
    if (picked.empty() || picked.front() != 1) {
        fail(ErrorCode::MissingLevelOne, "picked level set must start at 1");
    }
    for (std::size_t i = 0; i + 1 < picked.size(); ++i) {
        if (picked[i] >= picked[i + 1]) fail(ErrorCode::Unsorted, "picked levels must strictly increase");
    }
    if (h_max < picked.back()) fail(ErrorCode::BadInput, "h_max below largest picked level");
    SigmaRule rule;
    rule.kind_ = RuleKind::Levels;
    rule.h_max_ = h_max;
    rule.levels_ = std::move(picked);
    if (h_max <= kPickMemoCap) {
        auto memo = std::make_shared<std::vector<std::int64_t>>(static_cast<std::size_t>(h_max) + 1, 0);
        auto& p = *memo;
        std::int64_t count = 0;
        std::size_t next = 0;
        for (std::int64_t h = 1; h <= h_max; ++h) {
            const bool picked_here = next < rule.levels_.size() && rule.levels_[next] == h;
            if (picked_here) { ++count; ++next; }
            p[static_cast<std::size_t>(h)] = picked_here ? h : p[static_cast<std::size_t>(h - count)];
        }
        rule.pick_memo_ = std::move(memo);
    }
    return rule;
}

std::int64_t SigmaRule::sigma(std::int64_t h) const {
    if (h <= 0) return 0;
    switch (kind_) {
    case RuleKind::QProportion:
        return q_.ceil_mul(h);
    case RuleKind::Table:
        if (h > h_max_) {
            fail(ErrorCode::PileTooLarge,
                 "table rule undefined at h=" + std::to_string(h) + " (h_max=" + std::to_string(h_max_) + ")");
        }
        return table_[static_cast<std::size_t>(h - 1)];
    case RuleKind::Levels:
        if (h > h_max_) {
            fail(ErrorCode::PileTooLarge,
                 "levels rule undefined at h=" + std::to_string(h) + " (h_max=" + std::to_string(h_max_) + ")");
        }
        return static_cast<std::int64_t>(
            std::upper_bound(levels_.begin(), levels_.end(), h) - levels_.begin());
    }
    return 0;
}

std::string SigmaRule::str() const {
    switch (kind_) {
    case RuleKind::QProportion: return "q:" + q_.str();
    case RuleKind::Table: return "table[h_max=" + std::to_string(h_max_) + "]";
    case RuleKind::Levels: {
        std::string s = "levels:";
        for (std::size_t i = 0; i < levels_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(levels_[i]);
        }
        return s + "@" + std::to_string(h_max_);
    }
    }
    return "?";
}

WellBehavedReport is_well_behaved(const SigmaRule& rule, std::int64_t h_max) {
    WellBehavedReport report;
    if (h_max >= 1 && rule.sigma(1) != 1) {
        report.violations.push_back({1, WellBehavedViolation::Kind::SigmaOneNotOne});
    }
    std::int64_t prev = (h_max >= 1) ? rule.sigma(1) : 0;
    for (std::int64_t h = 2; h <= h_max; ++h) {
        const std::int64_t cur = rule.sigma(h);
        const std::int64_t delta = cur - prev;
        if (delta < 0) {
            report.violations.push_back({h, WellBehavedViolation::Kind::SigmaDecreases});
        } else if (delta > 1) {
            report.violations.push_back({h, WellBehavedViolation::Kind::SigmaBarDecreases});
        }
        prev = cur;
    }
    report.ok = report.violations.empty();
    return report;
}

void require_well_behaved(const SigmaRule& rule, std::int64_t h_max) {
    if (rule.well_behaved_by_construction()) {
        if (rule.bounded() && h_max > rule.h_max()) {
            fail(ErrorCode::PileTooLarge, "rule undefined up to h=" + std::to_string(h_max));
        }
        return;
    }
    const auto report = is_well_behaved(rule, h_max);
    if (!report.ok) {
        fail(ErrorCode::NotWellBehaved,
             "rule violates well-behavedness: " + report.violations.front().describe());
    }
}

std::vector<std::int64_t> picked_levels(const SigmaRule& rule, std::int64_t h_max) {
    require_well_behaved(rule, h_max);
    std::vector<std::int64_t> levels;
    std::int64_t prev = 0;
    for (std::int64_t h = 1; h <= h_max; ++h) {
        const std::int64_t cur = rule.sigma(h);
        if (cur > prev) levels.push_back(h);
        prev = cur;
    }
    return levels;
}

std::int64_t pick_level(const SigmaRule& rule, std::int64_t h) {
    if (h < 1) fail(ErrorCode::BadInput, "pick_level needs h >= 1");
    require_well_behaved(rule, rule.bounded() ? std::min(h, rule.h_max()) : h);
    if (const auto* memo = rule.pick_memo(); memo && h < static_cast<std::int64_t>(memo->size())) {
        return (*memo)[static_cast<std::size_t>(h)];
    }
    // Follow the drop chain h -> h - sigma(h) until a picked level.
    // h is picked iff sigma steps up at h.
    std::int64_t cur = h;
    while (true) {
        const std::int64_t s = rule.sigma(cur);
        if (s - rule.sigma(cur - 1) == 1) return cur;
        if (s <= 0) fail(ErrorCode::NotWellBehaved, "sigma=0 at h=" + std::to_string(cur));
        cur -= s;
    }
}

SigmaRule rule_from_convex(const Partition& p) {
    if (p.empty()) fail(ErrorCode::NotConvex, "empty partition has no picking rule");
    if (!is_convex(p)) fail(ErrorCode::NotConvex, "partition " + p.str() + " is not convex");
    // For each i, pick (d_i - d_{i+1}) levels from the bottom of the layer
    // interval (lambda_{i+1}, lambda_i].
    std::vector<std::int64_t> levels;
    for (std::size_t i = p.ell(); i-- > 0;) {
        const std::int64_t d1 = p.part(i) - p.part(i + 1);
        const std::int64_t d2 = p.part(i + 1) - p.part(i + 2);
        const std::int64_t count = d1 - d2;
        for (std::int64_t k = 1; k <= count; ++k) levels.push_back(p.part(i + 1) + k);
    }
    std::sort(levels.begin(), levels.end());
    return SigmaRule::levels(std::move(levels), p.lambda1());
}

} // namespace bulgsol
