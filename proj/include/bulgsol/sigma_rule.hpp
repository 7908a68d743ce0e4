#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "bulgsol/partition.hpp"
#include "bulgsol/rational.hpp"

namespace bulgsol {

enum class RuleKind { QProportion, Table, Levels };

struct WellBehavedViolation {
    enum class Kind { SigmaOneNotOne, SigmaDecreases, SigmaBarDecreases };
    std::int64_t h;
    Kind kind;
    std::string describe() const;
};

struct WellBehavedReport {
    bool ok = true;
    std::vector<WellBehavedViolation> violations;
};

/// A picking rule sigma. q-proportion rules are defined for every pile size;
/// table and levels rules are finite and refuse evaluation beyond h_max
/// rather than extrapolate.
class SigmaRule {
  public:
    static SigmaRule q_proportion(const Rational& q);
    static SigmaRule table(std::vector<std::int64_t> sigma_values);
    static SigmaRule levels(std::vector<std::int64_t> picked, std::int64_t h_max);

    RuleKind kind() const { return kind_; }
    const Rational& q() const { return q_; }

    /// Largest supported pile size; unbounded (INT64_MAX) for q-rules.
    std::int64_t h_max() const { return h_max_; }
    bool bounded() const { return h_max_ != std::numeric_limits<std::int64_t>::max(); }

    /// Cards picked from a pile of size h. sigma(0) = 0.
    std::int64_t sigma(std::int64_t h) const;

    /// Cards left behind: h - sigma(h).
    std::int64_t sigma_bar(std::int64_t h) const { return h - sigma(h); }

    /// q-rules and levels rules satisfy the well-behavedness conditions by
    /// construction; table rules must be scanned.
    bool well_behaved_by_construction() const { return kind_ != RuleKind::Table; }

    /// Pick-level memo P(1..h_max), present for small bounded rules.
    const std::vector<std::int64_t>* pick_memo() const { return pick_memo_.get(); }

    std::string str() const;

  private:
    SigmaRule() = default;

    RuleKind kind_ = RuleKind::QProportion;
    Rational q_;
    std::int64_t h_max_ = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int64_t> table_;          // sigma(1..h_max) for table rules
    std::vector<std::int64_t> levels_;         // sorted picked levels for levels rules
    std::shared_ptr<const std::vector<std::int64_t>> pick_memo_;  // P(1..h_max), built at construction
};

WellBehavedReport is_well_behaved(const SigmaRule& rule, std::int64_t h_max);

/// Requires the rule to be well-behaved up to h_max. Throws NotWellBehaved.
void require_well_behaved(const SigmaRule& rule, std::int64_t h_max);

/// All picked levels H_i <= h_max, sorted; H_1 = 1.
std::vector<std::int64_t> picked_levels(const SigmaRule& rule, std::int64_t h_max);

/// P(h): the level at which a card currently at level h is eventually picked.
std::int64_t pick_level(const SigmaRule& rule, std::int64_t h);

/// A well-behaved levels rule fixing the given convex partition, with
/// h_max = lambda_1. Within each layer interval the required levels are taken
/// greedily from the bottom.
SigmaRule rule_from_convex(const Partition& p);

} // namespace bulgsol
