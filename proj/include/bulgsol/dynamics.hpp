#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bulgsol/partition.hpp"
#include "bulgsol/sigma_rule.hpp"

namespace bulgsol {

/// Reusable move engine. Keeps scratch buffers so long trajectories do not
/// allocate per move. For rules whose sigma_bar is monotone the remainders
/// stay sorted and only the new pile needs insertion; otherwise a full sort
/// runs after each move.
class Stepper {
  public:
    explicit Stepper(const SigmaRule& rule);

    /// One move of f_sigma, in place. parts must be sorted descending with no
    /// zeros; the result is again in that form. Total cards are conserved.
    void step_inplace(std::vector<std::int64_t>& parts);

    /// Largest sigma value taken from any pile in the last move.
    std::int64_t last_max_pick() const { return last_max_pick_; }
    /// Size of the pile created by the last move.
    std::int64_t last_new_pile() const { return last_new_pile_; }
    /// Number of nonzero piles before the last move.
    std::int64_t last_pile_count() const { return last_pile_count_; }

    /// Diagnostic mode: every move of a q-rule checks the exact new-pile
    /// window nq <= pile < nq + m and throws on violation. Off by default so
    /// sweep loops stay branch-light.
    void set_diagnostics(bool on) { diagnostics_ = on; }

    const SigmaRule& rule() const { return rule_; }

  private:
    SigmaRule rule_;
    std::vector<std::int64_t> scratch_;
    bool merge_path_;
    bool diagnostics_ = false;
    std::int64_t last_max_pick_ = 0;
    std::int64_t last_new_pile_ = 0;
    std::int64_t last_pile_count_ = 0;
};

Partition step(const SigmaRule& rule, const Partition& p);

/// Same move computed through the layer picture: picked layers leave the
/// diagram, form the new column, and the rest left-shifts. Must agree with
/// step() for well-behaved rules.
Partition step_layers(const SigmaRule& rule, const Partition& p);

Partition iterate(const SigmaRule& rule, const Partition& p, std::int64_t moves);

struct CycleInfo {
    std::int64_t tail_length = 0;
    std::int64_t cycle_length = 0;
    std::vector<Partition> cycle;  // in visit order from the first recurrent configuration
};

/// Brent-style constant-memory cycle detection followed by a recovery pass
/// for the minimal tail and the cycle members.
CycleInfo find_cycle(const SigmaRule& rule, const Partition& start);

/// Tail and period only; the callback sees each cycle member once. Spares the
/// memory of materializing long cycles at large n.
CycleInfo find_cycle_visit(const SigmaRule& rule, const Partition& start,
                           const std::function<void(const std::vector<std::int64_t>&)>& on_cycle_member);

/// All configurations on cycles of f_sigma over P(n), in enumeration order.
/// Guarded: p(n) must fit in memory.
std::vector<Partition> enumerate_recurrent(const SigmaRule& rule, std::int64_t n,
                                           std::int64_t guard = 45, int shards = 1);

/// Moves until a pile of size h melts to nothing under h -> sigma_bar(h).
std::int64_t pile_lifetime(const SigmaRule& rule, std::int64_t h);

struct TrajectoryEntry {
    std::int64_t t;
    Partition config;
};

/// Records every thin-th configuration (t = 0, thin, 2*thin, ...) plus the
/// final one. diagnostics enables the per-move window check of Stepper.
std::vector<TrajectoryEntry> play_trajectory(const SigmaRule& rule, const Partition& start,
                                             std::int64_t moves, std::int64_t thin = 1,
                                             bool diagnostics = false);

} // namespace bulgsol
