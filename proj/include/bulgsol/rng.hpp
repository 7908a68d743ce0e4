#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bulgsol/partition.hpp"

namespace bulgsol {

/// Deterministic 64-bit PRNG front end. Bounded draws avoid
/// std::uniform_int_distribution so streams are identical across standard
/// libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static const char* name() { return "mt19937_64"; }

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound) by rejection.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform in [lo, hi] inclusive.
    std::int64_t between(std::int64_t lo, std::int64_t hi);

  private:
    std::mt19937_64 engine_;
};

/// Random partition of n via sorted cuts of the deck into m piles. m is drawn
/// from [1, m_cap]; the default cap keeps the pile count near the regime the
/// solitaire itself settles into.
Partition random_partition(Rng& rng, std::int64_t n, std::int64_t m_cap = 0);

/// Random partition dominated by kappa: independent draws under each part,
/// re-sorted (sorting preserves componentwise dominance).
Partition random_dominated(Rng& rng, const Partition& kappa);

} // namespace bulgsol
