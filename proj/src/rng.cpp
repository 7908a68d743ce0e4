#include "bulgsol/rng.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace bulgsol {

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
        v = engine_();
    } while (v >= limit);
    return v % bound;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
}

Partition random_partition(Rng& rng, std::int64_t n, std::int64_t m_cap) {
    if (n < 0) fail(ErrorCode::BadInput, "negative n");
    if (n == 0) return Partition();
    if (m_cap <= 0) {
        m_cap = std::max<std::int64_t>(1, 2 * static_cast<std::int64_t>(std::sqrt(static_cast<double>(n))));
    }
    const std::int64_t m = rng.between(1, std::min(m_cap, n));
    // m-1 distinct cut points in [1, n-1]
    std::unordered_set<std::int64_t> cuts;
    while (static_cast<std::int64_t>(cuts.size()) < m - 1) {
        cuts.insert(rng.between(1, n - 1));
    }
    std::vector<std::int64_t> sorted_cuts(cuts.begin(), cuts.end());
    std::sort(sorted_cuts.begin(), sorted_cuts.end());
    std::vector<std::int64_t> piles;
    std::int64_t prev = 0;
    for (std::int64_t c : sorted_cuts) {
        piles.push_back(c - prev);
        prev = c;
    }
    piles.push_back(n - prev);
    return Partition::from_unsorted(std::move(piles));
}

Partition random_dominated(Rng& rng, const Partition& kappa) {
    std::vector<std::int64_t> draws;
    draws.reserve(kappa.ell());
    for (std::int64_t part : kappa.parts()) {
        draws.push_back(rng.between(0, part));
    }
    return Partition::from_unsorted(std::move(draws));
}

} // namespace bulgsol
