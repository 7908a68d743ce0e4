#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bulgsol/error.hpp"
#include "bulgsol/rational.hpp"

namespace bulgsol {

/// An integer partition: weakly decreasing positive pile sizes. Parts beyond
/// ell() read as zero, matching the virtual zero-tail convention used
/// throughout the solitaire code.
class Partition {
  public:
    Partition() = default;

    /// Validates a raw sequence: weakly decreasing, all entries positive.
    static Partition validate(std::vector<std::int64_t> raw);

    /// Sorts an arbitrary bag of nonnegative values into a partition.
    static Partition from_unsorted(std::vector<std::int64_t> values);

    const std::vector<std::int64_t>& parts() const { return parts_; }
    std::int64_t n() const { return n_; }
    std::size_t ell() const { return parts_.size(); }
    bool empty() const { return parts_.empty(); }

    /// 0-based part access with virtual zeros.
    std::int64_t part(std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

    std::int64_t lambda1() const { return parts_.empty() ? 0 : parts_[0]; }

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
    friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }
    friend bool operator<(const Partition& a, const Partition& b) { return a.parts_ < b.parts_; }

    std::string str() const;

  private:
    std::vector<std::int64_t> parts_;
    std::int64_t n_ = 0;
};

/// Piles kept in creation order; totals only, no sortedness invariant.
struct Composition {
    std::vector<std::int64_t> parts;
    std::int64_t n = 0;

    static Composition of(std::vector<std::int64_t> values);
};

/// kappa dominates lam: lam_i <= kappa_i for every i (virtual zeros included).
bool dominates(const Partition& kappa, const Partition& lam);

/// Successive differences (with virtual zeros) weakly decreasing and nonnegative.
bool is_convex(const Partition& p);

/// Diagram-boundary function: height of the column containing x.
std::int64_t boundary(const Partition& p, double x);

/// Boundary rescaled to height 1; deck size n sets the horizontal scale
/// (normally n = p.n()). The column index floor(x*n/lambda1) is computed in
/// floating point here, so an x sitting exactly on a step boundary can land
/// one column off; measurement grids dodge step abscissae for that reason.
double downscale_boundary(const Partition& p, std::int64_t n, double x);

/// Exact-index variant for rational abscissae.
double downscale_boundary(const Partition& p, std::int64_t n, const Rational& x);

Partition sort_to_partition(const Composition& c);

/// Streams the partitions of n in lexicographic descending order:
/// (n), (n-1,1), ..., (1,...,1). Each worker takes its own stream.
class PartitionStream {
  public:
    explicit PartitionStream(std::int64_t n);

    /// Writes the next partition into out; false when exhausted.
    bool next(std::vector<std::int64_t>& out);

  private:
    std::int64_t n_;
    std::vector<std::int64_t> current_;
    bool done_ = false;
    bool first_ = true;
};

void for_each_partition(std::int64_t n, const std::function<void(const std::vector<std::int64_t>&)>& fn);

/// p(n) by Euler's pentagonal-number recurrence (64-bit; fine for n <= 60).
std::int64_t partition_count(std::int64_t n);

} // namespace bulgsol
