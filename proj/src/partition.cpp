#include "bulgsol/partition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bulgsol {

namespace {

std::int64_t checked_sum(const std::vector<std::int64_t>& v) {
    std::int64_t total = 0;
    for (std::int64_t x : v) {
        if (__builtin_add_overflow(total, x, &total)) {
            fail(ErrorCode::Overflow, "partition total exceeds 64 bits");
        }
    }
    return total;
}

} // namespace

Partition Partition::validate(std::vector<std::int64_t> raw) {
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] <= 0) {
            fail(ErrorCode::NonPositivePart, "part " + std::to_string(raw[i]) + " at index " + std::to_string(i));
        }
        if (i + 1 < raw.size() && raw[i] < raw[i + 1]) {
            fail(ErrorCode::NotSorted, "parts increase at index " + std::to_string(i));
        }
    }
    Partition p;
    p.n_ = checked_sum(raw);
    p.parts_ = std::move(raw);
    return p;
}

Partition Partition::from_unsorted(std::vector<std::int64_t> values) {
    std::erase_if(values, [](std::int64_t x) { return x == 0; });
    for (std::int64_t x : values) {
        if (x < 0) fail(ErrorCode::NonPositivePart, "negative pile size " + std::to_string(x));
    }
    std::sort(values.begin(), values.end(), std::greater<>());
    Partition p;
    p.n_ = checked_sum(values);
    p.parts_ = std::move(values);
    return p;
}

std::string Partition::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) os << ',';
        os << parts_[i];
    }
    os << ')';
    return os.str();
}

Composition Composition::of(std::vector<std::int64_t> values) {
    Composition c;
    for (std::int64_t x : values) {
        if (x < 0) fail(ErrorCode::NonPositivePart, "negative composition part");
    }
    c.n = checked_sum(values);
    c.parts = std::move(values);
    return c;
}

bool dominates(const Partition& kappa, const Partition& lam) {
    const std::size_t len = std::max(kappa.ell(), lam.ell());
    for (std::size_t i = 0; i < len; ++i) {
        if (lam.part(i) > kappa.part(i)) return false;
    }
    return true;
}

bool is_convex(const Partition& p) {
    // Differences with two trailing virtual zeros must be weakly decreasing.
    const std::size_t l = p.ell();
    for (std::size_t i = 0; i + 1 <= l; ++i) {
        const std::int64_t d1 = p.part(i) - p.part(i + 1);
        const std::int64_t d2 = p.part(i + 1) - p.part(i + 2);
        if (d1 < d2) return false;
    }
    return true;
}

std::int64_t boundary(const Partition& p, double x) {
    if (x < 0) fail(ErrorCode::NegativeX, "boundary at x < 0");
    const double idx = std::floor(x);
    if (idx >= static_cast<double>(p.ell())) return 0;
    return p.part(static_cast<std::size_t>(idx));
}

double downscale_boundary(const Partition& p, std::int64_t n, double x) {
    if (p.empty()) fail(ErrorCode::EmptyPartition, "downscale of empty partition");
    if (n < p.n()) fail(ErrorCode::BadInput, "deck size below the partition total");
    if (x < 0) fail(ErrorCode::NegativeX, "downscale at x < 0");
    const double l1 = static_cast<double>(p.lambda1());
    const double idx = std::floor(x * static_cast<double>(n) / l1);
    if (idx >= static_cast<double>(p.ell())) return 0.0;
    return static_cast<double>(p.part(static_cast<std::size_t>(idx))) / l1;
}

double downscale_boundary(const Partition& p, std::int64_t n, const Rational& x) {
    if (p.empty()) fail(ErrorCode::EmptyPartition, "downscale of empty partition");
    if (n < p.n()) fail(ErrorCode::BadInput, "deck size below the partition total");
    if (x.num < 0) fail(ErrorCode::NegativeX, "downscale at x < 0");
    // floor(x*n/lambda1) in exact integer arithmetic
    const __int128 num = static_cast<__int128>(x.num) * n;
    const __int128 den = static_cast<__int128>(x.den) * p.lambda1();
    const __int128 idx = num / den;
    if (idx >= static_cast<__int128>(p.ell())) return 0.0;
    return static_cast<double>(p.part(static_cast<std::size_t>(idx))) /
           static_cast<double>(p.lambda1());
}

Partition sort_to_partition(const Composition& c) {
    return Partition::from_unsorted(c.parts);
}

PartitionStream::PartitionStream(std::int64_t n) : n_(n) {
    if (n < 0) fail(ErrorCode::BadInput, "partition stream of negative n");
}

bool PartitionStream::next(std::vector<std::int64_t>& out) {
    if (done_) return false;
    if (first_) {
        first_ = false;
        if (n_ == 0) {
            out.clear();
            done_ = true;
            return true;
        }
        current_.assign(1, n_);
        out = current_;
        return true;
    }
    // successor in descending lex: decrement the last part > 1, then refill
    // the tail with the largest allowed equal parts.
    std::size_t j = current_.size();
    while (j > 0 && current_[j - 1] == 1) --j;
    if (j == 0) {
        done_ = true;
        return false;
    }
    std::int64_t rem = 0;
    for (std::size_t i = j - 1; i < current_.size(); ++i) rem += current_[i];
    const std::int64_t v = current_[j - 1] - 1;
    rem -= v;
    current_.resize(j);
    current_[j - 1] = v;
    while (rem >= v) {
        current_.push_back(v);
        rem -= v;
    }
    if (rem > 0) current_.push_back(rem);
    out = current_;
    return true;
}

void for_each_partition(std::int64_t n, const std::function<void(const std::vector<std::int64_t>&)>& fn) {
    PartitionStream stream(n);
    std::vector<std::int64_t> parts;
    while (stream.next(parts)) fn(parts);
}

std::int64_t partition_count(std::int64_t n) {
    if (n < 0) return 0;
    std::vector<std::int64_t> p(static_cast<std::size_t>(n) + 1, 0);
    p[0] = 1;
    for (std::int64_t m = 1; m <= n; ++m) {
        std::int64_t total = 0;
        for (std::int64_t k = 1;; ++k) {
            const std::int64_t g1 = k * (3 * k - 1) / 2;
            const std::int64_t g2 = k * (3 * k + 1) / 2;
            if (g1 > m) break;
            const std::int64_t sign = (k % 2 == 1) ? 1 : -1;
            total += sign * p[static_cast<std::size_t>(m - g1)];
            if (g2 <= m) total += sign * p[static_cast<std::size_t>(m - g2)];
        }
        p[static_cast<std::size_t>(m)] = total;
    }
    return p[static_cast<std::size_t>(n)];
}

} // namespace bulgsol
