#include "bulgsol/dynamics.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <thread>

namespace bulgsol {

Stepper::Stepper(const SigmaRule& rule)
    : rule_(rule), merge_path_(rule.well_behaved_by_construction()) {}

void Stepper::step_inplace(std::vector<std::int64_t>& parts) {
    last_pile_count_ = static_cast<std::int64_t>(parts.size());
    std::int64_t picked = 0;
    std::int64_t max_pick = 0;
    std::int64_t total = 0;
    scratch_.clear();
    scratch_.reserve(parts.size() + 1);
    for (std::int64_t h : parts) {
        const std::int64_t s = rule_.sigma(h);
        picked += s;
        total += h;
        if (s > max_pick) max_pick = s;
        const std::int64_t rem = h - s;
        if (rem > 0) scratch_.push_back(rem);
    }
    last_max_pick_ = max_pick;
    last_new_pile_ = picked;
    if (diagnostics_ && rule_.kind() == RuleKind::QProportion && last_pile_count_ > 0) {
        const Rational& q = rule_.q();
        const __int128 lo = static_cast<__int128>(q.num) * total;
        const __int128 mid = static_cast<__int128>(picked) * q.den;
        const __int128 hi = lo + static_cast<__int128>(last_pile_count_) * q.den;
        if (!(lo <= mid && mid < hi)) {
            fail(ErrorCode::NotWellBehaved, "new-pile window violated: pile " + std::to_string(picked) +
                                                " outside [nq, nq+m) at n=" + std::to_string(total));
        }
    }
    if (!merge_path_) {
        std::sort(scratch_.begin(), scratch_.end(), std::greater<>());
    }
    // remainders are sorted descending; splice the new pile in.
    parts.clear();
    if (picked == 0) {
        parts = scratch_;
        return;
    }
    parts.reserve(scratch_.size() + 1);
    auto pos = std::lower_bound(scratch_.begin(), scratch_.end(), picked, std::greater<>());
    parts.insert(parts.end(), scratch_.begin(), pos);
    parts.push_back(picked);
    parts.insert(parts.end(), pos, scratch_.end());
}

Partition step(const SigmaRule& rule, const Partition& p) {
    Stepper stepper(rule);
    std::vector<std::int64_t> parts = p.parts();
    stepper.step_inplace(parts);
    return Partition::validate(std::move(parts));
}

Partition step_layers(const SigmaRule& rule, const Partition& p) {
    const std::int64_t l1 = p.lambda1();
    require_well_behaved(rule, l1);
    if (p.empty()) return p;
    const std::vector<std::int64_t> picked = picked_levels(rule, l1);

    // Layer widths, walking heights 1..l1 against the sorted parts.
    std::int64_t new_pile = 0;
    std::vector<std::int64_t> remaining_widths;  // widths of unpicked layers, bottom to top
    remaining_widths.reserve(static_cast<std::size_t>(l1));
    std::size_t alive = p.ell();  // parts with lambda_i >= h
    std::size_t next_pick = 0;
    for (std::int64_t h = 1; h <= l1; ++h) {
        while (alive > 0 && p.part(alive - 1) < h) --alive;
        const std::int64_t width = static_cast<std::int64_t>(alive);
        if (next_pick < picked.size() && picked[next_pick] == h) {
            new_pile += width;
            ++next_pick;
        } else {
            remaining_widths.push_back(width);
        }
    }

    // Left-shift: stacking the remaining layers gives columns whose heights
    // count the layers at least that wide.
    std::vector<std::int64_t> height_of_col(p.ell() + 1, 0);
    for (std::int64_t w : remaining_widths) {
        if (w > 0) ++height_of_col[static_cast<std::size_t>(w)];
    }
    for (std::size_t i = height_of_col.size() - 1; i-- > 1;) {
        height_of_col[i] += height_of_col[i + 1];
    }
    std::vector<std::int64_t> cols;
    for (std::size_t i = 1; i < height_of_col.size(); ++i) {
        if (height_of_col[i] > 0) cols.push_back(height_of_col[i]);
    }
    cols.push_back(new_pile);
    return Partition::from_unsorted(std::move(cols));
}

Partition iterate(const SigmaRule& rule, const Partition& p, std::int64_t moves) {
    if (moves < 0) fail(ErrorCode::BadInput, "negative move count");
    Stepper stepper(rule);
    std::vector<std::int64_t> parts = p.parts();
    for (std::int64_t i = 0; i < moves; ++i) stepper.step_inplace(parts);
    return Partition::validate(std::move(parts));
}

CycleInfo find_cycle_visit(const SigmaRule& rule, const Partition& start,
                           const std::function<void(const std::vector<std::int64_t>&)>& on_cycle_member) {
    Stepper stepper(rule);
    // Brent phase 1: cycle length.
    std::vector<std::int64_t> tortoise = start.parts();
    std::vector<std::int64_t> hare = start.parts();
    stepper.step_inplace(hare);
    std::int64_t power = 1;
    std::int64_t length = 1;
    while (tortoise != hare) {
        if (power == length) {
            tortoise = hare;
            power *= 2;
            length = 0;
        }
        stepper.step_inplace(hare);
        ++length;
    }
    // Phase 2: minimal tail. Two cursors a cycle length apart.
    tortoise = start.parts();
    hare = start.parts();
    for (std::int64_t i = 0; i < length; ++i) stepper.step_inplace(hare);
    std::int64_t tail = 0;
    while (tortoise != hare) {
        stepper.step_inplace(tortoise);
        stepper.step_inplace(hare);
        ++tail;
    }
    CycleInfo info;
    info.tail_length = tail;
    info.cycle_length = length;
    if (on_cycle_member) {
        for (std::int64_t i = 0; i < length; ++i) {
            on_cycle_member(tortoise);
            stepper.step_inplace(tortoise);
        }
    }
    return info;
}

CycleInfo find_cycle(const SigmaRule& rule, const Partition& start) {
    std::vector<Partition> cycle;
    CycleInfo info = find_cycle_visit(rule, start, [&](const std::vector<std::int64_t>& parts) {
        cycle.push_back(Partition::validate(parts));
    });
    info.cycle = std::move(cycle);
    return info;
}

namespace {

std::string encode_small(const std::vector<std::int64_t>& parts) {
    std::string key;
    key.reserve(parts.size());
    for (std::int64_t v : parts) key.push_back(static_cast<char>(v));
    return key;
}

// Collects recurrent-configuration keys for the starts of one shard.
void recurrent_shard(const SigmaRule& rule, std::int64_t n, int shard, int shards,
                     std::unordered_set<std::string>& out) {
    Stepper stepper(rule);
    // verdict: +1 recurrent, -1 transient
    std::unordered_map<std::string, int> verdict;
    std::vector<std::string> path;
    std::unordered_map<std::string, std::size_t> on_path;

    PartitionStream stream(n);
    std::vector<std::int64_t> parts;
    std::int64_t index = 0;
    while (stream.next(parts)) {
        const bool mine = (index++ % shards) == shard;
        if (!mine) continue;
        std::string key = encode_small(parts);
        if (verdict.count(key)) continue;
        path.clear();
        on_path.clear();
        std::vector<std::int64_t> cur = parts;
        while (true) {
            auto known = verdict.find(key);
            if (known != verdict.end()) {
                for (const auto& k : path) verdict.emplace(k, -1);
                break;
            }
            auto seen = on_path.find(key);
            if (seen != on_path.end()) {
                const std::size_t cut = seen->second;
                for (std::size_t i = 0; i < path.size(); ++i) {
                    verdict.emplace(path[i], i >= cut ? +1 : -1);
                    if (i >= cut) out.insert(path[i]);
                }
                break;
            }
            on_path.emplace(key, path.size());
            path.push_back(key);
            stepper.step_inplace(cur);
            key = encode_small(cur);
        }
    }
}

} // namespace

std::vector<Partition> enumerate_recurrent(const SigmaRule& rule, std::int64_t n,
                                           std::int64_t guard, int shards) {
    if (n < 0) fail(ErrorCode::BadInput, "negative n");
    if (n > guard || n > 120) {
        fail(ErrorCode::TooLarge,
             "n=" + std::to_string(n) + " above recurrent-set guard " + std::to_string(std::min<std::int64_t>(guard, 120)));
    }
    if (shards < 1) shards = 1;
    std::vector<std::unordered_set<std::string>> found(static_cast<std::size_t>(shards));
    if (shards == 1) {
        recurrent_shard(rule, n, 0, 1, found[0]);
    } else {
        std::vector<std::thread> workers;
        for (int s = 0; s < shards; ++s) {
            workers.emplace_back([&, s] { recurrent_shard(rule, n, s, shards, found[static_cast<std::size_t>(s)]); });
        }
        for (auto& w : workers) w.join();
    }
    std::unordered_set<std::string> merged;
    for (auto& f : found) merged.insert(f.begin(), f.end());

    // Canonical order: filter the enumeration stream.
    std::vector<Partition> result;
    PartitionStream stream(n);
    std::vector<std::int64_t> parts;
    while (stream.next(parts)) {
        if (merged.count(encode_small(parts))) result.push_back(Partition::validate(parts));
    }
    return result;
}

std::int64_t pile_lifetime(const SigmaRule& rule, std::int64_t h) {
    if (h < 0) fail(ErrorCode::BadInput, "negative pile size");
    require_well_behaved(rule, h);
    std::int64_t moves = 0;
    while (h > 0) {
        h = rule.sigma_bar(h);
        ++moves;
    }
    return moves;
}

std::vector<TrajectoryEntry> play_trajectory(const SigmaRule& rule, const Partition& start,
                                             std::int64_t moves, std::int64_t thin, bool diagnostics) {
    if (moves < 0 || thin < 1) fail(ErrorCode::BadInput, "bad trajectory bounds");
    std::vector<TrajectoryEntry> out;
    Stepper stepper(rule);
    stepper.set_diagnostics(diagnostics);
    std::vector<std::int64_t> parts = start.parts();
    out.push_back({0, start});
    for (std::int64_t t = 1; t <= moves; ++t) {
        stepper.step_inplace(parts);
        if (t % thin == 0 || t == moves) out.push_back({t, Partition::validate(parts)});
    }
    return out;
}

} // namespace bulgsol
