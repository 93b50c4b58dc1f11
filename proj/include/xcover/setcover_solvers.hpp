#pragma once

// Exact exponential solvers for Set Cover, Exact Cover and p-Partial Cover.
// All of them run over machine-word element bitsets.

#include "xcover/errors.hpp"
#include "xcover/instances.hpp"
#include "xcover/solve_result.hpp"

#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>

namespace xcover {

using SetCoverSolver = std::function<SolveResult(const SetCoverInstance&)>;

namespace detail {

    using Mask = std::uint32_t;

    struct MaskedSets {
        std::vector<Mask> masks;   // distinct nonempty sets
        std::vector<int> origin;   // index of the first input set with that mask
    };

    inline MaskedSets distinct_masks(const SetCoverInstance& inst)
    {
        MaskedSets out;
        std::map<Mask, int> seen;
        for (int i = 0; i < inst.m(); ++i) {
            Mask mask = 0;
            for (int e : inst.sets[i])
                mask |= Mask{1} << e;
            if (mask != 0 && seen.emplace(mask, i).second) {
                out.masks.push_back(mask);
                out.origin.push_back(i);
            }
        }
        return out;
    }

    inline void check_width(int n, const SolverLimits& limits)
    {
        if (n > limits.max_subset_bits)
            throw CapacityError("ground set of " + std::to_string(n) + " elements exceeds the DP cap of " +
                                std::to_string(limits.max_subset_bits));
    }

    /// dist[mask] = fewest sets whose union is exactly `mask`; from_* are back-pointers.
    struct UnionTable {
        static constexpr std::uint8_t unreached = std::numeric_limits<std::uint8_t>::max();
        std::vector<std::uint8_t> dist;
        std::vector<Mask> from_mask;
        std::vector<std::int32_t> from_set;
        std::uint64_t explored = 0;

        std::vector<int> trace(Mask mask, const MaskedSets& sets) const
        {
            std::vector<int> chosen;
            while (mask != 0) {
                chosen.push_back(sets.origin[from_set[mask]]);
                mask = from_mask[mask];
            }
            std::sort(chosen.begin(), chosen.end());
            return chosen;
        }
    };

    inline UnionTable union_table(int n, const MaskedSets& sets)
    {
        const std::size_t size = std::size_t{1} << n;
        UnionTable t;
        t.dist.assign(size, UnionTable::unreached);
        t.from_mask.assign(size, 0);
        t.from_set.assign(size, -1);
        t.dist[0] = 0;
        // mask | s >= mask, so increasing order is a topological order
        for (std::size_t mask = 0; mask < size; ++mask) {
            if (t.dist[mask] == UnionTable::unreached)
                continue;
            ++t.explored;
            const auto d = static_cast<std::uint8_t>(t.dist[mask] + 1);
            for (std::size_t i = 0; i < sets.masks.size(); ++i) {
                const Mask next = static_cast<Mask>(mask) | sets.masks[i];
                if (d < t.dist[next]) {
                    t.dist[next] = d;
                    t.from_mask[next] = static_cast<Mask>(mask);
                    t.from_set[next] = static_cast<std::int32_t>(i);
                }
            }
        }
        return t;
    }

} // namespace detail

/// Minimum number of sets covering [0, n), by DP over all 2^n element subsets.
inline SolveResult setcover_dp(const SetCoverInstance& inst,
                               const SolverLimits& limits = SolverLimits::from_env())
{
    detail::Stopwatch clock;
    detail::check_width(inst.n, limits);
    auto sets = detail::distinct_masks(inst);
    const detail::Mask full = inst.n == 32 ? ~detail::Mask{0} : (detail::Mask{1} << inst.n) - 1;

    SolveResult r;
    detail::Mask reach = 0;
    for (auto s : sets.masks)
        reach |= s;
    if (reach != full) {
        r.answer = Answer::infeasible;
    } else {
        auto table = detail::union_table(inst.n, sets);
        r.answer = Answer::yes;
        r.optimum = table.dist[full];
        r.certificate = table.trace(full, sets);
        r.stats.explored = table.explored;
    }
    r.stats.wall_ms = clock.elapsed_ms();
    return r;
}

/// Oracle: tries sub-collections of the distinct sets by increasing cardinality.
inline SolveResult setcover_bruteforce(const SetCoverInstance& inst,
                                       const SolverLimits& limits = SolverLimits::from_env())
{
    detail::Stopwatch clock;
    if (inst.n > 64)
        throw CapacityError("brute force supports at most 64 elements");
    std::vector<std::uint64_t> masks;
    std::vector<int> origin;
    for (int i = 0; i < inst.m(); ++i) {
        std::uint64_t mask = 0;
        for (int e : inst.sets[i])
            mask |= std::uint64_t{1} << e;
        if (mask != 0 && std::find(masks.begin(), masks.end(), mask) == masks.end()) {
            masks.push_back(mask);
            origin.push_back(i);
        }
    }
    const int m = static_cast<int>(masks.size());
    if (m > limits.max_bruteforce_sets)
        throw CapacityError("brute force supports at most " + std::to_string(limits.max_bruteforce_sets) +
                            " distinct sets");
    const std::uint64_t full = inst.n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << inst.n) - 1;

    SolveResult r;
    r.answer = Answer::infeasible;
    std::vector<int> pick;
    for (int k = 0; k <= m && !r.optimum; ++k) {
        pick.resize(k);
        for (int i = 0; i < k; ++i)
            pick[i] = i;
        while (true) {
            ++r.stats.explored;
            std::uint64_t u = 0;
            for (int i : pick)
                u |= masks[i];
            if (u == full) {
                r.answer = Answer::yes;
                r.optimum = k;
                for (int i : pick)
                    r.certificate.push_back(origin[i]);
                std::sort(r.certificate.begin(), r.certificate.end());
                break;
            }
            int i = k - 1;
            while (i >= 0 && pick[i] == m - k + i)
                --i;
            if (i < 0)
                break;
            ++pick[i];
            for (int j = i + 1; j < k; ++j)
                pick[j] = pick[j - 1] + 1;
        }
    }
    r.stats.wall_ms = clock.elapsed_ms();
    return r;
}

/// Minimum set cover by depth-first branch and bound: branch on the uncovered element
/// with the fewest covering sets, prune with a greedy upper bound and a volume lower
/// bound. No 2^n table, so it handles up to 64 elements when the search stays small.
inline SolveResult setcover_branch_and_bound(const SetCoverInstance& inst,
                                             const SolverLimits& limits = SolverLimits::from_env())
{
    detail::Stopwatch clock;
    if (inst.n > 64)
        throw CapacityError("branch and bound supports at most 64 elements");
    using Wide = std::uint64_t;
    std::vector<Wide> masks;
    std::vector<int> origin;
    {
        std::map<Wide, int> seen;
        for (int i = 0; i < inst.m(); ++i) {
            Wide mask = 0;
            for (int e : inst.sets[i])
                mask |= Wide{1} << e;
            if (mask != 0 && seen.emplace(mask, i).second) {
                masks.push_back(mask);
                origin.push_back(i);
            }
        }
    }
    const Wide full = inst.n == 64 ? ~Wide{0} : (Wide{1} << inst.n) - 1;
    SolveResult r;
    Wide reach = 0;
    int widest = 0;
    for (auto s : masks) {
        reach |= s;
        widest = std::max(widest, std::popcount(s));
    }
    if (reach != full) {
        r.answer = Answer::infeasible;
        r.stats.wall_ms = clock.elapsed_ms();
        return r;
    }
    if (inst.n == 0) {
        r.answer = Answer::yes;
        r.optimum = 0;
        r.stats.wall_ms = clock.elapsed_ms();
        return r;
    }

    std::vector<std::vector<int>> containing(inst.n);
    for (std::size_t i = 0; i < masks.size(); ++i)
        for (Wide s = masks[i]; s; s &= s - 1)
            containing[std::countr_zero(s)].push_back(static_cast<int>(i));

    // greedy incumbent
    std::vector<int> best;
    for (Wide covered = 0; covered != full;) {
        int pick = 0;
        for (std::size_t i = 1; i < masks.size(); ++i)
            if (std::popcount(masks[i] & ~covered) > std::popcount(masks[pick] & ~covered))
                pick = static_cast<int>(i);
        best.push_back(pick);
        covered |= masks[pick];
    }

    std::vector<int> chosen;
    std::function<void(Wide)> search = [&](Wide covered) {
        if (++r.stats.explored > limits.expansion_budget)
            throw BudgetExceeded("set cover search exceeded its expansion budget");
        if (covered == full) {
            if (chosen.size() < best.size())
                best = chosen;
            return;
        }
        const int left = std::popcount(full & ~covered);
        const auto lower = chosen.size() + static_cast<std::size_t>((left + widest - 1) / widest);
        if (lower >= best.size())
            return;
        int pivot = -1;
        std::size_t options = 0;
        for (Wide u = full & ~covered; u; u &= u - 1) {
            const int e = std::countr_zero(u);
            if (pivot == -1 || containing[e].size() < options) {
                pivot = e;
                options = containing[e].size();
            }
        }
        for (int i : containing[pivot]) {
            chosen.push_back(i);
            search(covered | masks[i]);
            chosen.pop_back();
            if (chosen.size() + 1 >= best.size())
                return;
        }
    };
    search(0);

    r.answer = Answer::yes;
    r.optimum = static_cast<int>(best.size());
    for (int i : best)
        r.certificate.push_back(origin[i]);
    std::sort(r.certificate.begin(), r.certificate.end());
    r.stats.wall_ms = clock.elapsed_ms();
    return r;
}

/// Fewest pairwise-disjoint sets whose union is [0, n). Each DP transition extends
/// a disjoint union by a set containing its lowest uncovered element.
inline SolveResult exactcover_solve(const SetCoverInstance& inst,
                                    const SolverLimits& limits = SolverLimits::from_env())
{
    detail::Stopwatch clock;
    detail::check_width(inst.n, limits);
    using detail::Mask;
    auto sets = detail::distinct_masks(inst);
    const Mask full = (Mask{1} << inst.n) - 1;

    std::vector<std::vector<int>> containing(inst.n);
    for (std::size_t i = 0; i < sets.masks.size(); ++i)
        for (int e = 0; e < inst.n; ++e)
            if (sets.masks[i] >> e & 1)
                containing[e].push_back(static_cast<int>(i));

    const std::size_t size = std::size_t{1} << inst.n;
    constexpr std::uint8_t unreached = 0xff;
    std::vector<std::uint8_t> dist(size, unreached);
    std::vector<std::int32_t> via(size, -1);
    dist[0] = 0;
    SolveResult r;
    for (std::size_t mask = 0; mask < full; ++mask) {
        if (dist[mask] == unreached)
            continue;
        ++r.stats.explored;
        const int e = std::countr_one(static_cast<Mask>(mask));
        for (int i : containing[e]) {
            const Mask s = sets.masks[i];
            if (s & mask)
                continue;
            const Mask next = static_cast<Mask>(mask) | s;
            if (dist[mask] + 1 < dist[next]) {
                dist[next] = static_cast<std::uint8_t>(dist[mask] + 1);
                via[next] = i;
            }
        }
    }
    if (dist[full] == unreached) {
        r.answer = Answer::infeasible;
    } else {
        r.answer = Answer::yes;
        r.optimum = dist[full];
        for (Mask mask = full; mask != 0;) {
            const int i = via[mask];
            r.certificate.push_back(sets.origin[i]);
            mask &= ~sets.masks[i];
        }
        std::sort(r.certificate.begin(), r.certificate.end());
    }
    r.stats.wall_ms = clock.elapsed_ms();
    return r;
}

/// Exact Cover by first guessing which sets larger than `delta` take part (they are
/// pairwise disjoint, so fewer than n/delta of them), then solving the residual
/// instance over the remaining elements with only the small sets.
inline SolveResult exactcover_with_large_sets(const SetCoverInstance& inst, int delta,
                                              const SolverLimits& limits = SolverLimits::from_env())
{
    detail::Stopwatch clock;
    if (delta < 1)
        throw std::invalid_argument("size threshold must be positive");
    detail::check_width(inst.n, limits);
    using detail::Mask;
    auto sets = detail::distinct_masks(inst);
    std::vector<int> large, small;
    for (std::size_t i = 0; i < sets.masks.size(); ++i)
        (std::popcount(sets.masks[i]) > delta ? large : small).push_back(static_cast<int>(i));

    SolveResult best;
    best.answer = Answer::infeasible;
    std::vector<int> guess;

    auto solve_residual = [&](Mask used) {
        // compact the uncovered elements to 0..n'-1
        std::vector<int> index(inst.n, -1);
        SetCoverInstance residual;
        residual.variant = CoverVariant::exact;
        for (int e = 0; e < inst.n; ++e)
            if (!(used >> e & 1))
                index[e] = residual.n++;
        std::vector<int> origin;
        for (int i : small) {
            if (sets.masks[i] & used)
                continue;
            std::vector<int> s;
            for (int e = 0; e < inst.n; ++e)
                if (sets.masks[i] >> e & 1)
                    s.push_back(index[e]);
            residual.sets.push_back(std::move(s));
            origin.push_back(sets.origin[i]);
        }
        auto sub = exactcover_solve(residual, limits);
        best.stats.explored += sub.stats.explored;
        if (!sub.optimum)
            return;
        const int total = static_cast<int>(guess.size()) + *sub.optimum;
        if (!best.optimum || total < *best.optimum) {
            best.answer = Answer::yes;
            best.optimum = total;
            best.certificate.clear();
            for (int i : guess)
                best.certificate.push_back(sets.origin[i]);
            for (int j : sub.certificate)
                best.certificate.push_back(origin[j]);
            std::sort(best.certificate.begin(), best.certificate.end());
        }
    };

    std::function<void(std::size_t, Mask)> choose = [&](std::size_t from, Mask used) {
        solve_residual(used);
        for (std::size_t j = from; j < large.size(); ++j) {
            const Mask s = sets.masks[large[j]];
            if (s & used)
                continue;
            guess.push_back(large[j]);
            choose(j + 1, used | s);
            guess.pop_back();
        }
    };
    choose(0, 0);
    best.stats.wall_ms = clock.elapsed_ms();
    return best;
}

/// Fewest sets whose union has at least p elements.
inline SolveResult partialcover_dp(const SetCoverInstance& inst,
                                   const SolverLimits& limits = SolverLimits::from_env())
{
    detail::Stopwatch clock;
    detail::check_width(inst.n, limits);
    if (inst.p < 0 || inst.p > inst.n)
        throw std::invalid_argument("partial cover target p outside [0, n]");
    auto sets = detail::distinct_masks(inst);
    auto table = detail::union_table(inst.n, sets);

    SolveResult r;
    r.answer = Answer::infeasible;
    std::size_t best_mask = 0;
    for (std::size_t mask = 0; mask < table.dist.size(); ++mask) {
        if (table.dist[mask] == detail::UnionTable::unreached ||
            std::popcount(static_cast<detail::Mask>(mask)) < inst.p)
            continue;
        if (!r.optimum || table.dist[mask] < *r.optimum) {
            r.optimum = table.dist[mask];
            best_mask = mask;
        }
    }
    if (r.optimum) {
        r.answer = Answer::yes;
        r.certificate = table.trace(static_cast<detail::Mask>(best_mask), sets);
    }
    r.stats.explored = table.explored;
    r.stats.wall_ms = clock.elapsed_ms();
    return r;
}

} // namespace xcover
