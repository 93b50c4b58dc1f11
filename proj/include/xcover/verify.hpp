#pragma once

// Independent certificate checkers. They re-derive validity from the instance
// alone and share no code with the solvers.

#include "xcover/instances.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

namespace xcover {

/// Set indices are in range and pairwise distinct; returns the covered-element flags.
inline std::optional<std::vector<char>> covered_elements(const SetCoverInstance& inst,
                                                         std::span<const int> chosen)
{
    std::vector<char> picked(inst.sets.size(), 0), covered(inst.n, 0);
    for (int i : chosen) {
        if (i < 0 || i >= inst.m() || picked[i])
            return std::nullopt;
        picked[i] = 1;
        for (int e : inst.sets[i])
            covered[e] = 1;
    }
    return covered;
}

inline bool verify_cover(const SetCoverInstance& inst, std::span<const int> chosen)
{
    auto covered = covered_elements(inst, chosen);
    return covered && std::all_of(covered->begin(), covered->end(), [](char c) { return c; });
}

inline bool pairwise_disjoint(const SetCoverInstance& inst, std::span<const int> chosen)
{
    std::vector<int> hits(inst.n, 0);
    for (int i : chosen) {
        if (i < 0 || i >= inst.m())
            return false;
        for (int e : inst.sets[i])
            if (++hits[e] > 1)
                return false;
    }
    return true;
}

inline bool verify_exact_cover(const SetCoverInstance& inst, std::span<const int> chosen)
{
    return verify_cover(inst, chosen) && pairwise_disjoint(inst, chosen);
}

inline bool verify_partial_cover(const SetCoverInstance& inst, int p, std::span<const int> chosen)
{
    auto covered = covered_elements(inst, chosen);
    return covered && std::count(covered->begin(), covered->end(), 1) >= p;
}

/// `order` lists every node exactly once and consecutive nodes (cyclically) are joined
/// by directed edges.
inline bool verify_ham_cycle(const Digraph& g, std::span<const int> order)
{
    const int n = g.num_nodes();
    if (n < 2 || static_cast<int>(order.size()) != n)
        return false;
    std::vector<char> seen(n, 0);
    for (int v : order) {
        if (v < 0 || v >= n || seen[v])
            return false;
        seen[v] = 1;
    }
    for (int i = 0; i < n; ++i)
        if (!g.has_edge(order[i], order[(i + 1) % n]))
            return false;
    return true;
}

/// `map` is injective into V(host) and preserves every pattern edge together with its
/// orientation (orientation is ignored for undirected patterns).
inline bool verify_embedding(const Digraph& host, const PatternTree& pattern, std::span<const int> map)
{
    if (static_cast<int>(map.size()) != pattern.size())
        return false;
    std::vector<char> used(host.num_nodes(), 0);
    for (int h : map) {
        if (h < 0 || h >= host.num_nodes() || used[h])
            return false;
        used[h] = 1;
    }
    for (int v = 0; v < pattern.size(); ++v) {
        if (v == pattern.root())
            continue;
        const int a = map[pattern.parent(v)], b = map[v];
        bool ok = false;
        switch (pattern.dir(v)) {
        case EdgeDir::down: ok = host.has_edge(a, b); break;
        case EdgeDir::up: ok = host.has_edge(b, a); break;
        case EdgeDir::undirected: ok = host.has_edge(a, b) || host.has_edge(b, a); break;
        }
        if (!ok)
            return false;
    }
    return true;
}

} // namespace xcover
