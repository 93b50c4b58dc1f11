#pragma once

// Brute-force reference answers for small inputs. Each oracle works from raw
// edge lists and set lists only, so it shares no search code with the library.

#include <xcover/instances.hpp>

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using xcover::Digraph;
using xcover::EdgeDir;
using xcover::PatternTree;
using xcover::SetCoverInstance;

inline std::set<std::pair<int, int>> arc_set(const Digraph& g)
{
    std::set<std::pair<int, int>> arcs;
    for (auto [u, v] : g.edges()) {
        arcs.insert({u, v});
        if (g.undirected())
            arcs.insert({v, u});
    }
    return arcs;
}

/// Checks an embedding map against the raw arc set.
inline bool embedding_ok(const Digraph& g, const PatternTree& t, const std::vector<int>& h)
{
    if (static_cast<int>(h.size()) != t.size())
        return false;
    std::set<int> used(h.begin(), h.end());
    if (static_cast<int>(used.size()) != t.size())
        return false;
    const auto arcs = arc_set(g);
    for (int v = 0; v < t.size(); ++v) {
        if (h[v] < 0 || h[v] >= g.num_nodes())
            return false;
        if (v == t.root())
            continue;
        const int a = h[t.parent(v)], b = h[v];
        const bool fwd = arcs.count({a, b}) > 0, rev = arcs.count({b, a}) > 0;
        const bool ok = t.dir(v) == EdgeDir::down ? fwd : t.dir(v) == EdgeDir::up ? rev : (fwd || rev);
        if (!ok)
            return false;
    }
    return true;
}

/// Tries every injective map V(T) -> V(G) by permuting host nodes.
inline bool tree_embeds(const Digraph& g, const PatternTree& t)
{
    const int k = t.size(), n = g.num_nodes();
    if (k > n)
        return false;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<int> h(perm.begin(), perm.begin() + k);
        if (embedding_ok(g, t, h))
            return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

/// Directed Hamiltonian cycle by permuting nodes 1..n-1 after node 0.
inline bool hamiltonian(const Digraph& g)
{
    const int n = g.num_nodes();
    if (n < 2)
        return false;
    const auto arcs = arc_set(g);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    do {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            ok = arcs.count({order[i], order[(i + 1) % n]}) > 0;
        if (ok)
            return true;
    } while (std::next_permutation(order.begin() + 1, order.end()));
    return false;
}

enum class Goal { cover, exact, partial };

/// Least number of sets meeting the goal, trying sub-collections by increasing size.
inline std::optional<int> min_sets(const SetCoverInstance& inst, Goal goal, int p = 0)
{
    const int m = inst.m();
    for (int size = 0; size <= m; ++size) {
        std::vector<bool> pick(m, false);
        std::fill(pick.end() - size, pick.end(), true);
        do {
            std::vector<int> hits(inst.n, 0);
            for (int i = 0; i < m; ++i)
                if (pick[i])
                    for (int e : inst.sets[i])
                        ++hits[e];
            const int covered = static_cast<int>(std::count_if(hits.begin(), hits.end(), [](int c) { return c > 0; }));
            bool ok = false;
            switch (goal) {
            case Goal::cover: ok = covered == inst.n; break;
            case Goal::exact:
                ok = covered == inst.n && std::all_of(hits.begin(), hits.end(), [](int c) { return c == 1; });
                break;
            case Goal::partial: ok = covered >= p; break;
            }
            if (ok)
                return size;
        } while (std::next_permutation(pick.begin(), pick.end()));
    }
    return std::nullopt;
}

/// Every non-increasing sequence of positive integers summing to a.
inline std::vector<std::vector<int>> partitions(int a)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int left, int cap) -> void {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int x = std::min(left, cap); x >= 1; --x) {
            cur.push_back(x);
            self(self, left - x, x);
            cur.pop_back();
        }
    };
    rec(rec, a, a);
    return out;
}

} // namespace oracle
