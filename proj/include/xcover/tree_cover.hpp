#pragma once

// Covering a rooted tree by small subtrees that meet only at their roots.

#include "xcover/instances.hpp"

#include <string>
#include <vector>

namespace xcover {

struct Subtree {
    int root;
    std::vector<int> nodes;   // sorted

    friend bool operator==(const Subtree&, const Subtree&) = default;
};

struct SubtreeCover {
    std::vector<Subtree> subtrees;   // in the order they were emitted
    int source_k = 0;
    int l = 0;
};

/// DFS accumulation: every node starts with the bag {u}; on each return from a child
/// v to its parent p the child's bag is merged into p's, and p's bag is emitted as a
/// subtree rooted at p when it reaches l nodes, when p is finished and already roots
/// an emitted subtree, or when p is the root and the traversal is over. Children are
/// visited in ascending id order; edge orientation is ignored.
///
/// Guarantees (for 2 <= l <= k): subtree sizes at most 2(l-1), every node covered,
/// two subtrees share at most a root, and at most 3k/(l-1) subtrees.
inline SubtreeCover tree_cover(const PatternTree& t, int l)
{
    if (l < 2)
        throw std::invalid_argument("tree_cover needs l >= 2");
    const int k = t.size();
    SubtreeCover cover;
    cover.source_k = k;
    cover.l = l;
    if (k == 1) {
        cover.subtrees.push_back({t.root(), {t.root()}});
        return cover;
    }

    std::vector<std::vector<int>> bag(k);
    for (int u = 0; u < k; ++u)
        bag[u] = {u};
    std::vector<char> in_cover(k, 0);

    auto emit = [&](int p) {
        auto nodes = bag[p];
        std::sort(nodes.begin(), nodes.end());
        for (int x : nodes)
            in_cover[x] = 1;
        cover.subtrees.push_back({p, std::move(nodes)});
    };

    // explicit DFS stack of (node, index of next child)
    std::vector<std::pair<int, std::size_t>> stack{{t.root(), 0}};
    while (!stack.empty()) {
        auto& [u, next] = stack.back();
        const auto& kids = t.children(u);
        if (next < kids.size()) {
            const int c = kids[next++];
            stack.emplace_back(c, 0);
            continue;
        }
        const int v = u;
        stack.pop_back();
        if (stack.empty())
            break;
        const int p = stack.back().first;
        const bool unvisited = stack.back().second < t.children(p).size();

        bag[p].insert(bag[p].end(), bag[v].begin(), bag[v].end());
        bag[v].clear();
        if (static_cast<int>(bag[p].size()) >= l) {
            emit(p);
            bag[p] = unvisited ? std::vector<int>{p} : std::vector<int>{};
        } else if (!unvisited && in_cover[p]) {
            emit(p);
            bag[p].clear();
        } else if (!unvisited && p == t.root()) {
            emit(p);
        }
    }
    return cover;
}

struct CoverReport {
    bool size_ok = true;        // every subtree has at most 2(l-1) nodes
    bool covers_all = true;     // union of node sets is V(T)
    bool roots_only = true;     // two subtrees intersect only in a root of one of them
    bool count_ok = true;       // |S| <= 3k/(l-1)
    bool shape_ok = true;       // each subtree is connected and its recorded root is topmost
    std::vector<std::string> problems;

    bool all() const { return size_ok && covers_all && roots_only && count_ok && shape_ok; }
};

inline CoverReport check_cover_properties(const PatternTree& t, const SubtreeCover& cover, int l)
{
    CoverReport rep;
    const int k = t.size();
    const auto& S = cover.subtrees;
    std::vector<std::vector<int>> holders(k);
    for (std::size_t i = 0; i < S.size(); ++i) {
        const auto& s = S[i];
        if (static_cast<int>(s.nodes.size()) > 2 * (l - 1)) {
            rep.size_ok = false;
            rep.problems.push_back("subtree " + std::to_string(i) + " has " + std::to_string(s.nodes.size()) +
                                   " nodes");
        }
        std::vector<char> member(k, 0);
        bool bad_node = false;
        for (int x : s.nodes) {
            if (x < 0 || x >= k) {
                bad_node = true;
                continue;
            }
            member[x] = 1;
            holders[x].push_back(static_cast<int>(i));
        }
        // connected with root `r` iff r is the only member whose parent is not a member
        int tops = 0;
        bool root_is_top = false;
        for (int x : s.nodes) {
            if (x < 0 || x >= k)
                continue;
            if (x == t.root() || !member[t.parent(x)]) {
                ++tops;
                root_is_top |= x == s.root;
            }
        }
        if (bad_node || s.nodes.empty() || tops != 1 || !root_is_top) {
            rep.shape_ok = false;
            rep.problems.push_back("subtree " + std::to_string(i) + " is not a rooted connected subtree");
        }
    }
    for (int x = 0; x < k; ++x) {
        if (holders[x].empty()) {
            rep.covers_all = false;
            rep.problems.push_back("node " + std::to_string(x) + " is uncovered");
        }
        const auto& h = holders[x];
        for (std::size_t a = 0; a < h.size(); ++a)
            for (std::size_t b = a + 1; b < h.size(); ++b)
                if (S[h[a]].root != x && S[h[b]].root != x) {
                    rep.roots_only = false;
                    rep.problems.push_back("subtrees " + std::to_string(h[a]) + " and " + std::to_string(h[b]) +
                                           " share non-root node " + std::to_string(x));
                }
    }
    if (static_cast<long long>(S.size()) * (l - 1) > 3LL * k) {
        rep.count_ok = false;
        rep.problems.push_back(std::to_string(S.size()) + " subtrees exceed 3k/(l-1)");
    }
    return rep;
}

} // namespace xcover
