#pragma once

// Injective, orientation-respecting embedding of a pattern tree into a host graph
// by backtracking.
//
// Pattern nodes are placed in BFS order from a start node (the first pinned node,
// otherwise the pattern root), so each node is placed next to the image of an
// already placed neighbour. Candidates are pruned by degree, and siblings whose
// pin-free subtrees are isomorphic get increasing images. In decision mode,
// unpinned leaves are not searched at all: they are assigned by an incrementally
// maintained bipartite matching against the free neighbours of their parent's image.

#include "xcover/errors.hpp"
#include "xcover/instances.hpp"
#include "xcover/solve_result.hpp"

#include <functional>
#include <map>
#include <span>

namespace xcover {

struct EmbedOptions {
    std::vector<int> pins;         // pattern node -> host node, -1 for free; empty means no pins
    std::vector<char> forbidden;   // host nodes that free pattern nodes must avoid; may be empty
    std::uint64_t budget = 100'000'000;
};

namespace detail {

    enum class Rel : std::uint8_t { out, in, any };   // how the next image relates to the anchor image

    class TreeMatcher {
    public:
        using Visitor = std::function<bool(std::span<const int>)>;

        TreeMatcher(const Digraph& host, const PatternTree& pattern, const EmbedOptions& opts,
                    bool defer_leaves, bool break_symmetry)
            : g_(host), t_(pattern), k_(pattern.size()), n_(host.num_nodes()), budget_(opts.budget),
              defer_(defer_leaves)
        {
            pins_ = opts.pins.empty() ? std::vector<int>(k_, -1) : opts.pins;
            if (static_cast<int>(pins_.size()) != k_)
                throw std::invalid_argument("pin array must have one entry per pattern node");
            forbidden_ = opts.forbidden.empty() ? std::vector<char>(n_, 0) : opts.forbidden;
            if (static_cast<int>(forbidden_.size()) != n_)
                throw std::invalid_argument("forbidden array must have one entry per host node");
            reserved_.assign(n_, -1);
            for (int u = 0; u < k_; ++u) {
                const int v = pins_[u];
                if (v == -1)
                    continue;
                if (v < 0 || v >= n_)
                    throw std::invalid_argument("pin target out of range");
                if (reserved_[v] != -1)
                    throw std::invalid_argument("pins are not injective");
                if (forbidden_[v])
                    throw std::invalid_argument("pin target is forbidden");
                reserved_[v] = u;
            }
            build_order(break_symmetry);
            image_.assign(k_, -1);
            owner_.assign(n_, -1);
            leaf_at_.assign(n_, -1);
            stamp_.assign(n_, 0);
        }

        /// Calls `visit` with each embedding found; stops when it returns false.
        void run(const Visitor& visit)
        {
            visit_ = &visit;
            if (k_ > n_)
                return;
            place(0);
        }

        std::uint64_t expansions() const { return expansions_; }

    private:
        struct Link {
            int node;
            Rel rel;   // relation of node's image as seen from the owner's image
        };

        static Rel flip(Rel r) { return r == Rel::out ? Rel::in : r == Rel::in ? Rel::out : Rel::any; }

        std::span<const int> candidates_from(int v, Rel rel) const
        {
            switch (rel) {
            case Rel::out: return g_.out_neighbors(v);
            case Rel::in: return g_.in_neighbors(v);
            case Rel::any: return g_.neighbors(v);
            }
            return {};
        }

        void build_order(bool break_symmetry)
        {
            links_.assign(k_, {});
            need_out_.assign(k_, 0);
            need_in_.assign(k_, 0);
            for (int c = 0; c < k_; ++c) {
                if (c == t_.root())
                    continue;
                const int p = t_.parent(c);
                Rel down = Rel::any;
                if (t_.dir(c) == EdgeDir::down)
                    down = Rel::out;
                else if (t_.dir(c) == EdgeDir::up)
                    down = Rel::in;
                links_[p].push_back({c, down});
                links_[c].push_back({p, flip(down)});
            }
            for (int u = 0; u < k_; ++u)
                for (auto [w, rel] : links_[u]) {
                    need_out_[u] += rel == Rel::out;
                    need_in_[u] += rel == Rel::in;
                }

            start_ = t_.root();
            for (int u = 0; u < k_; ++u)
                if (pins_[u] != -1) {
                    start_ = u;
                    break;
                }

            // BFS tree from the start node
            anchor_.assign(k_, -1);
            rel_.assign(k_, Rel::any);
            std::vector<std::vector<int>> kids(k_);
            std::vector<int> bfs{start_};
            std::vector<char> seen(k_, 0);
            seen[start_] = 1;
            for (std::size_t i = 0; i < bfs.size(); ++i) {
                const int u = bfs[i];
                for (auto [w, rel] : links_[u]) {
                    if (seen[w])
                        continue;
                    seen[w] = 1;
                    anchor_[w] = u;
                    rel_[w] = rel;
                    kids[u].push_back(w);
                    bfs.push_back(w);
                }
            }

            // canonical classes of BFS-rooted subtrees, bottom-up
            std::vector<int> cls(k_, 0);
            std::vector<char> pinned_below(k_, 0);
            std::map<std::vector<int>, int> intern;
            for (auto it = bfs.rbegin(); it != bfs.rend(); ++it) {
                const int u = *it;
                std::vector<int> key{static_cast<int>(rel_[u])};
                std::vector<int> sub;
                pinned_below[u] = pins_[u] != -1;
                for (int w : kids[u]) {
                    sub.push_back(cls[w]);
                    pinned_below[u] |= pinned_below[w];
                }
                std::sort(sub.begin(), sub.end());
                key.insert(key.end(), sub.begin(), sub.end());
                cls[u] = intern.emplace(std::move(key), static_cast<int>(intern.size())).first->second;
            }

            deferred_.assign(k_, {});
            is_deferred_.assign(k_, 0);
            sym_prev_.assign(k_, -1);
            children_count_.assign(k_, 0);
            std::vector<int> queue{start_};
            for (std::size_t i = 0; i < queue.size(); ++i) {
                const int u = queue[i];
                order_.push_back(u);
                auto& ch = kids[u];
                children_count_[u] = static_cast<int>(ch.size());
                std::sort(ch.begin(), ch.end(), [&](int a, int b) {
                    if (t_.degree(a) != t_.degree(b))
                        return t_.degree(a) > t_.degree(b);
                    if (cls[a] != cls[b])
                        return cls[a] < cls[b];
                    return a < b;
                });
                int prev = -1;
                for (int w : ch) {
                    if (defer_ && t_.degree(w) == 1 && pins_[w] == -1) {
                        is_deferred_[w] = 1;
                        deferred_[u].push_back(w);
                        continue;
                    }
                    if (break_symmetry && prev != -1 && cls[prev] == cls[w] && !pinned_below[prev] &&
                        !pinned_below[w])
                        sym_prev_[w] = prev;
                    prev = w;
                    queue.push_back(w);
                }
            }
        }

        bool admissible(int u, int v) const
        {
            if (owner_[v] != -1 || forbidden_[v])
                return false;
            if (pins_[u] != -1)
                return pins_[u] == v;
            if (reserved_[v] != -1)
                return false;
            if (static_cast<int>(g_.neighbors(v).size()) < t_.degree(u) ||
                static_cast<int>(g_.out_neighbors(v).size()) < need_out_[u] ||
                static_cast<int>(g_.in_neighbors(v).size()) < need_in_[u])
                return false;
            if (sym_prev_[u] != -1 && v < image_[sym_prev_[u]])
                return false;
            return true;
        }

        bool leaf_can_use(int v) const
        {
            return owner_[v] == -1 && !forbidden_[v] && reserved_[v] == -1;
        }

        // Kuhn augmenting path for a deferred leaf
        bool augment(int leaf)
        {
            for (int v : candidates_from(image_[anchor_[leaf]], rel_[leaf])) {
                if (stamp_[v] == epoch_ || !leaf_can_use(v))
                    continue;
                stamp_[v] = epoch_;
                if (leaf_at_[v] == -1 || augment(leaf_at_[v])) {
                    leaf_at_[v] = leaf;
                    image_[leaf] = v;
                    return true;
                }
            }
            return false;
        }

        bool try_match(int leaf)
        {
            ++epoch_;
            return augment(leaf);
        }

        bool forward_ok(int u, int v) const
        {
            int free = 0;
            const int need = children_count_[u];
            if (need == 0)
                return true;
            for (int w : g_.neighbors(v))
                if (owner_[w] == -1 && !forbidden_[w] && ++free >= need)
                    return true;
            return false;
        }

        bool emit()
        {
            return (*visit_)(std::span<const int>(image_));
        }

        // returns false when the visitor asked to stop
        bool place(std::size_t i)
        {
            if (i == order_.size())
                return emit();
            const int u = order_[i];
            std::span<const int> cands;
            std::vector<int> everything;
            if (u == start_) {
                if (pins_[u] != -1) {
                    everything.push_back(pins_[u]);
                } else {
                    everything.resize(n_);
                    for (int v = 0; v < n_; ++v)
                        everything[v] = v;
                }
                cands = everything;
            } else {
                cands = candidates_from(image_[anchor_[u]], rel_[u]);
            }

            for (int v : cands) {
                if (!admissible(u, v))
                    continue;
                if (++expansions_ > budget_)
                    throw BudgetExceeded("tree embedding exceeded " + std::to_string(budget_) +
                                         " expansions");
                image_[u] = v;
                owner_[v] = u;
                bool ok = forward_ok(u, v);

                std::vector<int> saved_leaf_at, saved_image;
                if (ok && defer_) {
                    saved_leaf_at = leaf_at_;
                    saved_image = image_;
                    if (int evicted = leaf_at_[v]; evicted != -1) {
                        leaf_at_[v] = -1;
                        image_[evicted] = -1;
                        ok = try_match(evicted);
                    }
                    for (std::size_t j = 0; ok && j < deferred_[u].size(); ++j)
                        ok = try_match(deferred_[u][j]);
                }
                bool keep_going = true;
                if (ok)
                    keep_going = place(i + 1);
                if (defer_ && !saved_leaf_at.empty()) {
                    leaf_at_ = std::move(saved_leaf_at);
                    image_ = std::move(saved_image);
                }
                owner_[v] = -1;
                image_[u] = -1;
                if (!keep_going)
                    return false;
            }
            return true;
        }

        const Digraph& g_;
        const PatternTree& t_;
        int k_, n_;
        std::uint64_t budget_;
        bool defer_;
        std::vector<int> pins_;
        std::vector<char> forbidden_;
        std::vector<int> reserved_;   // host node -> pattern node pinned there

        std::vector<std::vector<Link>> links_;
        std::vector<int> need_out_, need_in_;
        int start_ = 0;
        std::vector<int> order_, anchor_, sym_prev_, children_count_;
        std::vector<Rel> rel_;
        std::vector<std::vector<int>> deferred_;
        std::vector<char> is_deferred_;

        std::vector<int> image_, owner_, leaf_at_;
        std::vector<std::uint32_t> stamp_;
        std::uint32_t epoch_ = 0;
        std::uint64_t expansions_ = 0;
        const Visitor* visit_ = nullptr;
    };

} // namespace detail

/// Decides whether `pattern` embeds into `host` under the pins and forbidden set.
/// The certificate is the image of every pattern node.
inline SolveResult tree_embed_backtrack(const Digraph& host, const PatternTree& pattern,
                                        const EmbedOptions& opts = {})
{
    detail::Stopwatch clock;
    detail::TreeMatcher matcher(host, pattern, opts, /*defer_leaves=*/true, /*break_symmetry=*/true);
    SolveResult r;
    r.answer = Answer::no;
    matcher.run([&](std::span<const int> map) {
        r.answer = Answer::yes;
        r.certificate.assign(map.begin(), map.end());
        return false;
    });
    r.stats.explored = matcher.expansions();
    r.stats.wall_ms = clock.elapsed_ms();
    return r;
}

/// Visits embeddings until `visit` returns false. With `distinct_images`, embeddings
/// that differ only by swapping isomorphic pin-free sibling subtrees are skipped, so
/// every image set is still reported at least once. Returns the number of expansions.
inline std::uint64_t for_each_embedding(const Digraph& host, const PatternTree& pattern,
                                        const EmbedOptions& opts,
                                        const std::function<bool(std::span<const int>)>& visit,
                                        bool distinct_images = false)
{
    detail::TreeMatcher matcher(host, pattern, opts, /*defer_leaves=*/false, distinct_images);
    matcher.run(visit);
    return matcher.expansions();
}

} // namespace xcover
