#pragma once

// Directed nTree -> Δ-bounded Set Cover.
//
// The pattern is cut into small subtrees that share only their roots. Every injective
// guess for the images of the pinned pattern nodes produces one Set Cover instance:
// its elements are the unpinned host nodes plus one label per subtree, and each set
// describes one way of placing a subtree around the guessed images. A cover with
// exactly one set per subtree is an embedding of the whole pattern.
//
// Two variants differ in what gets pinned:
//   roots     pins only the subtree roots. The edge from a subtree root up to its
//             tree parent lies in no subtree, so it is never checked.
//   anchored  also pins the tree parent of every subtree root and rejects a guess when
//             a tree edge between two pinned nodes has no host edge. Pinned non-root
//             nodes get an incidence label inside the one subtree that contains them.

#include "xcover/errors.hpp"
#include "xcover/reduction_batch.hpp"
#include "xcover/tree_cover.hpp"
#include "xcover/tree_embedding.hpp"

#include <cmath>
#include <string_view>

namespace xcover {

enum class NTreeVariant { roots, anchored };

inline std::string_view variant_name(NTreeVariant v)
{
    return v == NTreeVariant::roots ? "roots" : "anchored";
}

inline std::optional<NTreeVariant> variant_from_name(std::string_view s)
{
    if (s == "roots")
        return NTreeVariant::roots;
    if (s == "anchored")
        return NTreeVariant::anchored;
    return std::nullopt;
}

class NTreeReduction {
public:
    NTreeReduction(Digraph host, PatternTree pattern, int delta, NTreeVariant variant = NTreeVariant::anchored)
        : g_(std::move(host)), t_(std::move(pattern)), delta_(delta), variant_(variant)
    {
        if (delta_ < 6)
            throw PreconditionError("nTree reduction needs delta >= 6 so that l = floor(delta/3) + 1 >= 2");
        if (t_.size() != g_.num_nodes())
            throw PreconditionError("nTree needs a pattern with as many nodes as the host");
        l_ = delta_ / 3 + 1;
        cover_ = tree_cover(t_, l_);
        build_pins();
        build_pieces();
    }

    const Digraph& host() const { return g_; }
    const PatternTree& pattern() const { return t_; }
    int delta() const { return delta_; }
    int l() const { return l_; }
    NTreeVariant variant() const { return variant_; }
    const SubtreeCover& cover() const { return cover_; }
    /// Pinned pattern nodes, ascending.
    const std::vector<int>& pinned() const { return pinned_; }
    int target() const { return static_cast<int>(cover_.subtrees.size()); }
    int num_roots() const { return num_roots_; }

    /// Declared caps: ñ^{9ñ/Δ} instances (ñ^{18ñ/Δ} when anchored), ñ + 9ñ/Δ elements each.
    BatchBounds bounds() const
    {
        const double n = g_.num_nodes();
        const double exponent = (variant_ == NTreeVariant::roots ? 9.0 : 18.0) * n / delta_;
        return {exponent * std::log2(n), n + 9.0 * n / delta_};
    }

    /// Element count shared by every produced instance.
    int num_elements() const
    {
        return g_.num_nodes() - static_cast<int>(pinned_.size()) + target() + num_incidences_;
    }

    BatchTally for_each(const InstanceVisitor& visit) const
    {
        BatchTally tally;
        const int n = g_.num_nodes();
        const int p = static_cast<int>(pinned_.size());
        std::vector<int> image(p, -1);
        std::vector<char> used(n, 0);
        bool stop = false;

        std::function<void(int)> guess = [&](int i) {
            if (stop)
                return;
            if (i == p) {
                auto produced = build(image);
                tally.record(produced.instance);
                stop = !visit(produced);
                return;
            }
            for (int v = 0; v < n && !stop; ++v) {
                if (used[v])
                    continue;
                image[i] = v;
                if (!pinned_edges_ok(i, image)) {
                    ++tally.discarded;
                    continue;
                }
                used[v] = 1;
                guess(i + 1);
                used[v] = 0;
            }
            image[i] = -1;
        };
        guess(0);
        return tally;
    }

private:
    struct Piece {
        PatternTree local;                 // the subtree with nodes renumbered 0..|s|-1
        std::vector<int> global;           // local id -> pattern node
        std::vector<int> pin_slot;         // local id -> index into pinned_, or -1
        std::vector<int> incidence;        // element ids of incidence labels carried by this piece
    };

    void build_pins()
    {
        const int k = t_.size();
        std::vector<char> pin(k, 0), root(k, 0);
        for (const auto& s : cover_.subtrees)
            root[s.root] = pin[s.root] = 1;
        if (variant_ == NTreeVariant::anchored)
            for (const auto& s : cover_.subtrees)
                if (s.root != t_.root())
                    pin[t_.parent(s.root)] = 1;
        slot_.assign(k, -1);
        for (int u = 0; u < k; ++u)
            if (pin[u]) {
                slot_[u] = static_cast<int>(pinned_.size());
                pinned_.push_back(u);
            }
        num_roots_ = static_cast<int>(std::count(root.begin(), root.end(), 1));

        // tree edges between pinned nodes, checked when the later endpoint is guessed
        pinned_edges_.assign(pinned_.size(), {});
        for (int c = 0; c < k; ++c) {
            if (c == t_.root() || slot_[c] < 0 || slot_[t_.parent(c)] < 0)
                continue;
            const int a = slot_[t_.parent(c)], b = slot_[c];
            pinned_edges_[std::max(a, b)].push_back(c);
        }
    }

    void build_pieces()
    {
        const int n = g_.num_nodes();
        const int unpinned = n - static_cast<int>(pinned_.size());
        int next_incidence = unpinned + target();
        for (const auto& s : cover_.subtrees) {
            Piece piece;
            piece.global = s.nodes;
            std::vector<int> parent(s.nodes.size(), -1);
            std::vector<EdgeDir> dir(s.nodes.size(), EdgeDir::undirected);
            auto local_of = [&](int u) {
                return static_cast<int>(std::lower_bound(s.nodes.begin(), s.nodes.end(), u) - s.nodes.begin());
            };
            for (std::size_t j = 0; j < s.nodes.size(); ++j) {
                const int u = s.nodes[j];
                if (u == s.root)
                    continue;
                parent[j] = local_of(t_.parent(u));
                dir[j] = t_.dir(u);
            }
            piece.local = PatternTree(std::move(parent), std::move(dir));
            piece.pin_slot.assign(s.nodes.size(), -1);
            for (std::size_t j = 0; j < s.nodes.size(); ++j) {
                const int u = s.nodes[j];
                piece.pin_slot[j] = slot_[u];
                if (slot_[u] >= 0 && u != s.root)
                    piece.incidence.push_back(next_incidence++);
            }
            pieces_.push_back(std::move(piece));
        }
        num_incidences_ = next_incidence - unpinned - target();
    }

    bool pinned_edges_ok(int i, const std::vector<int>& image) const
    {
        if (variant_ != NTreeVariant::anchored)
            return true;
        for (int c : pinned_edges_[i])
            if (!edge_realised(g_, t_.dir(c), image[slot_[t_.parent(c)]], image[slot_[c]]))
                return false;
        return true;
    }

    ProducedInstance build(const std::vector<int>& image) const
    {
        const int n = g_.num_nodes();
        std::vector<char> taken(n, 0);
        for (int v : image)
            taken[v] = 1;
        std::vector<int> element(n, -1);
        int next = 0;
        for (int v = 0; v < n; ++v)
            if (!taken[v])
                element[v] = next++;

        ProducedInstance out;
        out.target = target();
        out.instance.n = num_elements();
        out.instance.variant = CoverVariant::plain;
        out.instance.delta = delta_;
        for (std::size_t i = 0; i < pinned_.size(); ++i)
            out.provenance.emplace_back(pinned_[i], image[i]);

        for (std::size_t si = 0; si < pieces_.size(); ++si) {
            const auto& piece = pieces_[si];
            const int label = next + static_cast<int>(si);
            EmbedOptions opts;
            opts.pins.assign(piece.global.size(), -1);
            for (std::size_t j = 0; j < piece.global.size(); ++j)
                if (piece.pin_slot[j] >= 0)
                    opts.pins[j] = image[piece.pin_slot[j]];
            opts.forbidden = taken;
            for (std::size_t j = 0; j < piece.global.size(); ++j)
                if (piece.pin_slot[j] >= 0)
                    opts.forbidden[image[piece.pin_slot[j]]] = 0;
            for_each_embedding(
                g_, piece.local, opts,
                [&](std::span<const int> map) {
                    std::vector<int> set{label};
                    for (std::size_t j = 0; j < map.size(); ++j)
                        if (piece.pin_slot[j] < 0)
                            set.push_back(element[map[j]]);
                    set.insert(set.end(), piece.incidence.begin(), piece.incidence.end());
                    out.instance.sets.push_back(std::move(set));
                    return true;
                },
                /*distinct_images=*/true);
        }
        dedup_sets(out.instance);
        return out;
    }

    Digraph g_;
    PatternTree t_;
    int delta_;
    NTreeVariant variant_;
    int l_ = 0;
    SubtreeCover cover_;
    std::vector<int> pinned_, slot_;
    int num_roots_ = 0;
    int num_incidences_ = 0;
    std::vector<std::vector<int>> pinned_edges_;   // by pinned slot: child nodes of edges to check
    std::vector<Piece> pieces_;
};

/// Decides nTree by running the reduction and asking `solver` whether some produced
/// instance has a cover of exactly its target size.
inline BatchOutcome solve_ntree_via_setcover(const Digraph& host, const PatternTree& pattern, int delta,
                                             const SetCoverSolver& solver,
                                             NTreeVariant variant = NTreeVariant::anchored, int jobs = 1)
{
    NTreeReduction reduction(host, pattern, delta, variant);
    return solve_batch(reduction, solver, jobs);
}

} // namespace xcover
