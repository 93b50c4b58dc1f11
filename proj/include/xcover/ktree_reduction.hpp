#pragma once

// Set Cover (and p-Partial Cover) -> undirected kTree.
//
// One host graph G_g per instance: the element/set incidence graph, one extra node per
// g-subset of sets (adjacent to every element any of its sets contains), four groups of
// L = ceil(2n/g) pendant nodes, and hubs r, r_g, r_1, r_2 holding everything in place.
// One pattern tree per partition α of the number of elements to cover: the same hub and
// pendant skeleton, plus one star per entry of α's grouped form. Stars built from g
// parts hang below r'_g and must land on g-subset nodes, the rest hang below r' and must
// land on set nodes; star leaves land on elements. The least |α| whose tree embeds is
// the optimum, provided every set and g-subset node has degree at most L (checked).

#include "xcover/errors.hpp"
#include "xcover/partitions.hpp"
#include "xcover/setcover_solvers.hpp"
#include "xcover/tree_embedding.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <optional>

namespace xcover {

enum class HostRole : std::uint8_t { element, set, group, pendant, hub_group, hub_1, hub_2, hub };

inline const char* role_name(HostRole r)
{
    switch (r) {
    case HostRole::element: return "N";
    case HostRole::set: return "M";
    case HostRole::group: return "M_g";
    case HostRole::pendant: return "R";
    case HostRole::hub_group: return "r_g";
    case HostRole::hub_1: return "r_1";
    case HostRole::hub_2: return "r_2";
    case HostRole::hub: return "r";
    }
    return "?";
}

/// Pendant group size ceil(n / (g/2)).
inline int pendant_group_size(int n, int g)
{
    return (2 * n + g - 1) / g;
}

inline constexpr std::uint64_t max_group_nodes = 1'000'000;

/// Binomial coefficient, saturating at max_group_nodes + 1.
inline std::uint64_t capped_binomial(int m, int g)
{
    if (g < 0 || g > m)
        return 0;
    std::uint64_t c = 1;
    for (int i = 1; i <= g; ++i) {
        c = c * static_cast<std::uint64_t>(m - g + i) / static_cast<std::uint64_t>(i);
        if (c > max_group_nodes)
            return max_group_nodes + 1;
    }
    return c;
}

struct HostGraphBundle {
    Digraph host;                              // undirected
    std::vector<HostRole> role;
    std::vector<int> pendant_group;            // 1..4 for pendant nodes, 0 otherwise
    std::vector<std::vector<int>> groups;      // set indices of each g-subset node, lexicographic
    int n = 0, m = 0, g = 0, L = 0;

    int set_node(int i) const { return n + i; }
    int group_node(int j) const { return n + m + j; }
    int pendant_node(int i, int j) const { return n + m + static_cast<int>(groups.size()) + (i - 1) * L + j; }
    int hub_group() const { return host.num_nodes() - 4; }
    int hub_1() const { return host.num_nodes() - 3; }
    int hub_2() const { return host.num_nodes() - 2; }
    int hub() const { return host.num_nodes() - 1; }

    /// 4 + 4L + C(m,g) + m + n.
    static std::uint64_t closed_form_size(int n, int m, int g)
    {
        return 4 + 4 * static_cast<std::uint64_t>(pendant_group_size(n, g)) + capped_binomial(m, g) +
               static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(n);
    }
};

/// First set with |S|·g² > threshold_total, or nullopt when every set respects the bound.
inline std::optional<int> first_large_set(const SetCoverInstance& inst, int g, int threshold_total)
{
    for (int i = 0; i < inst.m(); ++i)
        if (static_cast<long long>(inst.sets[i].size()) * g * g > threshold_total)
            return i;
    return std::nullopt;
}

namespace detail {

    inline HostGraphBundle build_host_graph_unchecked(const SetCoverInstance& inst, int g)
    {
        if (g < 2)
            throw std::invalid_argument("grouping parameter g must be at least 2");
        if (g > 4)
            throw CapacityError("g-subset nodes are only materialised for g <= 4");
        const auto combos = capped_binomial(inst.m(), g);
        if (combos > max_group_nodes)
            throw CapacityError("C(m, g) exceeds " + std::to_string(max_group_nodes) + " g-subset nodes");

        HostGraphBundle b;
        b.n = inst.n;
        b.m = inst.m();
        b.g = g;
        b.L = pendant_group_size(inst.n, g);

        if (g <= b.m) {
            std::vector<int> pick(g);
            std::iota(pick.begin(), pick.end(), 0);
            while (true) {
                b.groups.push_back(pick);
                int i = g - 1;
                while (i >= 0 && pick[i] == b.m - g + i)
                    --i;
                if (i < 0)
                    break;
                ++pick[i];
                for (int j = i + 1; j < g; ++j)
                    pick[j] = pick[j - 1] + 1;
            }
        }
        const int total = static_cast<int>(HostGraphBundle::closed_form_size(b.n, b.m, g));
        b.role.assign(total, HostRole::pendant);
        b.pendant_group.assign(total, 0);
        for (int j = 0; j < b.n; ++j)
            b.role[j] = HostRole::element;
        for (int i = 0; i < b.m; ++i)
            b.role[b.set_node(i)] = HostRole::set;
        for (std::size_t x = 0; x < b.groups.size(); ++x)
            b.role[b.group_node(static_cast<int>(x))] = HostRole::group;
        const int hubs = total - 4;
        b.role[hubs] = HostRole::hub_group;
        b.role[hubs + 1] = HostRole::hub_1;
        b.role[hubs + 2] = HostRole::hub_2;
        b.role[hubs + 3] = HostRole::hub;

        std::vector<Edge> edges;
        for (int i = 0; i < b.m; ++i)
            for (int e : inst.sets[i])
                edges.emplace_back(e, b.set_node(i));
        std::vector<char> hit(b.n);
        for (std::size_t x = 0; x < b.groups.size(); ++x) {
            std::fill(hit.begin(), hit.end(), 0);
            for (int i : b.groups[x])
                for (int e : inst.sets[i])
                    hit[e] = 1;
            for (int e = 0; e < b.n; ++e)
                if (hit[e])
                    edges.emplace_back(e, b.group_node(static_cast<int>(x)));
        }
        const int r_g = hubs, r_1 = hubs + 1, r_2 = hubs + 2, r = hubs + 3;
        for (int i = 1; i <= 4; ++i)
            for (int j = 0; j < b.L; ++j)
                b.pendant_group[b.pendant_node(i, j)] = i;
        for (std::size_t x = 0; x < b.groups.size(); ++x)
            edges.emplace_back(r_g, b.group_node(static_cast<int>(x)));
        for (int j = 0; j < b.L; ++j) {
            edges.emplace_back(r_g, b.pendant_node(4, j));
            edges.emplace_back(r_1, b.pendant_node(1, j));
            edges.emplace_back(r_2, b.pendant_node(2, j));
            edges.emplace_back(r, b.pendant_node(3, j));
        }
        edges.emplace_back(r, r_g);
        edges.emplace_back(r, r_1);
        edges.emplace_back(r, r_2);
        for (int i = 0; i < b.m; ++i)
            edges.emplace_back(r, b.set_node(i));
        b.host = Digraph(total, std::move(edges), /*undirected=*/true);
        return b;
    }

} // namespace detail

/// Builds G_g. Every set must satisfy |S|·g² <= n.
inline HostGraphBundle build_host_graph(const SetCoverInstance& inst, int g)
{
    if (g >= 2)
        if (auto big = first_large_set(inst, g, inst.n))
            throw PreconditionError("set " + std::to_string(*big) + " has more than n/g^2 elements; run "
                                    "setcover_preprocess_large first");
    return detail::build_host_graph_unchecked(inst, g);
}

enum class PatternRole : std::uint8_t { hub, hub_group, hub_1, hub_2, pendant, group_center, set_center, leaf };

struct PatternTreeBundle {
    PatternTree tree;
    std::vector<PatternRole> role;
    ShrunkPartition shape;
    int L = 0;

    /// 4 + 4L + |α_g| + (leaf total).
    static int closed_form_size(const ShrunkPartition& shape, int L)
    {
        return 4 + 4 * L + shape.length() + shape.total();
    }
};

/// Builds T_g^α for the grouped form of α. The pendant group size L comes from the
/// ground set size n, the number of star leaves from α.
inline PatternTreeBundle build_pattern_tree(const ShrunkPartition& shape, int g, int n)
{
    if (g < 1)
        throw std::invalid_argument("group size must be positive");
    PatternTreeBundle b;
    b.shape = shape;
    b.L = pendant_group_size(n, g);
    std::vector<int> parent{-1, 0, 0, 0};   // r', r'_g, r'_1, r'_2
    b.role = {PatternRole::hub, PatternRole::hub_group, PatternRole::hub_1, PatternRole::hub_2};
    const int hub_of_group[5] = {0, 2, 3, 0, 1};   // pendant group i hangs from r'_1, r'_2, r', r'_g
    for (int i = 1; i <= 4; ++i)
        for (int j = 0; j < b.L; ++j) {
            parent.push_back(hub_of_group[i]);
            b.role.push_back(PatternRole::pendant);
        }
    auto star = [&](int hang_from, int leaves, PatternRole center_role) {
        const int center = static_cast<int>(parent.size());
        parent.push_back(hang_from);
        b.role.push_back(center_role);
        for (int t = 0; t < leaves; ++t) {
            parent.push_back(center);
            b.role.push_back(PatternRole::leaf);
        }
    };
    for (int s : shape.grouped)
        star(1, s, PatternRole::group_center);
    for (int s : shape.remainder)
        star(0, s, PatternRole::set_center);
    b.tree = PatternTree(std::move(parent));
    return b;
}

inline PatternTreeBundle build_pattern_tree(const Partition& alpha, int g, int n)
{
    return build_pattern_tree(shrink_partition(alpha, g), g, n);
}

struct ForcingCheck {
    int hub_degree_floor = 0;    // L + 1: degree of r'_1 and r'_2 in every pattern
    int max_set_degree = 0;      // largest degree among set and g-subset nodes of G_g
    bool holds() const { return hub_degree_floor > max_set_degree; }
};

/// The placement argument needs every set and g-subset node to have degree below L + 1;
/// then r' can only land on r, and the stars can only land on set or g-subset nodes.
inline ForcingCheck check_forcing(const HostGraphBundle& b)
{
    ForcingCheck c;
    c.hub_degree_floor = b.L + 1;
    for (int v = 0; v < b.host.num_nodes(); ++v)
        if (b.role[v] == HostRole::set || b.role[v] == HostRole::group)
            c.max_set_degree = std::max(c.max_set_degree, static_cast<int>(b.host.neighbors(v).size()));
    return c;
}

using KTreeSolver = std::function<SolveResult(const Digraph&, const PatternTree&)>;

/// Default kTree endpoint: the backtracking embedder under an expansion budget.
inline KTreeSolver backtrack_ktree_solver(std::uint64_t budget = SolverLimits::from_env().expansion_budget)
{
    return [budget](const Digraph& g, const PatternTree& t) {
        EmbedOptions opts;
        opts.budget = budget;
        return tree_embed_backtrack(g, t, opts);
    };
}

struct KTreeOutcome {
    std::optional<int> optimum;           // nullopt: no partition accepted
    Partition accepted;                   // the accepting α
    std::vector<int> embedding;           // its tree's embedding into G_g
    std::uint64_t partitions_enumerated = 0;
    std::uint64_t partitions_tested = 0;
    std::uint64_t trees_solved = 0;       // distinct tree shapes handed to the solver
    std::uint64_t solver_explored = 0;
    int host_nodes = 0;
    int max_tree_nodes = 0;
    bool size_formulas_hold = true;       // G_g and every T_g^α matched their closed forms
};

namespace detail {

    /// Shared driver: partitions of `leaves` in ascending length, each tree shape solved once.
    inline KTreeOutcome ktree_search(const HostGraphBundle& host, int leaves, const KTreeSolver& solver,
                                     std::optional<int> max_parts)
    {
        KTreeOutcome out;
        out.host_nodes = host.host.num_nodes();
        out.size_formulas_hold =
            static_cast<std::uint64_t>(out.host_nodes) == HostGraphBundle::closed_form_size(host.n, host.m, host.g);
        const auto check = check_forcing(host);
        if (!check.holds())
            throw PreconditionError("forcing condition fails: a set node has degree " +
                                    std::to_string(check.max_set_degree) + " but pendant hubs have degree " +
                                    std::to_string(check.hub_degree_floor));

        auto partitions = all_partitions(leaves);
        out.partitions_enumerated = partitions.size();
        std::stable_sort(partitions.begin(), partitions.end(),
                         [](const Partition& a, const Partition& b) { return a.length() < b.length(); });

        std::map<std::pair<std::vector<int>, std::vector<int>>, SolveResult> seen;
        for (const auto& alpha : partitions) {
            if (max_parts && alpha.length() > *max_parts)
                break;
            ++out.partitions_tested;
            auto shape = shrink_partition(alpha, host.g);
            auto key = std::make_pair(shape.grouped, shape.remainder);
            std::sort(key.first.begin(), key.first.end());
            std::sort(key.second.begin(), key.second.end());
            auto it = seen.find(key);
            if (it == seen.end()) {
                auto tree = build_pattern_tree(shape, host.g, host.n);
                out.max_tree_nodes = std::max(out.max_tree_nodes, tree.tree.size());
                if (tree.tree.size() != PatternTreeBundle::closed_form_size(shape, tree.L))
                    out.size_formulas_hold = false;
                auto r = solver(host.host, tree.tree);
                ++out.trees_solved;
                out.solver_explored += r.stats.explored;
                it = seen.emplace(std::move(key), std::move(r)).first;
            }
            if (it->second.yes()) {
                out.optimum = alpha.length();
                out.accepted = alpha;
                out.embedding = it->second.certificate;
                break;
            }
        }
        return out;
    }

    /// Restricts every set to the elements outside `drop` and renumbers them.
    inline SetCoverInstance restrict_to_complement(const SetCoverInstance& inst, const std::vector<int>& drop)
    {
        std::vector<char> dropped(inst.n, 0);
        for (int e : drop)
            dropped[e] = 1;
        SetCoverInstance out;
        out.variant = inst.variant;
        std::vector<int> index(inst.n, -1);
        for (int e = 0; e < inst.n; ++e)
            if (!dropped[e])
                index[e] = out.n++;
        for (const auto& s : inst.sets) {
            std::vector<int> t;
            for (int e : s)
                if (index[e] >= 0)
                    t.push_back(index[e]);
            out.sets.push_back(std::move(t));
        }
        return out;
    }

} // namespace detail

/// Set Cover optimum as the least |α| whose tree embeds into G_g. Partitions longer than
/// `max_parts` are not tried.
inline KTreeOutcome setcover_to_ktree(const SetCoverInstance& inst, int g, const KTreeSolver& solver,
                                      std::optional<int> max_parts = std::nullopt)
{
    auto host = build_host_graph(inst, g);
    return detail::ktree_search(host, inst.n, solver, max_parts);
}

struct LargeSetSplit {
    std::optional<int> best_with_large;   // optimum among covers that use a large set
    std::vector<int> certificate;         // indices into the original instance
    SetCoverInstance residual;            // the instance without its large sets
    std::vector<int> residual_origin;     // residual set index -> original set index
    int large_sets = 0;
};

/// Splits off sets with |S|·g² > n: each one is tried as part of the cover, and the rest
/// of the cover is found by the subset DP on the elements it leaves uncovered.
inline LargeSetSplit setcover_preprocess_large(const SetCoverInstance& inst, int g,
                                               const SolverLimits& limits = SolverLimits::from_env())
{
    LargeSetSplit out;
    out.residual.n = inst.n;
    out.residual.variant = inst.variant;
    out.residual.p = inst.p;
    for (int i = 0; i < inst.m(); ++i) {
        if (static_cast<long long>(inst.sets[i].size()) * g * g <= inst.n) {
            out.residual.sets.push_back(inst.sets[i]);
            out.residual_origin.push_back(i);
            continue;
        }
        ++out.large_sets;
        auto rest = detail::restrict_to_complement(inst, inst.sets[i]);
        auto r = setcover_dp(rest, limits);
        if (!r.optimum)
            continue;
        if (!out.best_with_large || 1 + *r.optimum < *out.best_with_large) {
            out.best_with_large = 1 + *r.optimum;
            out.certificate = r.certificate;
            out.certificate.push_back(i);
            std::sort(out.certificate.begin(), out.certificate.end());
            out.certificate.erase(std::unique(out.certificate.begin(), out.certificate.end()),
                                  out.certificate.end());
        }
    }
    return out;
}

struct ComposedOutcome {
    std::optional<int> optimum;   // nullopt: infeasible
    bool from_large_branch = false;
    LargeSetSplit split;
    KTreeOutcome ktree;
};

/// Large-set guessing followed by the kTree reduction on what remains. The kTree side
/// only needs to look for covers strictly smaller than the best one using a large set.
inline ComposedOutcome solve_setcover_via_ktree(const SetCoverInstance& inst, int g, const KTreeSolver& solver,
                                                const SolverLimits& limits = SolverLimits::from_env())
{
    ComposedOutcome out;
    out.split = setcover_preprocess_large(inst, g, limits);
    std::optional<int> cap;
    if (out.split.best_with_large)
        cap = *out.split.best_with_large - 1;
    out.ktree = setcover_to_ktree(out.split.residual, g, solver, cap);
    out.optimum = out.ktree.optimum;
    if (out.split.best_with_large && (!out.optimum || *out.split.best_with_large < *out.optimum)) {
        out.optimum = out.split.best_with_large;
        out.from_large_branch = true;
    }
    return out;
}

/// p-Partial Cover through the same host graph, with trees over the partitions of p.
/// Sets with |S|·g² >= p are each tried as part of the cover against the partial DP on
/// the remaining elements; the kTree side only sees the small sets.
inline ComposedOutcome ppc_to_ktree(const SetCoverInstance& inst, int g, const KTreeSolver& solver,
                                    const SolverLimits& limits = SolverLimits::from_env())
{
    const int p = inst.p;
    if (p < 0 || p > inst.n)
        throw std::invalid_argument("partial cover target p outside [0, n]");
    ComposedOutcome out;
    if (p == 0) {
        out.optimum = 0;
        return out;
    }
    auto& split = out.split;
    split.residual.n = inst.n;
    split.residual.variant = CoverVariant::partial;
    split.residual.p = p;
    for (int i = 0; i < inst.m(); ++i) {
        const int size = static_cast<int>(inst.sets[i].size());
        if (static_cast<long long>(size) * g * g < p) {
            split.residual.sets.push_back(inst.sets[i]);
            split.residual_origin.push_back(i);
            continue;
        }
        ++split.large_sets;
        auto rest = detail::restrict_to_complement(inst, inst.sets[i]);
        rest.variant = CoverVariant::partial;
        rest.p = std::max(0, p - size);
        auto r = partialcover_dp(rest, limits);
        if (!r.optimum)
            continue;
        if (!split.best_with_large || 1 + *r.optimum < *split.best_with_large) {
            split.best_with_large = 1 + *r.optimum;
            split.certificate = r.certificate;
            split.certificate.push_back(i);
            std::sort(split.certificate.begin(), split.certificate.end());
            split.certificate.erase(std::unique(split.certificate.begin(), split.certificate.end()),
                                    split.certificate.end());
        }
    }
    std::optional<int> cap;
    if (split.best_with_large)
        cap = *split.best_with_large - 1;
    auto host = detail::build_host_graph_unchecked(split.residual, g);
    out.ktree = detail::ktree_search(host, p, solver, cap);
    out.optimum = out.ktree.optimum;
    if (split.best_with_large && (!out.optimum || *split.best_with_large < *out.optimum)) {
        out.optimum = split.best_with_large;
        out.from_large_branch = true;
    }
    return out;
}

} // namespace xcover
