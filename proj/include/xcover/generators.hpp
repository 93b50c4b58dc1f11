#pragma once

// Seeded random and planted-yes instance generators. Every generator is a pure
// function of its parameters and seed.

#include "xcover/instances.hpp"

#include <numeric>
#include <random>
#include <set>

namespace xcover {

struct GenParams {
    int n = 0;                      // elements, host nodes, or tree size
    int m = 0;                      // number of sets (cover kinds)
    int max_set_size = 0;           // 0 means n
    int p = -1;                     // partialcover target, -1 draws uniformly from [0, n]
    double edge_probability = 0.5;  // digraph / graph
    bool distinct = false;          // cover kinds: all sets pairwise distinct and nonempty
    bool oriented = false;          // tree: random fwd/rev orientation per edge
    std::uint64_t seed = 0;
};

namespace detail {

    inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        return std::mt19937_64(seq);
    }

    inline int uniform(std::mt19937_64& rng, int lo, int hi)
    {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    }

    inline std::vector<int> random_subset(std::mt19937_64& rng, int n, int size)
    {
        std::vector<int> pool(n);
        std::iota(pool.begin(), pool.end(), 0);
        for (int i = 0; i < size; ++i)
            std::swap(pool[i], pool[uniform(rng, i, n - 1)]);
        pool.resize(size);
        std::sort(pool.begin(), pool.end());
        return pool;
    }

    inline double binomial(int n, int k)
    {
        if (k < 0 || k > n)
            return 0.0;
        double r = 1.0;
        for (int i = 1; i <= k; ++i)
            r = r * (n - k + i) / i;
        return r;
    }

    inline PatternTree random_tree(std::mt19937_64& rng, int k, bool oriented)
    {
        // random recursive tree, then a random relabelling so the root is not always 0
        std::vector<int> label(k);
        std::iota(label.begin(), label.end(), 0);
        std::shuffle(label.begin(), label.end(), rng);
        std::vector<int> parent(k, -1);
        std::vector<EdgeDir> dir(k, EdgeDir::undirected);
        for (int i = 1; i < k; ++i) {
            int p = uniform(rng, 0, i - 1);
            parent[label[i]] = label[p];
            if (oriented)
                dir[label[i]] = uniform(rng, 0, 1) ? EdgeDir::down : EdgeDir::up;
        }
        return PatternTree(std::move(parent), std::move(dir));
    }

} // namespace detail

inline Instance gen_random(InstanceKind kind, const GenParams& params)
{
    auto rng = detail::make_rng(params.seed);
    switch (kind) {
    case InstanceKind::setcover:
    case InstanceKind::exactcover:
    case InstanceKind::partialcover: {
        const int n = params.n;
        const int cap = params.max_set_size > 0 ? params.max_set_size : n;
        if (n < 0 || params.m < 0 || cap > n)
            throw std::invalid_argument("inconsistent set cover parameters");
        if (params.m > 0 && n == 0 && params.distinct)
            throw std::invalid_argument("no nonempty sets over an empty universe");
        if (params.distinct) {
            double available = 0;
            for (int s = 1; s <= cap; ++s)
                available += detail::binomial(n, s);
            if (params.m > available)
                throw std::invalid_argument("universe too small for " + std::to_string(params.m) +
                                            " distinct sets");
        }
        SetCoverInstance inst;
        inst.n = n;
        inst.variant = kind == InstanceKind::setcover     ? CoverVariant::plain
                       : kind == InstanceKind::exactcover ? CoverVariant::exact
                                                          : CoverVariant::partial;
        std::set<std::vector<int>> seen;
        while (inst.m() < params.m) {
            int size = n == 0 ? 0 : detail::uniform(rng, 1, cap);
            auto s = detail::random_subset(rng, n, size);
            if (params.distinct && !seen.insert(s).second)
                continue;
            inst.sets.push_back(std::move(s));
        }
        if (inst.variant == CoverVariant::partial)
            inst.p = params.p >= 0 ? std::min(params.p, n) : detail::uniform(rng, 0, n);
        inst.canonicalize();
        return inst;
    }
    case InstanceKind::digraph:
    case InstanceKind::graph: {
        const bool undirected = kind == InstanceKind::graph;
        std::bernoulli_distribution coin(params.edge_probability);
        std::vector<Edge> edges;
        for (int u = 0; u < params.n; ++u)
            for (int v = undirected ? u + 1 : 0; v < params.n; ++v)
                if (u != v && coin(rng))
                    edges.emplace_back(u, v);
        return Digraph(params.n, std::move(edges), undirected);
    }
    case InstanceKind::tree:
        if (params.n < 1)
            throw std::invalid_argument("tree needs at least one node");
        return detail::random_tree(rng, params.n, params.oriented);
    }
    throw std::invalid_argument("unknown kind");
}

struct PlantedHam {
    Digraph graph;
    std::vector<int> cycle;   // node order; consecutive nodes (cyclically) are joined by edges
};

struct PlantedTree {
    Digraph host;
    PatternTree pattern;
    std::vector<int> embedding;   // pattern node -> host node
};

struct PlantedCover {
    SetCoverInstance instance;
    std::vector<int> cover;   // indices of a covering sub-collection
};

inline PlantedHam plant_ham_cycle(int n, int extra_edges, std::uint64_t seed)
{
    if (n < 2)
        throw std::invalid_argument("a Hamiltonian cycle needs at least two nodes");
    auto rng = detail::make_rng(seed, 1);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::set<Edge> edges;
    for (int i = 0; i < n; ++i)
        edges.emplace(order[i], order[(i + 1) % n]);
    const long long room = static_cast<long long>(n) * (n - 1) - static_cast<long long>(edges.size());
    long long want = std::min<long long>(std::max(extra_edges, 0), room);
    while (want > 0) {
        int u = detail::uniform(rng, 0, n - 1), v = detail::uniform(rng, 0, n - 1);
        if (u != v && edges.emplace(u, v).second)
            --want;
    }
    // rotate the witness so it starts at node 0
    std::rotate(order.begin(), std::find(order.begin(), order.end(), 0), order.end());
    return {Digraph(n, {edges.begin(), edges.end()}), order};
}

inline PlantedTree plant_embedded_tree(int k, int host_n, std::uint64_t seed, double noise = 0.2,
                                       bool oriented = true)
{
    if (k < 1 || host_n < k)
        throw std::invalid_argument("need 1 <= k <= host_n");
    auto rng = detail::make_rng(seed, 2);
    auto tree = detail::random_tree(rng, k, oriented);
    std::vector<int> image(host_n);
    std::iota(image.begin(), image.end(), 0);
    std::shuffle(image.begin(), image.end(), rng);
    image.resize(k);

    std::set<Edge> edges;
    for (int v = 0; v < k; ++v) {
        if (v == tree.root())
            continue;
        int a = image[tree.parent(v)], b = image[v];
        switch (tree.dir(v)) {
        case EdgeDir::down: edges.emplace(a, b); break;
        case EdgeDir::up: edges.emplace(b, a); break;
        case EdgeDir::undirected:
            detail::uniform(rng, 0, 1) ? edges.emplace(a, b) : edges.emplace(b, a);
            break;
        }
    }
    std::bernoulli_distribution coin(noise);
    for (int u = 0; u < host_n; ++u)
        for (int v = 0; v < host_n; ++v)
            if (u != v && coin(rng))
                edges.emplace(u, v);
    return {Digraph(host_n, {edges.begin(), edges.end()}), std::move(tree), std::move(image)};
}

inline PlantedCover plant_covered_universe(int n, int m, std::uint64_t seed, int max_set_size = 0)
{
    const int cap = max_set_size > 0 ? max_set_size : n;
    if (m < 1 || cap > n || static_cast<long long>(m) * cap < n)
        throw std::invalid_argument("cannot cover the universe with these parameters");
    auto rng = detail::make_rng(seed, 3);
    std::vector<std::vector<int>> sets(m);
    std::vector<int> elements(n);
    std::iota(elements.begin(), elements.end(), 0);
    std::shuffle(elements.begin(), elements.end(), rng);
    for (int e : elements) {
        int s;
        do
            s = detail::uniform(rng, 0, m - 1);
        while (static_cast<int>(sets[s].size()) >= cap);
        sets[s].push_back(e);
    }
    // top up each set with a few extra random elements
    for (auto& s : sets) {
        int extra = detail::uniform(rng, 0, cap - static_cast<int>(s.size()));
        for (int t = 0; t < extra; ++t) {
            int e = detail::uniform(rng, 0, n - 1);
            if (std::find(s.begin(), s.end(), e) == s.end())
                s.push_back(e);
        }
        if (s.empty() && n > 0)
            s.push_back(detail::uniform(rng, 0, n - 1));
    }
    SetCoverInstance inst;
    inst.n = n;
    inst.sets = std::move(sets);
    inst.canonicalize();
    std::vector<int> cover(m);
    std::iota(cover.begin(), cover.end(), 0);
    return {std::move(inst), std::move(cover)};
}

} // namespace xcover
