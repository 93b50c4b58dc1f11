#include "oracles.hpp"

#include <xcover/bounds.hpp>
#include <xcover/generators.hpp>
#include <xcover/ham_reduction.hpp>
#include <xcover/hamiltonicity.hpp>
#include <xcover/ktree_reduction.hpp>
#include <xcover/ntree_reduction.hpp>
#include <xcover/verify.hpp>

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace xcover;

namespace {

SetCoverSolver bnb()
{
    return [](const SetCoverInstance& inst) { return setcover_branch_and_bound(inst); };
}

Digraph directed_cycle(int n)
{
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        e.emplace_back(i, (i + 1) % n);
    return Digraph(n, e);
}

Digraph directed_path(int n)
{
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i)
        e.emplace_back(i, i + 1);
    return Digraph(n, e);
}

PatternTree directed_path_tree(int k)
{
    std::vector<int> parent(k);
    std::vector<EdgeDir> dir(k, EdgeDir::down);
    for (int v = 0; v < k; ++v)
        parent[v] = v - 1;
    dir[0] = EdgeDir::undirected;
    return PatternTree(parent, dir);
}

SetCoverInstance make(int n, std::vector<std::vector<int>> sets)
{
    SetCoverInstance inst;
    inst.n = n;
    inst.sets = std::move(sets);
    return inst;
}

std::vector<ProducedInstance> collect(const auto& reduction)
{
    std::vector<ProducedInstance> out;
    reduction.for_each([&](const ProducedInstance& pi) {
        out.push_back(pi);
        return true;
    });
    return out;
}

} // namespace

// ---- nTree -> Set Cover ----------------------------------------------------------

TEST(NTreeReduction, PathIntoCycle)
{
    auto g = directed_cycle(4);
    auto t = directed_path_tree(4);
    for (auto variant : {NTreeVariant::anchored, NTreeVariant::roots}) {
        auto out = solve_ntree_via_setcover(g, t, 6, bnb(), variant);
        EXPECT_TRUE(out.accepted) << variant_name(variant);
        EXPECT_EQ(out.witness_result.optimum, out.witness.target);
    }
}

TEST(NTreeReduction, OutStarIntoCycleIsRejected)
{
    PatternTree star({-1, 0, 0, 0}, {EdgeDir::undirected, EdgeDir::down, EdgeDir::down, EdgeDir::down});
    EXPECT_FALSE(oracle::tree_embeds(directed_cycle(4), star));
    EXPECT_FALSE(solve_ntree_via_setcover(directed_cycle(4), star, 6, bnb()).accepted);
}

TEST(NTreeReduction, SingleNode)
{
    EXPECT_TRUE(solve_ntree_via_setcover(Digraph(1, {}), PatternTree{}, 6, bnb()).accepted);
}

TEST(NTreeReduction, Preconditions)
{
    EXPECT_THROW(NTreeReduction(directed_cycle(4), directed_path_tree(4), 5), PreconditionError);
    EXPECT_THROW(NTreeReduction(directed_cycle(5), directed_path_tree(4), 6), PreconditionError);
    EXPECT_NO_THROW(NTreeReduction(directed_cycle(4), directed_path_tree(4), 40));   // delta above n is allowed
}

TEST(NTreeReduction, InstanceStructure)
{
    auto planted = plant_embedded_tree(7, 7, 4);
    NTreeReduction r(planted.host, planted.pattern, 6);
    EXPECT_EQ(r.l(), 3);
    EXPECT_EQ(r.target(), static_cast<int>(r.cover().subtrees.size()));
    const auto produced = collect(r);
    ASSERT_FALSE(produced.empty());
    for (const auto& pi : produced) {
        EXPECT_EQ(pi.instance.n, r.num_elements());
        EXPECT_LE(pi.instance.n, r.bounds().elements + bound_tolerance);
        std::set<std::vector<int>> distinct(pi.instance.sets.begin(), pi.instance.sets.end());
        EXPECT_EQ(distinct.size(), pi.instance.sets.size());
        for (const auto& s : pi.instance.sets)
            EXPECT_LE(static_cast<int>(s.size()), r.delta());
        // one pinned image per pinned node
        EXPECT_EQ(pi.provenance.size(), r.pinned().size());
    }
    EXPECT_LE(std::log2(static_cast<double>(produced.size())), r.bounds().log2_count);
}

TEST(NTreeReduction, DeclaredBounds)
{
    auto planted = plant_embedded_tree(6, 6, 1);
    NTreeReduction anchored(planted.host, planted.pattern, 6, NTreeVariant::anchored);
    NTreeReduction roots(planted.host, planted.pattern, 6, NTreeVariant::roots);
    EXPECT_NEAR(roots.bounds().log2_count, 9.0 * 6 / 6 * std::log2(6.0), 1e-12);
    EXPECT_NEAR(anchored.bounds().log2_count, 18.0 * 6 / 6 * std::log2(6.0), 1e-12);
    EXPECT_NEAR(anchored.bounds().elements, 6 + 9.0 * 6 / 6, 1e-12);
    EXPECT_GE(anchored.pinned().size(), roots.pinned().size());
}

// The anchored variant decides nTree exactly; the roots variant never misses a yes.
TEST(NTreeReduction, MatchesPermutationOracle)
{
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto rng = detail::make_rng(seed, 17);
        const int n = detail::uniform(rng, 4, 6);
        Digraph g;
        PatternTree t;
        if (seed % 2 == 0) {
            auto p = plant_embedded_tree(n, n, seed, 0.3);
            g = p.host;
            t = p.pattern;
        } else {
            GenParams gp;
            gp.n = n;
            gp.edge_probability = 0.5;
            gp.seed = seed;
            g = std::get<Digraph>(gen_random(InstanceKind::digraph, gp));
            gp.oriented = true;
            t = std::get<PatternTree>(gen_random(InstanceKind::tree, gp));
        }
        const bool truth = oracle::tree_embeds(g, t);
        EXPECT_EQ(solve_ntree_via_setcover(g, t, 6, bnb(), NTreeVariant::anchored).accepted, truth)
            << serialize(g) << serialize(t);
        if (truth) {
            EXPECT_TRUE(solve_ntree_via_setcover(g, t, 6, bnb(), NTreeVariant::roots).accepted);
        }
    }
}

// A minimised instance on which the roots variant accepts although no embedding exists:
// the edge from a subtree root to its tree-parent lies inside no subtree.
TEST(NTreeReduction, RootsVariantOverAcceptsWitness)
{
    auto g = parse_as<Digraph>("p digraph 5 3\n1 0\n1 2\n3 4\n");
    auto t = parse_as<PatternTree>("p tree 5\n0 2 fwd\n0 3 rev\n1 4 fwd\n3 1 rev\n");
    EXPECT_FALSE(oracle::tree_embeds(g, t));
    EXPECT_TRUE(solve_ntree_via_setcover(g, t, 6, bnb(), NTreeVariant::roots).accepted);
    EXPECT_FALSE(solve_ntree_via_setcover(g, t, 6, bnb(), NTreeVariant::anchored).accepted);
}

TEST(NTreeReduction, ParallelBatchAgreesWithSequential)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto p = plant_embedded_tree(6, 6, seed, 0.4);
        auto one = solve_ntree_via_setcover(p.host, p.pattern, 6, bnb(), NTreeVariant::anchored, 1);
        auto many = solve_ntree_via_setcover(p.host, p.pattern, 6, bnb(), NTreeVariant::anchored, 3);
        EXPECT_EQ(one.accepted, many.accepted);
        EXPECT_EQ(one.accepted_index, many.accepted_index);
    }
}

// ---- Hamiltonicity -> Set Cover ---------------------------------------------------

TEST(HamReduction, CycleOfFour)
{
    HamReduction r(directed_cycle(4), 2);
    EXPECT_EQ(r.target(), 2);
    bool found = false;
    for (const auto& pi : collect(r)) {
        if (pi.provenance == std::vector<std::pair<int, int>>{{0, 0}, {1, 2}}) {
            found = true;
            EXPECT_EQ(pi.instance.sets, (std::vector<std::vector<int>>{{0, 1}, {2, 3}}));
        }
    }
    EXPECT_TRUE(found);
    auto out = solve_ham_via_setcover(directed_cycle(4), 2, bnb());
    EXPECT_TRUE(out.accepted);
    EXPECT_TRUE(out.cover_disjoint);
}

TEST(HamReduction, PathOfFourHasNoCover)
{
    EXPECT_FALSE(solve_ham_via_setcover(directed_path(4), 2, bnb()).accepted);
}

TEST(HamReduction, PlantedAndComplete)
{
    auto planted = plant_ham_cycle(8, 3, 11);
    EXPECT_TRUE(solve_ham_via_setcover(planted.graph, 2, bnb()).accepted);
    std::vector<Edge> all;
    for (int u = 0; u < 6; ++u)
        for (int v = 0; v < 6; ++v)
            if (u != v)
                all.emplace_back(u, v);
    EXPECT_TRUE(solve_ham_via_setcover(Digraph(6, all), 3, bnb()).accepted);
}

TEST(HamReduction, Preconditions)
{
    EXPECT_THROW(HamReduction(directed_cycle(6), 4), PreconditionError);
    EXPECT_THROW(HamReduction(directed_cycle(6), 1), PreconditionError);
}

TEST(HamReduction, SetsHaveSizeDeltaAndMatchOracle)
{
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const int n = 4 + 2 * static_cast<int>(seed % 3);
        const int delta = seed % 2 == 0 ? 2 : n / 2;
        GenParams gp;
        gp.n = n;
        gp.edge_probability = 0.45;
        gp.seed = seed;
        auto g = seed % 4 == 0 ? plant_ham_cycle(n, 2, seed).graph : std::get<Digraph>(gen_random(InstanceKind::digraph, gp));
        HamReduction r(g, delta);
        std::uint64_t count = 0;
        r.for_each([&](const ProducedInstance& pi) {
            ++count;
            EXPECT_EQ(pi.instance.n, n);
            for (const auto& s : pi.instance.sets)
                EXPECT_EQ(static_cast<int>(s.size()), delta);
            return true;
        });
        EXPECT_LE(log2_count(static_cast<double>(count)), r.bounds().log2_count + bound_tolerance);
        auto out = solve_ham_via_setcover(g, delta, bnb());
        EXPECT_EQ(out.accepted, oracle::hamiltonian(g)) << serialize(g) << " delta " << delta;
        if (out.accepted) {
            EXPECT_TRUE(out.cover_disjoint);
        }
    }
}

// ---- Set Cover -> kTree ------------------------------------------------------------

TEST(HostGraph, SizeAndRoles)
{
    auto inst = make(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}, {1, 2}});
    auto b = build_host_graph(inst, 2);
    EXPECT_EQ(b.host.num_nodes(), 59);
    EXPECT_EQ(HostGraphBundle::closed_form_size(8, 5, 2), 59u);
    std::map<HostRole, int> roles;
    for (auto r : b.role)
        ++roles[r];
    EXPECT_EQ(roles[HostRole::element], 8);
    EXPECT_EQ(roles[HostRole::set], 5);
    EXPECT_EQ(roles[HostRole::group], 10);
    EXPECT_EQ(roles[HostRole::pendant], 32);
    for (auto hub : {HostRole::hub, HostRole::hub_1, HostRole::hub_2, HostRole::hub_group})
        EXPECT_EQ(roles[hub], 1);
    EXPECT_TRUE(b.host.undirected());
}

TEST(HostGraph, EdgesAsConstructed)
{
    auto inst = make(8, {{0}, {1, 2}, {3}});
    auto b = build_host_graph(inst, 2);
    // element-set incidences
    EXPECT_TRUE(b.host.has_edge(0, b.set_node(0)));
    EXPECT_TRUE(b.host.has_edge(2, b.set_node(1)));
    EXPECT_FALSE(b.host.has_edge(3, b.set_node(1)));
    // the hub sees every set node and the other hubs; r_g sees every g-subset node
    for (int i = 0; i < 3; ++i)
        EXPECT_TRUE(b.host.has_edge(b.hub(), b.set_node(i)));
    for (int j = 0; j < static_cast<int>(b.groups.size()); ++j)
        EXPECT_TRUE(b.host.has_edge(b.hub_group(), b.group_node(j)));
    for (int h : {b.hub_group(), b.hub_1(), b.hub_2()})
        EXPECT_TRUE(b.host.has_edge(b.hub(), h));
    // pendant groups 1..4 hang from r_1, r_2, r, r_g
    EXPECT_TRUE(b.host.has_edge(b.hub_1(), b.pendant_node(1, 0)));
    EXPECT_TRUE(b.host.has_edge(b.hub_2(), b.pendant_node(2, 0)));
    EXPECT_TRUE(b.host.has_edge(b.hub(), b.pendant_node(3, 0)));
    EXPECT_TRUE(b.host.has_edge(b.hub_group(), b.pendant_node(4, b.L - 1)));
}

TEST(HostGraph, RejectsLargeSets)
{
    EXPECT_THROW(build_host_graph(make(8, {{0, 1, 2}, {3}}), 2), PreconditionError);
    EXPECT_THROW(detail::build_host_graph_unchecked(make(8, {{0}}), 1), std::invalid_argument);
}

TEST(PatternTreeShape, GroupedStarOnly)
{
    auto b = build_pattern_tree(Partition{{2, 2}, 4}, 2, 4);
    EXPECT_EQ(b.shape.grouped, std::vector<int>{4});
    EXPECT_TRUE(b.shape.remainder.empty());
    EXPECT_EQ(std::count(b.role.begin(), b.role.end(), PatternRole::group_center), 1);
    EXPECT_EQ(std::count(b.role.begin(), b.role.end(), PatternRole::set_center), 0);
    EXPECT_EQ(std::count(b.role.begin(), b.role.end(), PatternRole::leaf), 4);
    const int center = static_cast<int>(std::find(b.role.begin(), b.role.end(), PatternRole::group_center) - b.role.begin());
    EXPECT_EQ(b.tree.parent(center), 1);   // hangs from r'_g
    EXPECT_EQ(b.tree.size(), PatternTreeBundle::closed_form_size(b.shape, b.L));
}

TEST(PatternTreeShape, GroupedAndRemainderStars)
{
    auto b = build_pattern_tree(Partition{{1, 1, 1}, 3}, 2, 3);
    EXPECT_EQ(b.shape.grouped, std::vector<int>{2});
    EXPECT_EQ(b.shape.remainder, std::vector<int>{1});
    const auto group_center = static_cast<int>(std::find(b.role.begin(), b.role.end(), PatternRole::group_center) - b.role.begin());
    const auto set_center = static_cast<int>(std::find(b.role.begin(), b.role.end(), PatternRole::set_center) - b.role.begin());
    EXPECT_EQ(b.tree.parent(group_center), 1);
    EXPECT_EQ(b.tree.parent(set_center), 0);   // hangs from r'
    EXPECT_EQ(b.tree.children(group_center).size(), 2u);
    EXPECT_EQ(b.tree.children(set_center).size(), 1u);
    EXPECT_EQ(b.tree.size(), 4 + 4 * b.L + 2 + 3);
}

TEST(Forcing, HoldsUnderTheSizeAssumption)
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const int n = 8 + static_cast<int>(seed % 5);
        auto inst = plant_covered_universe(n, 6, seed, n / 4).instance;
        auto b = build_host_graph(inst, 2);
        EXPECT_TRUE(check_forcing(b).holds());
        EXPECT_EQ(static_cast<std::uint64_t>(b.host.num_nodes()), HostGraphBundle::closed_form_size(n, inst.m(), 2));
    }
}

TEST(SetCoverToKTree, CraftedOptimumFour)
{
    auto inst = make(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}, {1, 2}});
    auto out = setcover_to_ktree(inst, 2, backtrack_ktree_solver());
    EXPECT_EQ(out.optimum, 4);
    EXPECT_TRUE(out.size_formulas_hold);
    auto host = build_host_graph(inst, 2);
    auto tree = build_pattern_tree(out.accepted, 2, 8);
    EXPECT_TRUE(oracle::embedding_ok(host.host, tree.tree, out.embedding));
}

TEST(SetCoverToKTree, InfeasibleInstance)
{
    auto out = setcover_to_ktree(make(8, {{0, 1}, {2, 3}}), 2, backtrack_ktree_solver());
    EXPECT_FALSE(out.optimum);
}

TEST(SetCoverToKTree, NeverExceedsTheOptimum)
{
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        auto planted = plant_covered_universe(8, 6, seed, 2);
        auto out = setcover_to_ktree(planted.instance, 2, backtrack_ktree_solver());
        ASSERT_TRUE(out.optimum);
        EXPECT_LE(*out.optimum, static_cast<int>(planted.cover.size()));
        EXPECT_EQ(out.optimum, oracle::min_sets(planted.instance, oracle::Goal::cover));
    }
}

TEST(LargeSets, FullUniverseSet)
{
    auto inst = make(8, {{0, 1, 2, 3, 4, 5, 6, 7}, {0, 1}, {2, 3}});
    auto split = setcover_preprocess_large(inst, 2);
    EXPECT_EQ(split.best_with_large, 1);
    EXPECT_EQ(split.large_sets, 1);
    auto composed = solve_setcover_via_ktree(inst, 2, backtrack_ktree_solver());
    EXPECT_EQ(composed.optimum, 1);
    EXPECT_TRUE(composed.from_large_branch);
}

TEST(LargeSets, NoLargeSetLeavesInstanceUnchanged)
{
    auto inst = make(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}});
    auto split = setcover_preprocess_large(inst, 2);
    EXPECT_EQ(split.large_sets, 0);
    EXPECT_FALSE(split.best_with_large);
    EXPECT_EQ(split.residual.sets, inst.sets);
}

TEST(LargeSets, ComposedPipelineMatchesDp)
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto rng = detail::make_rng(seed, 23);
        GenParams gp;
        gp.n = detail::uniform(rng, 1, 8);
        gp.m = detail::uniform(rng, 1, 6);
        gp.max_set_size = std::min(gp.n, 4);
        gp.seed = seed;
        auto inst = std::get<SetCoverInstance>(gen_random(InstanceKind::setcover, gp));
        auto composed = solve_setcover_via_ktree(inst, 2, backtrack_ktree_solver());
        EXPECT_EQ(composed.optimum, setcover_dp(inst).optimum) << serialize(inst);
    }
}

// ---- p-Partial Cover -> kTree -------------------------------------------------------

TEST(PartialCoverToKTree, ZeroTarget)
{
    auto inst = make(4, {{0}, {1}});
    inst.variant = CoverVariant::partial;
    inst.p = 0;
    int calls = 0;
    KTreeSolver counting = [&](const Digraph& g, const PatternTree& t) {
        ++calls;
        return tree_embed_backtrack(g, t);
    };
    EXPECT_EQ(ppc_to_ktree(inst, 2, counting).optimum, 0);
    EXPECT_EQ(calls, 0);
}

TEST(PartialCoverToKTree, FullTargetMatchesSetCover)
{
    auto inst = make(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}, {1, 2}});
    inst.variant = CoverVariant::partial;
    inst.p = 8;
    EXPECT_EQ(ppc_to_ktree(inst, 2, backtrack_ktree_solver()).optimum,
              setcover_to_ktree(inst, 2, backtrack_ktree_solver()).optimum);
}

TEST(PartialCoverToKTree, MatchesOracleAndStreamsAllPartitions)
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto rng = detail::make_rng(seed, 29);
        GenParams gp;
        gp.n = detail::uniform(rng, 1, 8);
        gp.m = detail::uniform(rng, 1, 6);
        gp.max_set_size = std::min(gp.n, 3);
        gp.seed = seed;
        auto inst = std::get<SetCoverInstance>(gen_random(InstanceKind::partialcover, gp));
        auto out = ppc_to_ktree(inst, 2, backtrack_ktree_solver());
        EXPECT_EQ(out.optimum, oracle::min_sets(inst, oracle::Goal::partial, inst.p)) << serialize(inst);
        if (inst.p > 0) {
            EXPECT_EQ(BigInt(out.ktree.partitions_enumerated), count_partitions(inst.p));
        }
    }
}
