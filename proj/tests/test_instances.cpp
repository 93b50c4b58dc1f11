#include <xcover/generators.hpp>
#include <xcover/instances.hpp>
#include <xcover/verify.hpp>

#include <gtest/gtest.h>

#include <numeric>

using namespace xcover;

namespace {

int error_line(const std::string& text)
{
    try {
        parse_instance(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

} // namespace

TEST(Parse, SetCoverRecords)
{
    auto inst = parse_as<SetCoverInstance>("p setcover 3 2\n0 1\n1 2\n");
    EXPECT_EQ(inst.n, 3);
    ASSERT_EQ(inst.m(), 2);
    EXPECT_EQ(inst.sets[0], (std::vector<int>{0, 1}));
    EXPECT_EQ(inst.sets[1], (std::vector<int>{1, 2}));
    EXPECT_EQ(inst.variant, CoverVariant::plain);
}

TEST(Parse, SingleNodeTree)
{
    auto t = parse_as<PatternTree>("p tree 1\n");
    EXPECT_EQ(t.size(), 1);
    EXPECT_EQ(t.root(), 0);
    EXPECT_FALSE(t.oriented());
}

TEST(Parse, AntiParallelPairIsTwoEdges)
{
    auto g = parse_as<Digraph>("p digraph 2 2\n0 1\n1 0\n");
    EXPECT_EQ(g.num_edges(), 2);
    EXPECT_TRUE(g.has_edge(0, 1));
    EXPECT_TRUE(g.has_edge(1, 0));
}

TEST(Parse, OrientedTreeEdges)
{
    auto t = parse_as<PatternTree>("p tree 3\n0 1 fwd\n0 2 rev\n");
    EXPECT_TRUE(t.oriented());
    EXPECT_EQ(t.dir(1), EdgeDir::down);
    EXPECT_EQ(t.dir(2), EdgeDir::up);
}

TEST(Parse, CommentsAndUndirectedGraphs)
{
    auto g = parse_as<Digraph>("c a triangle\np graph 3 3\n0 1\n1 2\nc between edges\n2 0\n");
    EXPECT_TRUE(g.undirected());
    EXPECT_TRUE(g.has_edge(2, 1));
    EXPECT_TRUE(g.has_edge(0, 2));
}

TEST(Parse, ErrorsCarryLineNumbers)
{
    EXPECT_EQ(error_line("p setcover 2 1\n0 9\n"), 2);              // element out of range
    EXPECT_EQ(error_line("p digraph 3 2\n0 1\n0 1\n"), 3);          // duplicate edge
    EXPECT_EQ(error_line("p digraph 3 1\n1 1\n"), 2);               // self-loop
    EXPECT_EQ(error_line("p bogus 3\n"), 1);                        // unknown header
    EXPECT_EQ(error_line("c comment\np tree 3\n0 1\n1 0\n"), 4);    // not a tree
    EXPECT_EQ(error_line("p tree 3\n0 1 fwd\n0 2\n"), 3);           // mixed orientation
    EXPECT_GE(error_line("p setcover 2 3\n0\n1\n"), 1);             // too few sets
}

TEST(Parse, ExactAndPartialHeaders)
{
    auto exact = parse_as<SetCoverInstance>(serialize(SetCoverInstance{4, {{0, 1}, {2, 3}}, CoverVariant::exact, 0, {}}));
    EXPECT_EQ(exact.variant, CoverVariant::exact);
    SetCoverInstance partial{4, {{0}, {1, 2}}, CoverVariant::partial, 3, {}};
    auto back = parse_as<SetCoverInstance>(serialize(partial));
    EXPECT_EQ(back.variant, CoverVariant::partial);
    EXPECT_EQ(back.p, 3);
}

TEST(Serialize, CanonicalSetOrder)
{
    SetCoverInstance inst;
    inst.n = 3;
    inst.sets = {{1, 2}, {0, 1}};
    inst.canonicalize();
    EXPECT_EQ(serialize(inst), "p setcover 3 2\n0 1\n1 2\n");
}

TEST(Serialize, DegenerateValues)
{
    EXPECT_EQ(serialize(PatternTree{}), "p tree 1\n");
    EXPECT_EQ(serialize(Digraph(2, {})), "p digraph 2 0\n");
}

TEST(Serialize, RoundTripsGeneratedValues)
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        for (auto kind : {InstanceKind::setcover, InstanceKind::exactcover, InstanceKind::partialcover,
                          InstanceKind::digraph, InstanceKind::graph, InstanceKind::tree}) {
            GenParams gp;
            gp.n = 1 + static_cast<int>(seed % 9);
            gp.m = static_cast<int>(seed % 6);
            gp.oriented = seed % 2 == 1;
            gp.seed = seed;
            const auto value = gen_random(kind, gp);
            const auto text = serialize(value);
            EXPECT_EQ(serialize(parse_instance(text)), text) << text;
            EXPECT_EQ(parse_instance(text), value);
        }
    }
}

TEST(Generators, DeterministicForFixedSeed)
{
    GenParams gp;
    gp.n = 6;
    gp.m = 4;
    gp.max_set_size = 2;
    gp.seed = 7;
    EXPECT_EQ(serialize(gen_random(InstanceKind::setcover, gp)), serialize(gen_random(InstanceKind::setcover, gp)));
    auto inst = std::get<SetCoverInstance>(gen_random(InstanceKind::setcover, gp));
    EXPECT_EQ(inst.m(), 4);
    for (const auto& s : inst.sets)
        EXPECT_LE(s.size(), 2u);
    gp.seed = 8;
    EXPECT_NO_THROW(gen_random(InstanceKind::setcover, gp));
}

TEST(Generators, TreeShape)
{
    GenParams gp;
    gp.n = 5;
    gp.seed = 1;
    auto t = std::get<PatternTree>(gen_random(InstanceKind::tree, gp));
    EXPECT_EQ(t.size(), 5);
    int non_roots = 0;
    for (int v = 0; v < 5; ++v)
        non_roots += t.parent(v) >= 0;
    EXPECT_EQ(non_roots, 4);
}

TEST(Generators, DigraphEdgeCountWithinOrderedPairs)
{
    GenParams gp;
    gp.n = 8;
    gp.edge_probability = 0.5;
    gp.seed = 3;
    auto g = std::get<Digraph>(gen_random(InstanceKind::digraph, gp));
    EXPECT_GE(g.num_edges(), 0);
    EXPECT_LE(g.num_edges(), 56);
}

TEST(Generators, DistinctSetsRejectedWhenImpossible)
{
    GenParams gp;
    gp.n = 2;
    gp.m = 4;   // only 3 distinct nonempty subsets of a 2-element universe
    gp.distinct = true;
    EXPECT_THROW(gen_random(InstanceKind::setcover, gp), std::invalid_argument);
}

TEST(Planted, WitnessesVerify)
{
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        auto ham = plant_ham_cycle(6, 4, seed);
        EXPECT_TRUE(verify_ham_cycle(ham.graph, ham.cycle));
        auto tree = plant_embedded_tree(4, 7, seed);
        EXPECT_TRUE(verify_embedding(tree.host, tree.pattern, tree.embedding));
        auto cover = plant_covered_universe(8, 5, seed);
        EXPECT_TRUE(verify_cover(cover.instance, cover.cover));
    }
}

TEST(Planted, SpecificSeeds)
{
    auto ham = plant_ham_cycle(6, 4, 2);
    EXPECT_EQ(ham.cycle.size(), 6u);
    EXPECT_TRUE(verify_ham_cycle(ham.graph, ham.cycle));
    auto tree = plant_embedded_tree(4, 7, 5);
    EXPECT_TRUE(verify_embedding(tree.host, tree.pattern, tree.embedding));
    auto cover = plant_covered_universe(8, 5, 9);
    std::vector<int> all(cover.instance.m());
    std::iota(all.begin(), all.end(), 0);
    EXPECT_TRUE(verify_cover(cover.instance, all));
}
