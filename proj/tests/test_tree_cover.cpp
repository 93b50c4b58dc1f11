#include <xcover/generators.hpp>
#include <xcover/tree_cover.hpp>

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace xcover;

namespace {

// Independent restatement of the four guarantees, used next to check_cover_properties.
bool guarantees_hold(const PatternTree& t, const SubtreeCover& c, int l)
{
    const int k = t.size();
    if (c.subtrees.size() * static_cast<double>(l - 1) > 3.0 * k)
        return false;
    std::vector<int> owners(k, 0);
    for (const auto& s : c.subtrees) {
        if (static_cast<int>(s.nodes.size()) > 2 * (l - 1) && !(k == 1 && s.nodes.size() == 1))
            return false;
        std::set<int> members(s.nodes.begin(), s.nodes.end());
        if (!members.count(s.root))
            return false;
        for (int v : s.nodes) {
            ++owners[v];
            // connected with topmost node s.root: every non-root member's parent is a member
            if (v != s.root && !members.count(t.parent(v)))
                return false;
        }
    }
    if (std::count(owners.begin(), owners.end(), 0) > 0)
        return false;
    // a node in two subtrees must be the root of all but at most one of them
    for (int v = 0; v < k; ++v) {
        int as_member = 0;
        for (const auto& s : c.subtrees)
            if (s.root != v && std::binary_search(s.nodes.begin(), s.nodes.end(), v))
                ++as_member;
        if (owners[v] > 1 && as_member > 1)
            return false;
    }
    return true;
}

} // namespace

TEST(TreeCover, PathExample)
{
    // r - a - b - c rooted at r, with r = 0, a = 1, b = 2, c = 3
    PatternTree path({-1, 0, 1, 2});
    auto c = tree_cover(path, 2);
    ASSERT_EQ(c.subtrees.size(), 2u);
    EXPECT_EQ(c.subtrees[0], (Subtree{2, {2, 3}}));
    EXPECT_EQ(c.subtrees[1], (Subtree{0, {0, 1}}));
    EXPECT_TRUE(check_cover_properties(path, c, 2).all());
}

TEST(TreeCover, StarExample)
{
    PatternTree star({-1, 0, 0, 0});
    auto c = tree_cover(star, 3);
    ASSERT_EQ(c.subtrees.size(), 2u);
    EXPECT_EQ(c.subtrees[0], (Subtree{0, {0, 1, 2}}));
    EXPECT_EQ(c.subtrees[1], (Subtree{0, {0, 3}}));
    EXPECT_TRUE(check_cover_properties(star, c, 3).all());
}

TEST(TreeCover, LEqualsKGivesOneSubtree)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        GenParams gp;
        gp.n = 2 + static_cast<int>(seed % 12);
        gp.seed = seed;
        auto t = std::get<PatternTree>(gen_random(InstanceKind::tree, gp));
        auto c = tree_cover(t, t.size());
        ASSERT_EQ(c.subtrees.size(), 1u);
        EXPECT_EQ(static_cast<int>(c.subtrees[0].nodes.size()), t.size());
        EXPECT_EQ(c.subtrees[0].root, t.root());
    }
}

TEST(TreeCover, RejectsSmallL)
{
    EXPECT_THROW(tree_cover(PatternTree({-1, 0}), 1), std::invalid_argument);
}

TEST(TreeCover, SingleNode)
{
    auto c = tree_cover(PatternTree{}, 2);
    ASSERT_EQ(c.subtrees.size(), 1u);
    EXPECT_EQ(c.subtrees[0], (Subtree{0, {0}}));
}

TEST(CoverChecker, FlagsOversizedSubtree)
{
    PatternTree path({-1, 0, 1, 2});
    SubtreeCover c{{{0, {0, 1, 2, 3}}}, 4, 2};   // 4 > 2(l-1) = 2, and 2l-1 = 3 nodes would also fail
    auto r = check_cover_properties(path, c, 2);
    EXPECT_FALSE(r.size_ok);
    EXPECT_FALSE(r.all());
    EXPECT_FALSE(r.problems.empty());

    SubtreeCover three{{{0, {0, 1, 2}}, {2, {2, 3}}}, 4, 2};   // exactly 2l-1 nodes
    EXPECT_FALSE(check_cover_properties(path, three, 2).size_ok);
}

TEST(CoverChecker, FlagsMissingLeaf)
{
    PatternTree star({-1, 0, 0, 0});
    SubtreeCover c{{{0, {0, 1, 2}}}, 4, 3};
    auto r = check_cover_properties(star, c, 3);
    EXPECT_FALSE(r.covers_all);
    EXPECT_TRUE(r.size_ok);
}

TEST(CoverChecker, FlagsNonRootOverlapAndDisconnection)
{
    PatternTree path({-1, 0, 1, 2});
    SubtreeCover overlap{{{0, {0, 1, 2}}, {1, {1, 2, 3}}}, 4, 3};   // node 2 is a non-root member of both
    EXPECT_FALSE(check_cover_properties(path, overlap, 3).roots_only);

    SubtreeCover gap{{{0, {0, 2}}, {1, {1, 3}}}, 4, 3};
    EXPECT_FALSE(check_cover_properties(path, gap, 3).shape_ok);
}

TEST(CoverChecker, FlagsTooManySubtrees)
{
    PatternTree path({-1, 0, 1, 2});
    SubtreeCover many{{{0, {0}}, {0, {0, 1}}, {1, {1, 2}}, {2, {2, 3}}, {3, {3}}, {0, {0}}, {0, {0}}}, 4, 3};
    EXPECT_FALSE(check_cover_properties(path, many, 3).count_ok);   // 7 > 3*4/2
}

// Random trees of every shape class: the library checker and the independent restatement agree it holds.
TEST(TreeCover, GuaranteesOnRandomTrees)
{
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        auto rng = detail::make_rng(seed, 3);
        const int k = detail::uniform(rng, 2, 120);
        const int l = detail::uniform(rng, 2, k);
        GenParams gp;
        gp.n = k;
        gp.oriented = seed % 2 == 0;
        gp.seed = seed;
        auto t = std::get<PatternTree>(gen_random(InstanceKind::tree, gp));
        auto c = tree_cover(t, l);
        auto rep = check_cover_properties(t, c, l);
        EXPECT_TRUE(rep.all()) << "k=" << k << " l=" << l << " " << serialize(t);
        EXPECT_TRUE(guarantees_hold(t, c, l)) << "k=" << k << " l=" << l << " " << serialize(t);
    }
}

TEST(TreeCover, SubtreeRootsAreNeverInnerMembersOfOtherSubtrees)
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        GenParams gp;
        gp.n = 3 + static_cast<int>(seed % 60);
        gp.seed = seed;
        auto t = std::get<PatternTree>(gen_random(InstanceKind::tree, gp));
        const int l = 2 + static_cast<int>(seed % 5);
        if (l > t.size())
            continue;
        auto c = tree_cover(t, l);
        std::set<int> roots;
        for (const auto& s : c.subtrees)
            roots.insert(s.root);
        for (const auto& s : c.subtrees)
            for (int v : s.nodes)
                if (v != s.root) {
                    EXPECT_EQ(roots.count(v), 0u) << serialize(t);
                }
    }
}

// Caterpillars and brooms push the subtree-size bound to its edge.
TEST(TreeCover, ExtremalShapes)
{
    for (int k = 4; k <= 60; k += 7) {
        std::vector<int> broom(k), caterpillar(k);
        broom[0] = caterpillar[0] = -1;
        for (int v = 1; v < k; ++v) {
            broom[v] = v < k / 2 ? v - 1 : k / 2 - 1;
            caterpillar[v] = v % 2 == 1 ? std::max(0, v - 2) : v - 1;
        }
        for (const auto& parents : {broom, caterpillar}) {
            PatternTree t(parents);
            for (int l = 2; l <= k; l += 3) {
                auto c = tree_cover(t, l);
                EXPECT_TRUE(check_cover_properties(t, c, l).all());
                EXPECT_TRUE(guarantees_hold(t, c, l));
            }
        }
    }
}
