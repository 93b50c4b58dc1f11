#include "oracles.hpp"

#include <xcover/partitions.hpp>

#include <gtest/gtest.h>

#include <set>

using namespace xcover;

TEST(PartitionStream, SingletonAndEmpty)
{
    auto one = all_partitions(1);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].parts, std::vector<int>{1});

    auto zero = all_partitions(0);
    ASSERT_EQ(zero.size(), 1u);
    EXPECT_TRUE(zero[0].parts.empty());
    EXPECT_THROW(PartitionStream(-1), std::invalid_argument);
}

TEST(PartitionStream, DescendingLexicographicOrder)
{
    std::vector<std::vector<int>> got;
    for (const auto& p : all_partitions(5))
        got.push_back(p.parts);
    const std::vector<std::vector<int>> expected{{5},       {4, 1},       {3, 2},         {3, 1, 1},
                                                 {2, 2, 1}, {2, 1, 1, 1}, {1, 1, 1, 1, 1}};
    EXPECT_EQ(got, expected);
}

TEST(PartitionCount, SmallValuesMatchEnumerator)
{
    EXPECT_EQ(count_partitions(5), 7);
    EXPECT_EQ(count_partitions(10), 42);
    EXPECT_EQ(oracle::partitions(5).size(), 7u);
    EXPECT_EQ(oracle::partitions(10).size(), 42u);
}

TEST(PartitionCount, LargeValuesAreExact)
{
    EXPECT_EQ(count_partitions(100), BigInt(190569292));
    EXPECT_EQ(count_partitions(200).str(), "3972999029388");
}

TEST(PartitionCount, AsymptoticRatioTendsToOne)
{
    const double r100 = count_partitions(100).convert_to<double>() / partition_asymptotic(100);
    EXPECT_GT(r100, 0.5);
    EXPECT_LT(r100, 1.5);
    const double r10 = count_partitions(10).convert_to<double>() / partition_asymptotic(10);
    const double r200 = count_partitions(200).convert_to<double>() / partition_asymptotic(200);
    EXPECT_LT(std::abs(1 - r100), std::abs(1 - r10));
    EXPECT_LT(std::abs(1 - r200), std::abs(1 - r100));
}

// Materialised stream: distinct, correct mass, matches both the count and the oracle.
TEST(PartitionStream, MatchesOracleUpTo30)
{
    for (int a = 1; a <= 30; ++a) {
        std::set<std::vector<int>> seen;
        PartitionStream s(a);
        while (s.next()) {
            auto parts = s.parts();
            std::vector<int> v(parts.begin(), parts.end());
            EXPECT_TRUE(std::is_sorted(v.rbegin(), v.rend()));
            EXPECT_EQ(std::accumulate(v.begin(), v.end(), 0), a);
            EXPECT_TRUE(seen.insert(v).second);
        }
        EXPECT_EQ(BigInt(seen.size()), count_partitions(a)) << a;
        if (a <= 20) {
            auto ref = oracle::partitions(a);
            EXPECT_EQ(seen, std::set<std::vector<int>>(ref.begin(), ref.end()));
        }
    }
}

TEST(Shrink, Examples)
{
    auto s = shrink_partition(Partition{{4, 3, 2, 1}, 10}, 2);
    EXPECT_EQ(s.grouped, (std::vector<int>{7, 3}));
    EXPECT_TRUE(s.remainder.empty());

    s = shrink_partition(Partition{{4, 3, 2}, 9}, 2);
    EXPECT_EQ(s.grouped, std::vector<int>{7});
    EXPECT_EQ(s.remainder, std::vector<int>{2});

    s = shrink_partition(Partition{{5}, 5}, 3);
    EXPECT_TRUE(s.grouped.empty());
    EXPECT_EQ(s.remainder, std::vector<int>{5});
}

TEST(Shrink, PreservesMassAndLengthBound)
{
    for (int a = 1; a <= 16; ++a)
        for (const auto& p : all_partitions(a))
            for (int g = 1; g <= a; ++g) {
                auto s = shrink_partition(p, g);
                EXPECT_EQ(s.total(), a);
                EXPECT_LT(static_cast<int>(s.remainder.size()), g);
                EXPECT_LE(static_cast<double>(s.length()), static_cast<double>(a) / g + g);
            }
}
