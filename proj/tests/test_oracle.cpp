#include "fixtures.hpp"

#include <hrql/oracle.hpp>
#include <hrql/stability.hpp>

#include <gtest/gtest.h>

using namespace hrql;
using namespace hrql::test;

TEST(Oracle, CounterexampleHasFourFeasibleAndNoStable)
{
    auto inst = f1();
    EXPECT_EQ(enumerate_feasible(inst).size(), 4u);
    EXPECT_TRUE(enumerate_stable(inst).empty());
    EXPECT_FALSE(first_stable(inst).has_value());
}

TEST(Oracle, TwoStableMatchings)
{
    auto inst = f2();
    auto s = enumerate_stable(inst);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_NE(std::find(s.begin(), s.end(), f2_m1(inst)), s.end());
    EXPECT_NE(std::find(s.begin(), s.end(), f2_m2(inst)), s.end());
}

TEST(Oracle, StableSetMatchesFilteredFeasibleSet)
{
    for (const auto &inst : {f1(), f2(), f3(), f4()}) {
        std::vector<Matching> filtered;
        for (const auto &m : enumerate_feasible(inst))
            if (check_stability(inst, m).stable)
                filtered.push_back(m);
        EXPECT_EQ(filtered, enumerate_stable(inst));
    }
}

TEST(Oracle, CapOverflowThrows)
{
    auto inst = f2();
    EXPECT_THROW(enumerate_feasible(inst, 1), EnumerationOverflow);
    EXPECT_THROW(enumerate_stable(inst, 1), EnumerationOverflow);
}

TEST(Oracle, EmptyInstance)
{
    Instance inst;
    auto all = enumerate_feasible(inst);
    ASSERT_EQ(all.size(), 1u);
    EXPECT_EQ(enumerate_stable(inst).size(), 1u);
}

TEST(Rural, LiteralTwoHospitalExampleHasOneStableMatching)
{
    // r1, r2 both h1 > h2, l=u=2: (h2,{r1,r2}) is blocked by the coalition for h1
    auto inst = strict_instance({{"r1", {"h1", "h2"}}, {"r2", {"h1", "h2"}}}, {{"h1", 2, 2, {}}, {"h2", 2, 2, {}}});
    EXPECT_EQ(rural_check(inst).stable_count, 1);
}

TEST(Rural, CorrectedTwoHospitalExample)
{
    auto inst = strict_instance({{"r1", {"h1", "h2"}}, {"r2", {"h2", "h1"}}}, {{"h1", 2, 2, {}}, {"h2", 2, 2, {}}});
    auto rep = rural_check(inst);
    EXPECT_EQ(rep.stable_count, 2);
    EXPECT_TRUE(rep.matched_set_uniform);
    EXPECT_TRUE(rep.open_count_uniform);
    EXPECT_EQ(rep.open_counts, (std::vector<int>{1, 1}));
}

TEST(Rural, F2IsNotUniform)
{
    // lower quota 4 breaks the property
    auto rep = rural_check(f2());
    EXPECT_FALSE(rep.matched_set_uniform);
    EXPECT_FALSE(rep.open_count_uniform);
}
