#include "fixtures.hpp"
#include "random_instances.hpp"

#include <hrql/oracle.hpp>
#include <hrql/q2solver.hpp>
#include <hrql/stability.hpp>

#include <gtest/gtest.h>

using namespace hrql;
using namespace hrql::test;

namespace {

Q2Options checked()
{
    Q2Options o;
    o.check_invariants = true;
    return o;
}

} // namespace

TEST(Q2, RejectsTiesAndLargeLowerQuotas)
{
    EXPECT_THROW(solve_q2(f2()), NotApplicable);
    auto inst = f1();
    inst.variant = Variant::hr_ties;
    inst.residents[0].prefs = {{0, 1}};
    inst.hospitals[1].prefs = {{0, 1}};
    EXPECT_THROW(solve_q2(inst), WrongVariant);
}

TEST(Q2, CounterexampleIsNo)
{
    auto res = solve_q2(f1(), checked());
    EXPECT_FALSE(res.matching.has_value());
}

TEST(Q2, EmptyAndTrivialInstances)
{
    EXPECT_EQ(solve_q2(Instance{}, checked()).matching, Matching(0));
    auto one = strict_instance({{"r1", {"h1"}}}, {{"h1", 1, 1, {}}});
    EXPECT_EQ(solve_q2(one, checked()).matching, Matching(std::vector<int>{0}));
    auto lonely = strict_instance({{"r1", {"h1"}}}, {{"h1", 2, std::nullopt, {}}});
    EXPECT_EQ(solve_q2(lonely, checked()).matching, Matching(1));
}

TEST(Q2, Phase1OnF3)
{
    auto inst = f3();
    PhaseState st = normalize(inst);
    phase1a(st);
    while (phase1b(st))
        phase1a(st);
    EXPECT_EQ(st.lists(), f3_after_phase1());
    st.check_phase1_invariants();
}

TEST(Q2, RotationOnF4)
{
    auto inst = f4();
    PhaseState st = normalize(inst);
    phase1a(st);
    while (phase1b(st))
        phase1a(st);
    auto rot = find_rotation(st);
    ASSERT_TRUE(rot.has_value());
    EXPECT_EQ(format_rotation(st, *rot), "(r1,h1),(r3,r2)");
    eliminate_rotation(st, *rot);
    EXPECT_EQ(st.lists(), f4_after_rotation());
}

TEST(Q2, F4FinalMatchingAndTrace)
{
    Q2Options o = checked();
    o.trace = true;
    auto inst = f4();
    auto res = solve_q2(inst, o);
    ASSERT_TRUE(res.matching.has_value());
    EXPECT_EQ(*res.matching, f4_final(inst));
    EXPECT_NE(std::find(res.trace.begin(), res.trace.end(), "ROTATION (r1,h1),(r3,r2)"), res.trace.end());
}

TEST(Q2, TraceIsDeterministic)
{
    Q2Options o;
    o.trace = true;
    EXPECT_EQ(solve_q2(f3(), o).trace, solve_q2(f3(), o).trace);
}

TEST(Q2, AgreesWithOracleOnRandomInstances)
{
    std::mt19937_64 rng(41);
    RandomSpec spec;
    spec.max_n = 7;
    spec.max_m = 5;
    spec.max_lower = 2;
    for (int i = 0; i < 300; ++i) {
        spec.bounded_prob = (i % 3) / 2.0;
        auto inst = random_instance(spec, rng);
        auto stable = enumerate_stable(inst);
        auto got = solve_q2(inst, checked()).matching;
        ASSERT_EQ(got.has_value(), !stable.empty()) << "instance " << i;
        if (got)
            EXPECT_NE(std::find(stable.begin(), stable.end(), *got), stable.end());
    }
}

// After every elimination the lists stay symmetric and no resident of S loses its list
// on instances where a stable matching exists.
TEST(Q2, EliminationPreservesSolvability)
{
    std::mt19937_64 rng(42);
    RandomSpec spec;
    spec.max_lower = 2;
    int rotations = 0;
    for (int i = 0; i < 200; ++i) {
        auto inst = random_instance(spec, rng);
        bool solvable = first_stable(inst).has_value();
        Q2Options o = checked();
        o.observer = [&](const PhaseState &st, const char *stage) {
            if (std::string(stage) != "rotation")
                return;
            ++rotations;
            if (!solvable)
                return;
            for (int r : st.S())
                EXPECT_FALSE(st.resident_list(r).empty());
        };
        solve_q2(inst, o);
    }
    EXPECT_GT(rotations, 0);
}
