#include "fixtures.hpp"
#include "random_instances.hpp"

#include <hrql/ilp.hpp>
#include <hrql/oracle.hpp>
#include <hrql/stability.hpp>

#include <gtest/gtest.h>

using namespace hrql;
using namespace hrql::test;

namespace {

Instance as_ha(Instance inst)
{
    inst.variant = Variant::ha;
    for (int h = 0; h < inst.m(); ++h) {
        auto acc = inst.acceptors(h);
        std::sort(acc.begin(), acc.end());
        inst.hospitals[h].indifferent = true;
        inst.hospitals[h].accepted = acc;
        inst.hospitals[h].prefs.clear();
    }
    return inst;
}

IlpModel one_var(std::int64_t lo, std::int64_t hi)
{
    IlpModel m;
    m.add_var("x", lo, hi, {});
    return m;
}

} // namespace

TEST(Types, DistinctAndIdenticalLists)
{
    EXPECT_EQ(resident_types(as_ha(f2())).size(), 4u);
    auto same = strict_instance({{"r1", {"h1", "h2"}}, {"r2", {"h1", "h2"}}, {"r3", {"h1", "h2"}}},
                                {{"h1", 1, std::nullopt, {}}, {"h2", 1, std::nullopt, {}}});
    auto t = resident_types(same);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0].count(), 3);
}

TEST(Naive, TinyModels)
{
    auto m = one_var(0, 2);
    m.add("a", {{0, 1}}, Rel::ge, 1);
    m.add("b", {{0, 1}}, Rel::le, 1);
    EXPECT_EQ(solve_naive(m), (std::vector<std::int64_t>{1}));

    auto bad = one_var(0, 1);
    bad.add("a", {{0, 1}}, Rel::ge, 2);
    EXPECT_FALSE(solve_naive(bad).has_value());

    EXPECT_EQ(solve_naive(IlpModel{}), std::vector<std::int64_t>{});
}

TEST(Naive, BudgetIsEnforced)
{
    // parity makes this infeasible, and bound propagation cannot see it
    IlpModel m;
    for (int i = 0; i < 12; ++i)
        m.add_var("x" + std::to_string(i), 0, 1, {});
    std::vector<IlpTerm> all;
    for (int i = 0; i < 12; ++i)
        all.push_back({i, 2});
    m.add("odd", all, Rel::eq, 13); // even left side, odd right side
    EXPECT_THROW(solve_naive(m, 50), SolverBudget);
    EXPECT_FALSE(solve_naive(m).has_value());
}

TEST(HaModel, CounterexampleIsInfeasible)
{
    auto inst = as_ha(f1());
    auto model = build_haqlu_model(inst);
    int x = 0, o = 0, y = 0;
    for (const auto &md : model.meta)
        (md.role == VarMeta::Role::x ? x : md.role == VarMeta::Role::o ? o : y)++;
    EXPECT_EQ(x, 3 * 3);
    EXPECT_EQ(o, 3);
    EXPECT_EQ(y, 3);
    EXPECT_FALSE(solve_naive(model).has_value());
    EXPECT_TRUE(enumerate_stable(inst).empty());
}

TEST(HaModel, EmptyAndSingle)
{
    Instance empty;
    empty.variant = Variant::ha;
    auto m0 = build_haqlu_model(empty);
    EXPECT_TRUE(m0.vars.empty());
    EXPECT_TRUE(solve_naive(m0).has_value());

    InstanceBuilder b(Variant::ha);
    b.add_resident("r1");
    b.add_hospital("h1", 1, 1);
    b.resident_strict(0, {0});
    auto one = b.finish();
    auto model = build_haqlu_model(one);
    auto sol = solve_naive(model);
    ASSERT_TRUE(sol.has_value());
    EXPECT_EQ(*sol, (std::vector<std::int64_t>{1, 1, 0}));
    EXPECT_EQ(decode_solution(one, model, *sol), Matching(std::vector<int>{0}));
}

TEST(HaModel, RejectsNonIndifferentHospitals)
{
    EXPECT_THROW(build_haqlu_model(f2()), WrongVariant);
}

TEST(HaModel, F2AsHa)
{
    auto inst = as_ha(f2());
    auto m = solve_haqlu_ilp(inst);
    ASSERT_TRUE(m.has_value());
    EXPECT_TRUE(check_stability(inst, *m).stable);
}

TEST(Decode, ZeroAndSingleType)
{
    auto inst = as_ha(strict_instance({{"r1", {"h1"}}, {"r2", {"h1"}}}, {{"h1", 1, std::nullopt, {}}}));
    auto model = build_haqlu_model(inst);
    std::vector<std::int64_t> zero(model.vars.size(), 0);
    EXPECT_EQ(decode_solution(inst, model, zero), Matching(2));
    auto two = zero;
    two[0] = 2;
    EXPECT_EQ(decode_solution(inst, model, two), Matching(std::vector<int>{0, 0}));
    two[0] = 3;
    EXPECT_THROW(decode_solution(inst, model, two), InternalInvariant);
}

TEST(Guesses, Counts)
{
    auto inst = as_ha(strict_instance({{"r1", {"h1"}}, {"r2", {"h1"}}}, {{"h1", 1, std::nullopt, {}}}));
    EXPECT_EQ(count_guesses(inst), 1 + 2 * 2);
    EXPECT_EQ(count_guesses(Instance{}), 1);
}

TEST(XpModel, HandPickedGuessOnF4)
{
    auto inst = f4();
    Guess g;
    g.open = {0, 1};
    g.worst = {2, 1, -1};
    g.full = {0, 1};
    auto model = build_hrqlut_model(inst, g);
    auto sol = solve_naive(model);
    ASSERT_TRUE(sol.has_value());
    EXPECT_EQ(decode_solution(inst, model, *sol), f4_final(inst));

    bool seen = false;
    enumerate_guesses(inst, [&](const Guess &x) {
        seen = seen || (x.open == g.open && x.worst == g.worst && x.full == g.full);
        return !seen;
    });
    EXPECT_TRUE(seen);
}

TEST(XpModel, NothingOpenOnCounterexample)
{
    Guess g;
    g.worst = {-1, -1, -1};
    EXPECT_FALSE(solve_naive(build_hrqlut_model(f1(), g)).has_value());
}

TEST(XpModel, MalformedGuesses)
{
    auto inst = f4();
    Guess g;
    g.open = {0};
    g.worst = {1, -1, -1}; // r2 is not acceptable to h1
    EXPECT_THROW(build_hrqlut_model(inst, g), RejectedInput);
    g.worst = {2, -1, -1};
    g.full = {1};
    EXPECT_THROW(build_hrqlut_model(inst, g), RejectedInput);
}

TEST(XpSolve, Fixtures)
{
    EXPECT_FALSE(solve_hrqlut_xp(f1()).has_value());
    auto inst = f4();
    auto m = solve_hrqlut_xp(inst);
    ASSERT_TRUE(m.has_value());
    auto stable = enumerate_stable(inst);
    EXPECT_NE(std::find(stable.begin(), stable.end(), *m), stable.end());
    auto one = strict_instance({{"r1", {"h1"}}}, {{"h1", 1, 1, {}}});
    EXPECT_EQ(solve_hrqlut_xp(one), Matching(std::vector<int>{0}));
}

TEST(Export, Format)
{
    EXPECT_EQ(export_lp(IlpModel{}), "Minimize\n obj:\nSubject To\nBounds\nEnd\n");
    auto m = one_var(0, 3);
    auto text = export_lp(m);
    EXPECT_NE(text.find("Bounds\n 0 <= x <= 3\n"), std::string::npos);
    EXPECT_NE(text.find("Generals\n x\n"), std::string::npos);

    auto ha = build_haqlu_model(as_ha(f1()));
    auto a = export_lp(ha), b = export_lp(build_haqlu_model(as_ha(f1())));
    EXPECT_EQ(a, b);
    EXPECT_NE(a.find("Binaries\n o_h1\n"), std::string::npos);
    EXPECT_NE(a.find(" c3_h1: "), std::string::npos);
}

TEST(HaModel, AgreesWithOracle)
{
    std::mt19937_64 rng(51);
    RandomSpec spec;
    spec.max_n = 6;
    spec.max_m = 3;
    spec.max_lower = 3;
    spec.indifferent = true;
    for (int i = 0; i < 100; ++i) {
        spec.resident_ties = i % 2;
        auto inst = random_instance(spec, rng);
        auto stable = enumerate_stable(inst);
        auto got = solve_haqlu_ilp(inst);
        ASSERT_EQ(got.has_value(), !stable.empty()) << "instance " << i;
        if (got)
            EXPECT_NE(std::find(stable.begin(), stable.end(), *got), stable.end());
    }
}
