#include "fixtures.hpp"

#include <hrql/gadgets.hpp>
#include <hrql/io.hpp>
#include <hrql/oracle.hpp>
#include <hrql/stability.hpp>

#include <gtest/gtest.h>

using namespace hrql;
using namespace hrql::test;

namespace {

std::vector<std::string> hospital_names(const Instance &inst, int r)
{
    std::vector<std::string> out;
    for (const auto &g : inst.residents[r].prefs)
        for (int h : g)
            out.push_back(inst.hospitals[h].name);
    return out;
}

} // namespace

TEST(Counterexample, MatchesFixture)
{
    EXPECT_EQ(serialize_instance(gen_counterexample()), serialize_instance(f1()));
}

TEST(Formula, Validation)
{
    CnfFormula ok{3, {{{1, -2, 3}}, {{-1, 2, -3}}, {{1, 2, 3}}, {{-1, -2, -3}}}};
    EXPECT_TRUE(check_formula(ok).empty());
    auto rep = ok;
    rep.clauses[0] = {{1, 1, 3}};
    EXPECT_FALSE(check_formula(rep).empty());
    CnfFormula lopsided{3, {{{1, 2, 3}}, {{1, 2, 3}}, {{1, -2, -3}}, {{-1, -2, -3}}}};
    EXPECT_FALSE(check_formula(lopsided).empty());
    EXPECT_THROW(gen_sat(lopsided), RejectedInput);
    EXPECT_THROW(random_formula(4, 1), RejectedInput);
    for (std::uint64_t s = 0; s < 20; ++s)
        EXPECT_TRUE(check_formula(random_formula(6, s)).empty());
}

TEST(SatGadget, Shape)
{
    CnfFormula f{3, {{{1, -2, 3}}, {{-1, 2, -3}}, {{1, 2, 3}}, {{-1, -2, -3}}}};
    auto g = gen_sat(f);
    EXPECT_EQ(g.inst.n(), 7 * 3);
    EXPECT_EQ(g.inst.m(), 7 * 3 + 4);
    for (int h = 0; h < g.inst.m(); ++h)
        EXPECT_EQ(static_cast<int>(g.inst.acceptors(h).size()), g.inst.lower(h)) << g.inst.hospitals[h].name;
    EXPECT_LE(g.inst.max_lower(), 3);
}

TEST(SatGadget, CertificatesBothWays)
{
    CnfFormula f{3, {{{1, -2, 3}}, {{-1, 2, -3}}, {{1, 2, 3}}, {{-1, -2, -3}}}};
    auto g = gen_sat(f);
    auto truth = brute_force_sat(f);
    ASSERT_TRUE(truth.has_value());
    auto m = g.from_assignment(*truth);
    EXPECT_TRUE(check_stability(g.inst, m).stable);
    EXPECT_EQ(g.to_assignment(m), *truth);
}

TEST(McisGadget, ColourResidentLayout)
{
    auto g = demo_colored_graph();
    auto gad = gen_mcis(g, 2);
    EXPECT_EQ(gad.inst.n(), 10);
    int r1 = gad.inst.resident_index("r1_1");
    ASSERT_GE(r1, 0);
    EXPECT_EQ(hospital_names(gad.inst, r1),
              (std::vector<std::string>{"h_v1c_v1d", "h_v1c_v2d", "h_v1c", "h_v2c_v3d", "h_v2c", "h_v3c_v3d", "h_v3c"}));
    for (int h = 0; h < gad.inst.m(); ++h)
        EXPECT_EQ(static_cast<int>(gad.inst.acceptors(h).size()), gad.inst.lower(h)) << gad.inst.hospitals[h].name;
}

TEST(McisGadget, CertificatesBothWays)
{
    auto g = demo_colored_graph();
    auto gad = gen_mcis(g, 2);
    auto chosen = brute_force_mcis(g, 2);
    ASSERT_TRUE(chosen.has_value());
    auto m = gad.from_independent_set(g, *chosen);
    EXPECT_TRUE(check_stability(gad.inst, m).stable);
    auto back = gad.to_independent_set(m);
    auto want = *chosen;
    std::sort(back.begin(), back.end());
    std::sort(want.begin(), want.end());
    EXPECT_EQ(back, want);
}

TEST(McisGadget, RejectsBadGraphs)
{
    auto g = demo_colored_graph();
    g.edges.push_back({0, 1}); // same colour
    EXPECT_THROW(gen_mcis(g, 2), RejectedInput);
    g = demo_colored_graph();
    g.edges.push_back(g.edges.front());
    EXPECT_THROW(gen_mcis(g, 2), RejectedInput);
}

TEST(CliqueGadget, Shape)
{
    auto g = demo_simple_graph();
    auto gad = gen_clique(g, 3);
    EXPECT_EQ(gad.inst.variant, Variant::ha);
    EXPECT_EQ(gad.vertex_hospital.size(), 4u);
    EXPECT_EQ(gad.edge_hospital.size(), 5u);
    EXPECT_EQ(gad.vert_select.size(), 3u);
    EXPECT_EQ(gad.edge_select.size(), 3u);
    for (int h = 0; h < gad.inst.m(); ++h)
        EXPECT_TRUE(gad.inst.hospitals[h].indifferent);
    // filling agents share one preference list
    for (int f : gad.filling)
        EXPECT_EQ(gad.inst.residents[f].prefs, gad.inst.residents[gad.filling.front()].prefs);
    EXPECT_TRUE(brute_force_clique(g, 3).has_value());
    EXPECT_FALSE(brute_force_clique(g, 4).has_value());
}

TEST(SmtiGadget, PerfectAndBlockedMarriages)
{
    // two men, two women, both men find both women acceptable
    SmtiInstance s{{{{0}, {1}}, {{0, 1}}}, {{{1}, {0}}, {{0}, {1}}}};
    auto gad = gen_smti(s);
    EXPECT_EQ(gad.inst.variant, Variant::hr_ties);
    auto partner = brute_force_complete_smti(s);
    ASSERT_TRUE(partner.has_value());
    auto m = gad.from_marriage(*partner);
    EXPECT_TRUE(check_stability(gad.inst, m).stable);
    EXPECT_EQ(gad.to_marriage(m), *partner);

    // two men who only accept the same woman: one stays single
    SmtiInstance lone{{{{0}}, {{0}}}, {{{0, 1}}}};
    EXPECT_FALSE(brute_force_complete_smti(lone).has_value());
    EXPECT_FALSE(first_stable(gen_smti(lone).inst).has_value());
}

TEST(CliqueGadget, TooFewEdgesIsNo)
{
    SimpleGraph path{{"a", "b", "c"}, {{0, 1}, {1, 2}}};
    auto gad = gen_clique(path, 3);
    EXPECT_TRUE(gad.vertex_hospital.empty());
    EXPECT_FALSE(first_stable(gad.inst).has_value());
    EXPECT_FALSE(first_stable(gen_clique(path, 4).inst).has_value());
}
