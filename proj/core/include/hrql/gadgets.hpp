#pragma once

#include <hrql/instance.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hrql {

// The three-resident, three-hospital cycle with lower quota two and no stable matching.
Instance gen_counterexample();

// Literals are +v / -v for variable v in 1..q.
struct CnfFormula {
    int q = 0;
    std::vector<std::array<int, 3>> clauses;
};

// Empty when every variable occurs exactly twice positively and twice negatively
// and no clause repeats a literal.
std::vector<std::string> check_formula(const CnfFormula &f);

// A random legal formula; q must be a multiple of 3.
CnfFormula random_formula(int q, std::uint64_t seed);

struct SatGadget {
    Instance inst;
    CnfFormula formula;
    // hospital / resident indices per variable
    std::vector<int> r, rbar, d1, d2, sstar, s1, s2;
    std::vector<int> h, hbar, hstar, hbarstar, p1, p2, p3;
    std::vector<int> clause_hospital;

    Matching from_assignment(const std::vector<bool> &truth) const;
    std::vector<bool> to_assignment(const Matching &m) const;
};

SatGadget gen_sat(const CnfFormula &f);
std::optional<std::vector<bool>> brute_force_sat(const CnfFormula &f);

struct ColoredGraph {
    std::vector<std::string> names;           // vertex names
    std::vector<int> color;                   // per vertex, 0..k-1
    std::vector<std::pair<int, int>> edges;   // input order matters for list layout
    std::optional<int> p;                     // every vertex has exactly p neighbours
    std::optional<int> q;                     // every colour has exactly q vertices
};

ColoredGraph demo_colored_graph();

struct McisGadget {
    Instance inst;
    std::vector<int> vertex_hospital; // per vertex
    std::vector<int> edge_hospital;   // per edge

    Matching from_independent_set(const ColoredGraph &g, const std::vector<int> &chosen) const;
    std::vector<int> to_independent_set(const Matching &m) const; // vertices with open hospitals
};

McisGadget gen_mcis(const ColoredGraph &g, int k);
std::optional<std::vector<int>> brute_force_mcis(const ColoredGraph &g, int k);

struct SimpleGraph {
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> edges;
};

SimpleGraph demo_simple_graph();

struct CliqueGadget {
    Instance inst;
    std::vector<int> vertex_hospital, edge_hospital, vert_select, edge_select;
    std::vector<int> vertex_resident, edge_resident, filling;

    std::vector<int> to_clique(const Matching &m) const; // vertices at selection hospitals
};

// Inputs with k > |V| or fewer than k(k-1)/2 edges map to a fixed no-instance with empty index tables.
CliqueGadget gen_clique(const SimpleGraph &g, int k);
std::optional<std::vector<int>> brute_force_clique(const SimpleGraph &g, int k);

struct SmtiInstance {
    std::vector<TieGroups> men;   // women ids
    std::vector<TieGroups> women; // men ids
};

struct SmtiGadget {
    Instance inst;
    std::vector<int> man_resident, woman_resident;
    std::vector<std::vector<int>> pair_hospital; // [man][woman], -1 if absent

    // partner[m] = woman or -1
    Matching from_marriage(const std::vector<int> &partner) const;
    std::vector<int> to_marriage(const Matching &m) const;
};

SmtiGadget gen_smti(const SmtiInstance &s);

// A weakly stable marriage matching every man, found by brute force.
std::optional<std::vector<int>> brute_force_complete_smti(const SmtiInstance &s);

} // namespace hrql
