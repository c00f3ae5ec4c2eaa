#pragma once

#include <hrql/instance.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hrql {

enum class Rel { le, ge, eq };

struct IlpVar {
    std::string name;
    std::int64_t lo = 0, hi = 0;
    bool binary = false;
};

struct IlpTerm {
    int var;
    std::int64_t coef;
};

struct IlpConstraint {
    std::string name;
    std::vector<IlpTerm> terms;
    Rel rel = Rel::le;
    std::int64_t rhs = 0;
};

// What a variable stands for: x (residents of a type at a hospital), o (open), y (undersubscribed).
struct VarMeta {
    enum class Role { x, o, y } role = Role::x;
    int type = -1;
    int hospital = -1;
};

struct ResidentType {
    TieGroups prefs;
    std::vector<int> signature; // empty unless a signature partition was supplied
    std::vector<int> members;   // ascending resident ids
    int count() const { return static_cast<int>(members.size()); }
};

struct IlpModel {
    std::vector<IlpVar> vars;
    std::vector<IlpConstraint> constraints;
    std::vector<VarMeta> meta;
    std::vector<ResidentType> types;

    int add_var(std::string name, std::int64_t lo, std::int64_t hi, VarMeta m, bool binary = false);
    void add(std::string name, std::vector<IlpTerm> terms, Rel rel, std::int64_t rhs);
};

// Residents grouped by identical preference relation (and signature, when given).
// Types are ordered by their lowest member.
std::vector<ResidentType> resident_types(const Instance &inst,
                                         const std::vector<std::vector<int>> &signatures = {});

IlpModel build_haqlu_model(const Instance &inst);

struct Guess {
    std::vector<int> open;  // ascending hospital ids
    std::vector<int> worst; // per hospital: guessed worst assignee, -1 when closed
    std::vector<int> full;  // ascending, subset of open
};

IlpModel build_hrqlut_model(const Instance &inst, const Guess &g);

// Streams (open, worst assignee per open hospital, full subset) triples.
// The visitor returns false to stop.
void enumerate_guesses(const Instance &inst, const std::function<bool(const Guess &)> &visit);
std::int64_t count_guesses(const Instance &inst);

inline constexpr std::int64_t kDefaultNodeBudget = 20'000'000;

// Exact DFS with bound propagation; nullopt = infeasible. Throws SolverBudget.
std::optional<std::vector<std::int64_t>> solve_naive(const IlpModel &model,
                                                     std::int64_t node_budget = kDefaultNodeBudget);

Matching decode_solution(const Instance &inst, const IlpModel &model, const std::vector<std::int64_t> &values);

std::string export_lp(const IlpModel &model);

std::optional<Matching> solve_haqlu_ilp(const Instance &inst, std::int64_t node_budget = kDefaultNodeBudget);
std::optional<Matching> solve_hrqlut_xp(const Instance &inst, std::int64_t node_budget = kDefaultNodeBudget);

} // namespace hrql
