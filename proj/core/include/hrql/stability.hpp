#pragma once

#include <hrql/instance.hpp>

#include <utility>
#include <vector>

namespace hrql {

struct Coalition {
    int hospital;
    std::vector<int> witness; // l(h) residents, ascending ids

    bool operator==(const Coalition &) const = default;
};

struct StabilityReport {
    bool feasible = false;
    std::vector<std::pair<int, int>> blocking_pairs; // (resident, hospital)
    std::vector<Coalition> blocked_closed_hospitals;
    bool stable = false;
};

bool is_feasible(const Instance &inst, const Matching &m);
bool is_feasible(const Instance &inst, const Ranks &rk, const Matching &m);

std::vector<std::pair<int, int>> find_blocking_pairs(const Instance &inst, const Matching &m);
std::vector<std::pair<int, int>> find_blocking_pairs(const Instance &inst, const Ranks &rk, const Matching &m);

// Pair test written against strict total orders only; used to cross-check the
// weak-order test on instances without ties.
std::vector<std::pair<int, int>> find_blocking_pairs_strict(const Instance &inst, const Matching &m);

std::vector<Coalition> find_blocking_coalitions(const Instance &inst, const Matching &m);
std::vector<Coalition> find_blocking_coalitions(const Instance &inst, const Ranks &rk, const Matching &m);

StabilityReport check_stability(const Instance &inst, const Matching &m);
StabilityReport check_stability(const Instance &inst, const Ranks &rk, const Matching &m);

bool is_stable(const Instance &inst, const Ranks &rk, const Matching &m);

} // namespace hrql
