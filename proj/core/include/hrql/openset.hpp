#pragma once

#include <hrql/instance.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace hrql {

// A set of hospital indices; order is irrelevant, duplicates are rejected.
using OpenSet = std::vector<int>;

std::vector<bool> open_mask(const Instance &inst, const OpenSet &open);

// Top choice within the open set; HR-Q_L shape (strict, all u unbounded).
std::optional<Matching> solve_fixed_open_strict_noupper(const Instance &inst, const OpenSet &open);

// Resident-proposing deferred acceptance over the open hospitals with
// capacities u(h); lower quotas are ignored.
Matching gale_shapley_resident_optimal(const Instance &inst, const OpenSet &open);
Matching gale_shapley_resident_optimal(const Instance &inst, const std::vector<bool> &pool);

std::optional<Matching> solve_fixed_open_hrqlu(const Instance &inst, const OpenSet &open);

// Maximum-cardinality bipartite matching. Returns mate of each left vertex (-1 if free).
std::vector<int> hopcroft_karp(int left_size, int right_size, const std::vector<std::pair<int, int>> &edges);
int matching_size(const std::vector<int> &left_mate);

std::optional<Matching> solve_fixed_open_ties_noupper(const Instance &inst, const OpenSet &open);

// Shared core of the ties routines. Every resident is assigned within its best
// tie-group restricted to pool, hospitals in quota get l(h) copies that must
// all be covered, and closed hospitals outside pool must not be blocked.
// Returns nullopt when any of these fails.
std::optional<Matching> assign_top_choices(const Instance &inst, const std::vector<bool> &pool,
                                           const std::vector<bool> &quota);

} // namespace hrql
