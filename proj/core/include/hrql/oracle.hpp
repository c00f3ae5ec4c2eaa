#pragma once

#include <hrql/instance.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace hrql {

inline constexpr std::int64_t kDefaultCap = 1'000'000;

// Visits every feasible matching once in lexicographic order (unmatched first,
// then hospital index). The visitor returns false to stop early. Throws
// EnumerationOverflow when more than cap matchings would be visited.
void enumerate_feasible(const Instance &inst, std::int64_t cap, const std::function<bool(const Matching &)> &visit);
std::vector<Matching> enumerate_feasible(const Instance &inst, std::int64_t cap = kDefaultCap);

// All stable matchings in lexicographic order; cap bounds the result size.
std::vector<Matching> enumerate_stable(const Instance &inst, std::int64_t cap = kDefaultCap);
std::optional<Matching> first_stable(const Instance &inst);

struct RuralReport {
    std::int64_t stable_count = 0;
    bool matched_set_uniform = true;
    bool open_count_uniform = true;
    std::vector<int> matched_residents; // filled when uniform
    std::vector<int> open_counts;       // one per stable matching
};

RuralReport rural_check(const Instance &inst, std::int64_t cap = kDefaultCap);
RuralReport rural_summary(const Instance &inst, const std::vector<Matching> &stable);

} // namespace hrql
