#pragma once

#include <hrql/instance.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace hrql {

// Subsets of {0..k-1} as bitmasks, by increasing popcount then binary value.
std::vector<std::uint64_t> subsets_by_size(int k);

struct SubsetVerdict {
    std::vector<int> quota_open; // the subset Q of lower-quota>=2 hospitals
    std::optional<Matching> matching;
};

std::optional<Matching> solve_fpt_subsets(const Instance &inst);
std::optional<Matching> solve_fpt_subsets_ties(const Instance &inst);

// Every subset's verdict instead of stopping at the first success.
std::vector<SubsetVerdict> fpt_all_verdicts(const Instance &inst);

enum class CountMode { open, closed };

std::optional<Matching> solve_count_open(const Instance &inst, int k, CountMode mode = CountMode::open);

} // namespace hrql
