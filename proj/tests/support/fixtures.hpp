#pragma once

#include <hrql/instance.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hrql::test {

struct HospSpec {
    std::string name;
    int lower;
    std::optional<int> upper;
    std::vector<std::string> prefs; // strict order; empty = acceptors in resident order
};

// Strict instance from names. Hospitals are declared in the given order.
Instance strict_instance(const std::vector<std::pair<std::string, std::vector<std::string>>> &residents,
                         const std::vector<HospSpec> &hospitals);

// Matching from {hospital: [residents]}.
Matching matching_of(const Instance &inst, const std::map<std::string, std::vector<std::string>> &assign);

Instance f1(); // three-cycle, no stable matching
Instance f2(); // two stable matchings
Matching f2_m1(const Instance &f2);
Matching f2_m2(const Instance &f2);
Instance f3(); // Phase 1 example
Instance f4(); // rotation example
Matching f4_final(const Instance &f4);

using Lists = std::map<std::string, std::vector<std::string>>;
Lists f3_after_phase1();
Lists f4_after_rotation();

} // namespace hrql::test
