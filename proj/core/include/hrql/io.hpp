#pragma once

#include <hrql/instance.hpp>
#include <hrql/stability.hpp>

#include <string>

namespace hrql {

// JSON instance document:
//   {"variant": "hr"|"hr_ties"|"ha",
//    "residents": [{"id": "r1", "prefs": [["h1"], ["h2", "h3"]]}, ...],
//    "hospitals": [{"id": "h1", "lower": 2, "upper": null, "prefs": [["r1"]]}
//                  | {"id": ..., "lower": ..., "upper": ..., "indifferent": ["r1", ...]}, ...]}
// Syntax errors throw ParseError; structural and validation errors throw RejectedInput.
Instance parse_instance(const std::string &text);
std::string serialize_instance(const Instance &inst);

// [{"hospital": "h1"|null, "resident": "r1"}, ...] in resident order.
std::string serialize_matching(const Instance &inst, const Matching &m);
Matching parse_matching(const Instance &inst, const std::string &text);

std::string serialize_report(const Instance &inst, const StabilityReport &rep);

std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &text);

} // namespace hrql
