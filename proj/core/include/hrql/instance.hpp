#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hrql {

// Residents and hospitals are addressed by dense indices; names are kept for I/O.
inline constexpr int kUnmatched = -1;

enum class Variant { hr, hr_ties, ha };

const char *variant_name(Variant v);

using TieGroups = std::vector<std::vector<int>>;

struct Resident {
    std::string name;
    TieGroups prefs; // hospital indices, best group first
};

struct Hospital {
    std::string name;
    int lower = 1;
    std::optional<int> upper; // empty = unbounded
    TieGroups prefs;          // resident indices; unused when indifferent
    bool indifferent = false;
    std::vector<int> accepted; // only when indifferent
};

struct Instance {
    Variant variant = Variant::hr;
    std::vector<Resident> residents;
    std::vector<Hospital> hospitals;

    int n() const { return static_cast<int>(residents.size()); }
    int m() const { return static_cast<int>(hospitals.size()); }

    // Unbounded upper quotas behave as n+1.
    int upper(int h) const
    {
        const auto &u = hospitals[h].upper;
        return u ? *u : n() + 1;
    }
    int lower(int h) const { return hospitals[h].lower; }

    // Residents acceptable to h, in preference order (ties flattened).
    std::vector<int> acceptors(int h) const;
    std::vector<int> accepted_by(int r) const;

    bool has_resident_ties() const;
    bool has_hospital_ties() const; // indifference counts as ties
    bool strict() const { return !has_resident_ties() && !has_hospital_ties(); }
    bool all_unbounded() const;
    int max_lower() const;

    int resident_index(const std::string &name) const;
    int hospital_index(const std::string &name) const;
};

// Dense preference ranks. rank -1 means not acceptable. For residents the
// unmatched option has rank unmatched_rank(), worse than every hospital.
class Ranks {
public:
    explicit Ranks(const Instance &inst);

    int resident(int r, int h) const { return res_[r * m_ + h]; }
    int hospital(int h, int r) const { return hos_[h * n_ + r]; }
    bool acceptable(int r, int h) const { return res_[r * m_ + h] >= 0; }

    // Rank of an assignment (hospital index or kUnmatched) for resident r.
    int of(int r, int h) const { return h == kUnmatched ? unmatched_rank() : resident(r, h); }
    int unmatched_rank() const { return m_ + 1; }

    int n() const { return n_; }
    int m() const { return m_; }

private:
    int n_, m_;
    std::vector<int> res_, hos_;
};

struct Matching {
    std::vector<int> assign; // resident -> hospital or kUnmatched

    Matching() = default;
    explicit Matching(int n) : assign(n, kUnmatched) {}
    explicit Matching(std::vector<int> a) : assign(std::move(a)) {}

    int operator[](int r) const { return assign[r]; }
    int &operator[](int r) { return assign[r]; }
    int size() const { return static_cast<int>(assign.size()); }

    std::vector<int> members(int h) const;
    std::vector<int> loads(int m) const;
    int open_count(int m) const;

    auto operator<=>(const Matching &) const = default;
};

std::string to_string(const Instance &inst, const Matching &m);

// Error hierarchy.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RejectedInput : Error {
    using Error::Error;
};
struct WrongVariant : Error {
    using Error::Error;
};
struct NotApplicable : Error {
    using Error::Error;
};
struct EnumerationOverflow : Error {
    using Error::Error;
};
struct SolverBudget : Error {
    using Error::Error;
};
struct InternalInvariant : Error {
    using Error::Error;
};
struct ParseError : Error {
    ParseError(const std::string &what, int line, int column)
        : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          line(line), column(column)
    {
    }
    int line, column;
};

// Returns one description per violated invariant; empty means well-formed.
std::vector<std::string> validate_instance(const Instance &inst);

// Throws RejectedInput when the matching references unknown ids or has the wrong size.
void check_ids(const Instance &inst, const Matching &m);

} // namespace hrql

namespace hrql {

// Convenience construction. Hospital lists left unset are derived in finish():
// acceptors in resident-id order, strict for hr/hr_ties and indifferent for ha.
class InstanceBuilder {
public:
    explicit InstanceBuilder(Variant v = Variant::hr) { inst_.variant = v; }

    int add_resident(const std::string &name);
    int add_hospital(const std::string &name, int lower, std::optional<int> upper = std::nullopt);

    void resident_prefs(int r, TieGroups groups);
    void resident_strict(int r, const std::vector<int> &order);
    void hospital_prefs(int h, TieGroups groups);
    void hospital_strict(int h, const std::vector<int> &order);
    void hospital_indifferent(int h, std::vector<int> accepted);

    Instance finish();

private:
    Instance inst_;
    std::vector<bool> hosp_set_;
};

TieGroups singletons(const std::vector<int> &order);

} // namespace hrql
