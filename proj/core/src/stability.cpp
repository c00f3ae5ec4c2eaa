#include <hrql/stability.hpp>

#include <algorithm>

namespace hrql {

bool is_feasible(const Instance &inst, const Matching &m) { return is_feasible(inst, Ranks(inst), m); }

bool is_feasible(const Instance &inst, const Ranks &rk, const Matching &m)
{
    check_ids(inst, m);
    for (int r = 0; r < m.size(); ++r)
        if (m[r] != kUnmatched && !rk.acceptable(r, m[r]))
            return false;
    auto load = m.loads(inst.m());
    for (int h = 0; h < inst.m(); ++h)
        if (load[h] != 0 && (load[h] < inst.lower(h) || load[h] > inst.upper(h)))
            return false;
    return true;
}

static void require_feasible(const Instance &inst, const Ranks &rk, const Matching &m)
{
    if (!is_feasible(inst, rk, m))
        throw RejectedInput("matching is not feasible");
}

std::vector<std::pair<int, int>> find_blocking_pairs(const Instance &inst, const Matching &m)
{
    return find_blocking_pairs(inst, Ranks(inst), m);
}

std::vector<std::pair<int, int>> find_blocking_pairs(const Instance &inst, const Ranks &rk, const Matching &m)
{
    require_feasible(inst, rk, m);
    const int n = inst.n(), nh = inst.m();
    auto load = m.loads(nh);
    // worst[h] = largest (worst) rank h gives to one of its assignees
    std::vector<int> worst(nh, -1);
    for (int r = 0; r < n; ++r)
        if (m[r] != kUnmatched)
            worst[m[r]] = std::max(worst[m[r]], rk.hospital(m[r], r));

    std::vector<std::pair<int, int>> out;
    for (int r = 0; r < n; ++r) {
        const int cur = rk.of(r, m[r]);
        for (int h = 0; h < nh; ++h) {
            int rr = rk.resident(r, h);
            if (rr < 0 || rr >= cur || load[h] == 0)
                continue;
            bool under = load[h] < inst.upper(h);
            bool prefers = !inst.hospitals[h].indifferent && rk.hospital(h, r) < worst[h];
            if (under || prefers)
                out.emplace_back(r, h);
        }
    }
    return out;
}

std::vector<std::pair<int, int>> find_blocking_pairs_strict(const Instance &inst, const Matching &m)
{
    if (!inst.strict())
        throw WrongVariant("strict pair test needs an instance without ties");
    if (!is_feasible(inst, m))
        throw RejectedInput("matching is not feasible");
    auto pos = [](const std::vector<int> &order, int x) {
        auto it = std::find(order.begin(), order.end(), x);
        return it == order.end() ? -1 : static_cast<int>(it - order.begin());
    };
    std::vector<std::pair<int, int>> out;
    for (int r = 0; r < inst.n(); ++r) {
        auto order = inst.accepted_by(r);
        int cur = m[r] == kUnmatched ? static_cast<int>(order.size()) : pos(order, m[r]);
        for (int i = 0; i < cur; ++i) {
            int h = order[i];
            auto mem = m.members(h);
            if (mem.empty())
                continue;
            if (static_cast<int>(mem.size()) < inst.upper(h)) {
                out.emplace_back(r, h);
                continue;
            }
            auto horder = inst.acceptors(h);
            int pr = pos(horder, r);
            if (std::any_of(mem.begin(), mem.end(), [&](int x) { return pos(horder, x) > pr; }))
                out.emplace_back(r, h);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Coalition> find_blocking_coalitions(const Instance &inst, const Matching &m)
{
    return find_blocking_coalitions(inst, Ranks(inst), m);
}

std::vector<Coalition> find_blocking_coalitions(const Instance &inst, const Ranks &rk, const Matching &m)
{
    require_feasible(inst, rk, m);
    auto load = m.loads(inst.m());
    std::vector<Coalition> out;
    for (int h = 0; h < inst.m(); ++h) {
        if (load[h] != 0)
            continue;
        const int l = inst.lower(h);
        Coalition c{h, {}};
        for (int r = 0; r < inst.n() && static_cast<int>(c.witness.size()) < l; ++r) {
            int rr = rk.resident(r, h);
            if (rr >= 0 && rr < rk.of(r, m[r]))
                c.witness.push_back(r);
        }
        if (static_cast<int>(c.witness.size()) == l)
            out.push_back(std::move(c));
    }
    return out;
}

StabilityReport check_stability(const Instance &inst, const Matching &m)
{
    return check_stability(inst, Ranks(inst), m);
}

StabilityReport check_stability(const Instance &inst, const Ranks &rk, const Matching &m)
{
    StabilityReport rep;
    rep.feasible = is_feasible(inst, rk, m);
    if (!rep.feasible)
        return rep;
    rep.blocking_pairs = find_blocking_pairs(inst, rk, m);
    rep.blocked_closed_hospitals = find_blocking_coalitions(inst, rk, m);
    rep.stable = rep.blocking_pairs.empty() && rep.blocked_closed_hospitals.empty();
    return rep;
}

bool is_stable(const Instance &inst, const Ranks &rk, const Matching &m)
{
    return check_stability(inst, rk, m).stable;
}

} // namespace hrql
