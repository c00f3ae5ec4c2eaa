#include <hrql/enumsolver.hpp>
#include <hrql/openset.hpp>
#include <hrql/stability.hpp>

#include <algorithm>
#include <bit>

namespace hrql {

std::vector<std::uint64_t> subsets_by_size(int k)
{
    if (k < 0 || k > 30)
        throw RejectedInput("subset enumeration supports at most 30 elements, got " + std::to_string(k));
    std::vector<std::uint64_t> out;
    out.reserve(std::size_t{1} << k);
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << k); ++s)
        out.push_back(s);
    std::stable_sort(out.begin(), out.end(),
                     [](std::uint64_t a, std::uint64_t b) { return std::popcount(a) < std::popcount(b); });
    return out;
}

namespace {

std::vector<int> quota_hospitals(const Instance &inst)
{
    std::vector<int> q;
    for (int h = 0; h < inst.m(); ++h)
        if (inst.lower(h) >= 2)
            q.push_back(h);
    return q;
}

// One subset of the FPT: candidate matching for pool = Q plus unit-lower hospitals.
std::optional<Matching> try_subset(const Instance &inst, const Ranks &rk, const std::vector<int> &hq,
                                   std::uint64_t bits, bool ties)
{
    std::vector<bool> pool(inst.m(), false), quota(inst.m(), false);
    for (int h = 0; h < inst.m(); ++h)
        if (inst.lower(h) == 1)
            pool[h] = true;
    for (size_t i = 0; i < hq.size(); ++i)
        if (bits >> i & 1)
            pool[hq[i]] = quota[hq[i]] = true;

    std::optional<Matching> m;
    if (ties) {
        m = assign_top_choices(inst, pool, quota);
    } else if (inst.all_unbounded()) {
        Matching t(inst.n());
        for (int r = 0; r < inst.n(); ++r)
            for (int h : inst.accepted_by(r))
                if (pool[h]) {
                    t[r] = h;
                    break;
                }
        m = t;
    } else {
        m = gale_shapley_resident_optimal(inst, pool);
    }
    if (m && is_feasible(inst, rk, *m) && is_stable(inst, rk, *m))
        return m;
    return std::nullopt;
}

std::optional<Matching> run_fpt(const Instance &inst, bool ties)
{
    Ranks rk(inst);
    auto hq = quota_hospitals(inst);
    for (auto bits : subsets_by_size(static_cast<int>(hq.size())))
        if (auto m = try_subset(inst, rk, hq, bits, ties))
            return m;
    return std::nullopt;
}

} // namespace

std::optional<Matching> solve_fpt_subsets(const Instance &inst)
{
    if (!inst.strict())
        throw WrongVariant("solve_fpt_subsets needs strict preferences; use solve_fpt_subsets_ties");
    return run_fpt(inst, false);
}

std::optional<Matching> solve_fpt_subsets_ties(const Instance &inst)
{
    if (!inst.all_unbounded())
        throw WrongVariant("solve_fpt_subsets_ties needs unbounded upper quotas");
    return run_fpt(inst, true);
}

std::vector<SubsetVerdict> fpt_all_verdicts(const Instance &inst)
{
    bool ties = !inst.strict();
    if (ties && !inst.all_unbounded())
        throw WrongVariant("fpt_all_verdicts: ties need unbounded upper quotas");
    Ranks rk(inst);
    auto hq = quota_hospitals(inst);
    std::vector<SubsetVerdict> out;
    for (auto bits : subsets_by_size(static_cast<int>(hq.size()))) {
        SubsetVerdict v;
        for (size_t i = 0; i < hq.size(); ++i)
            if (bits >> i & 1)
                v.quota_open.push_back(hq[i]);
        v.matching = try_subset(inst, rk, hq, bits, ties);
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<Matching> solve_count_open(const Instance &inst, int k, CountMode mode)
{
    const int m = inst.m();
    if (k < 0 || k > m)
        throw RejectedInput("count " + std::to_string(k) + " outside [0, " + std::to_string(m) + "]");
    const int size = mode == CountMode::open ? k : m - k;

    enum { strict_noupper, strict_upper, ties_noupper } route;
    if (inst.strict())
        route = inst.all_unbounded() ? strict_noupper : strict_upper;
    else if (inst.all_unbounded())
        route = ties_noupper;
    else
        throw WrongVariant("count-open needs strict preferences or unbounded upper quotas");

    // k-combinations of {0..m-1} in lexicographic order
    std::vector<int> comb(size);
    for (int i = 0; i < size; ++i)
        comb[i] = i;
    while (true) {
        std::optional<Matching> res;
        switch (route) {
        case strict_noupper: res = solve_fixed_open_strict_noupper(inst, comb); break;
        case strict_upper: res = solve_fixed_open_hrqlu(inst, comb); break;
        case ties_noupper: res = solve_fixed_open_ties_noupper(inst, comb); break;
        }
        if (res)
            return res;
        int i = size - 1;
        while (i >= 0 && comb[i] == m - size + i)
            --i;
        if (i < 0)
            break;
        ++comb[i];
        for (int j = i + 1; j < size; ++j)
            comb[j] = comb[j - 1] + 1;
    }
    return std::nullopt;
}

} // namespace hrql
