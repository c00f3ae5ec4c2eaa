#include <hrql/openset.hpp>
#include <hrql/stability.hpp>

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>

namespace hrql {

std::vector<bool> open_mask(const Instance &inst, const OpenSet &open)
{
    std::vector<bool> mask(inst.m(), false);
    for (int h : open) {
        if (h < 0 || h >= inst.m())
            throw RejectedInput("unknown hospital id " + std::to_string(h) + " in open set");
        if (mask[h])
            throw RejectedInput("hospital " + inst.hospitals[h].name + " listed twice in open set");
        mask[h] = true;
    }
    return mask;
}

static void require_strict(const Instance &inst, const char *who)
{
    if (!inst.strict())
        throw WrongVariant(std::string(who) + " needs strict preferences");
}

// Every hospital of the open set is non-empty and within quota, and no other hospital is used.
static bool opens_exactly(const Instance &inst, const Matching &m, const std::vector<bool> &mask)
{
    auto load = m.loads(inst.m());
    for (int h = 0; h < inst.m(); ++h) {
        if (mask[h] && (load[h] < inst.lower(h) || load[h] > inst.upper(h)))
            return false;
        if (!mask[h] && load[h] != 0)
            return false;
    }
    return true;
}

std::optional<Matching> solve_fixed_open_strict_noupper(const Instance &inst, const OpenSet &open)
{
    require_strict(inst, "solve_fixed_open_strict_noupper");
    if (!inst.all_unbounded())
        throw WrongVariant("solve_fixed_open_strict_noupper needs unbounded upper quotas");
    auto mask = open_mask(inst, open);
    Matching m(inst.n());
    for (int r = 0; r < inst.n(); ++r)
        for (int h : inst.accepted_by(r))
            if (mask[h]) {
                m[r] = h;
                break;
            }
    if (!opens_exactly(inst, m, mask) || !check_stability(inst, m).stable)
        return std::nullopt;
    return m;
}

Matching gale_shapley_resident_optimal(const Instance &inst, const OpenSet &open)
{
    return gale_shapley_resident_optimal(inst, open_mask(inst, open));
}

Matching gale_shapley_resident_optimal(const Instance &inst, const std::vector<bool> &pool)
{
    require_strict(inst, "gale_shapley_resident_optimal");
    const int n = inst.n(), nh = inst.m();
    Ranks rk(inst);
    std::vector<std::vector<int>> lists(n);
    for (int r = 0; r < n; ++r)
        for (int h : inst.accepted_by(r))
            if (pool[h])
                lists[r].push_back(h);

    // held[h] is a max-heap on hospital rank so the worst holder is on top
    auto cmp_for = [&](int h) {
        return [&rk, h](int a, int b) { return rk.hospital(h, a) < rk.hospital(h, b); };
    };
    std::vector<std::vector<int>> held(nh);
    std::vector<size_t> next(n, 0);
    Matching m(n);
    std::queue<int> free;
    for (int r = 0; r < n; ++r)
        free.push(r);
    while (!free.empty()) {
        int r = free.front();
        free.pop();
        while (next[r] < lists[r].size()) {
            int h = lists[r][next[r]++];
            auto &hv = held[h];
            auto cmp = cmp_for(h);
            if (static_cast<int>(hv.size()) < inst.upper(h)) {
                hv.push_back(r);
                std::push_heap(hv.begin(), hv.end(), cmp);
                m[r] = h;
                break;
            }
            if (rk.hospital(h, r) < rk.hospital(h, hv.front())) {
                std::pop_heap(hv.begin(), hv.end(), cmp);
                int out = hv.back();
                hv.back() = r;
                std::push_heap(hv.begin(), hv.end(), cmp);
                m[r] = h;
                m[out] = kUnmatched;
                free.push(out);
                break;
            }
        }
    }
    return m;
}

std::optional<Matching> solve_fixed_open_hrqlu(const Instance &inst, const OpenSet &open)
{
    require_strict(inst, "solve_fixed_open_hrqlu");
    auto mask = open_mask(inst, open);
    Matching m = gale_shapley_resident_optimal(inst, mask);
    if (!opens_exactly(inst, m, mask) || !check_stability(inst, m).stable)
        return std::nullopt;
    return m;
}

std::vector<int> hopcroft_karp(int left_size, int right_size, const std::vector<std::pair<int, int>> &edges)
{
    if (left_size < 0 || right_size < 0)
        throw RejectedInput("negative side size");
    std::vector<std::vector<int>> adj(left_size);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= left_size || v < 0 || v >= right_size)
            throw RejectedInput("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
        adj[u].push_back(v);
    }
    const int inf = std::numeric_limits<int>::max();
    std::vector<int> mate_l(left_size, -1), mate_r(right_size, -1), dist(left_size);

    auto bfs = [&] {
        std::queue<int> q;
        bool found = false;
        for (int u = 0; u < left_size; ++u) {
            if (mate_l[u] == -1) {
                dist[u] = 0;
                q.push(u);
            } else
                dist[u] = inf;
        }
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u]) {
                int w = mate_r[v];
                if (w == -1)
                    found = true;
                else if (dist[w] == inf) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
            }
        }
        return found;
    };
    std::vector<size_t> it(left_size);
    std::function<bool(int)> dfs = [&](int u) {
        for (; it[u] < adj[u].size(); ++it[u]) {
            int v = adj[u][it[u]];
            int w = mate_r[v];
            if (w == -1 || (dist[w] == dist[u] + 1 && dfs(w))) {
                mate_l[u] = v;
                mate_r[v] = u;
                return true;
            }
        }
        dist[u] = inf;
        return false;
    };
    while (bfs()) {
        std::fill(it.begin(), it.end(), 0);
        for (int u = 0; u < left_size; ++u)
            if (mate_l[u] == -1)
                dfs(u);
    }
    return mate_l;
}

int matching_size(const std::vector<int> &left_mate)
{
    return static_cast<int>(std::count_if(left_mate.begin(), left_mate.end(), [](int v) { return v >= 0; }));
}

std::optional<Matching> assign_top_choices(const Instance &inst, const std::vector<bool> &pool,
                                           const std::vector<bool> &quota)
{
    const int n = inst.n(), nh = inst.m();
    Ranks rk(inst);
    // best[r] = rank of r's best tie-group meeting the pool (unmatched rank if none)
    std::vector<int> best(n, rk.unmatched_rank());
    std::vector<std::vector<int>> top(n);
    for (int r = 0; r < n; ++r)
        for (const auto &g : inst.residents[r].prefs) {
            for (int h : g)
                if (pool[h])
                    top[r].push_back(h);
            if (!top[r].empty()) {
                best[r] = rk.resident(r, g.front());
                std::sort(top[r].begin(), top[r].end());
                break;
            }
        }

    for (int h = 0; h < nh; ++h) {
        if (pool[h])
            continue;
        int c = 0;
        for (int r = 0; r < n; ++r)
            if (rk.acceptable(r, h) && rk.resident(r, h) < best[r])
                ++c;
        if (c >= inst.lower(h))
            return std::nullopt;
    }

    // Residents on the left, l(h) copies of each quota hospital on the right.
    std::vector<int> copy_owner;
    std::vector<int> first_copy(nh, -1);
    for (int h = 0; h < nh; ++h)
        if (quota[h]) {
            first_copy[h] = static_cast<int>(copy_owner.size());
            for (int k = 0; k < inst.lower(h); ++k)
                copy_owner.push_back(h);
        }
    std::vector<std::pair<int, int>> edges;
    for (int r = 0; r < n; ++r)
        for (int h : top[r])
            if (quota[h])
                for (int k = 0; k < inst.lower(h); ++k)
                    edges.emplace_back(r, first_copy[h] + k);
    auto mate = hopcroft_karp(n, static_cast<int>(copy_owner.size()), edges);
    if (matching_size(mate) != static_cast<int>(copy_owner.size()))
        return std::nullopt;

    Matching m(n);
    for (int r = 0; r < n; ++r) {
        if (mate[r] >= 0)
            m[r] = copy_owner[mate[r]];
        else if (!top[r].empty())
            m[r] = top[r].front();
    }
    return m;
}

std::optional<Matching> solve_fixed_open_ties_noupper(const Instance &inst, const OpenSet &open)
{
    if (!inst.all_unbounded())
        throw WrongVariant("solve_fixed_open_ties_noupper needs unbounded upper quotas");
    auto mask = open_mask(inst, open);
    auto m = assign_top_choices(inst, mask, mask);
    if (!m)
        return std::nullopt;
    auto rep = check_stability(inst, *m);
    if (!rep.stable || !opens_exactly(inst, *m, mask))
        throw InternalInvariant("fixed-open ties routine produced an unstable matching " + to_string(inst, *m));
    return m;
}

} // namespace hrql
