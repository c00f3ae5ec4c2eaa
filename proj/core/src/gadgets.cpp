#include <hrql/gadgets.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <random>

namespace hrql {

namespace {

Instance checked(Instance inst)
{
    auto errs = validate_instance(inst);
    if (!errs.empty())
        throw InternalInvariant("generator produced an invalid instance: " + errs.front());
    return inst;
}

std::string num(int i) { return std::to_string(i + 1); }

} // namespace

Instance gen_counterexample()
{
    InstanceBuilder b(Variant::hr);
    for (int i = 0; i < 3; ++i)
        b.add_resident("r" + num(i));
    for (int i = 0; i < 3; ++i)
        b.add_hospital("h" + num(i), 2);
    b.resident_strict(0, {0, 1});
    b.resident_strict(1, {1, 2});
    b.resident_strict(2, {2, 0});
    return checked(b.finish());
}

// ---- satisfiability ----

std::vector<std::string> check_formula(const CnfFormula &f)
{
    std::vector<std::string> errs;
    if (f.q < 0)
        errs.push_back("negative variable count");
    std::vector<int> pos(std::max(f.q, 0), 0), neg(std::max(f.q, 0), 0);
    for (size_t c = 0; c < f.clauses.size(); ++c) {
        auto cl = f.clauses[c];
        for (int lit : cl) {
            int v = std::abs(lit);
            if (lit == 0 || v > f.q) {
                errs.push_back("clause " + std::to_string(c + 1) + " has an unknown literal");
                continue;
            }
            ++(lit > 0 ? pos : neg)[v - 1];
        }
        std::sort(cl.begin(), cl.end());
        if (std::adjacent_find(cl.begin(), cl.end()) != cl.end())
            errs.push_back("clause " + std::to_string(c + 1) + " repeats a literal");
    }
    for (int v = 0; v < f.q; ++v)
        if (pos[v] != 2 || neg[v] != 2)
            errs.push_back("variable " + num(v) + " does not occur exactly twice with each sign");
    return errs;
}

CnfFormula random_formula(int q, std::uint64_t seed)
{
    if (q <= 0 || q % 3 != 0)
        throw RejectedInput("variable count must be a positive multiple of 3");
    std::mt19937_64 rng(seed);
    std::vector<int> lits;
    for (int v = 1; v <= q; ++v)
        for (int s : {v, v, -v, -v})
            lits.push_back(s);
    CnfFormula f;
    f.q = q;
    while (true) {
        std::shuffle(lits.begin(), lits.end(), rng);
        f.clauses.clear();
        for (size_t i = 0; i < lits.size(); i += 3)
            f.clauses.push_back({lits[i], lits[i + 1], lits[i + 2]});
        if (check_formula(f).empty())
            return f;
    }
}

SatGadget gen_sat(const CnfFormula &f)
{
    auto errs = check_formula(f);
    if (!errs.empty())
        throw RejectedInput("formula: " + errs.front());
    const int q = f.q, p = static_cast<int>(f.clauses.size());
    SatGadget g;
    g.formula = f;
    InstanceBuilder b(Variant::hr);
    for (int i = 0; i < q; ++i) {
        g.r.push_back(b.add_resident("r" + num(i)));
        g.rbar.push_back(b.add_resident("rbar" + num(i)));
        g.d1.push_back(b.add_resident("d1_" + num(i)));
        g.d2.push_back(b.add_resident("d2_" + num(i)));
        g.sstar.push_back(b.add_resident("sstar" + num(i)));
        g.s1.push_back(b.add_resident("s1_" + num(i)));
        g.s2.push_back(b.add_resident("s2_" + num(i)));
    }
    for (int i = 0; i < q; ++i) {
        g.h.push_back(b.add_hospital("h" + num(i), 3));
        g.hbar.push_back(b.add_hospital("hbar" + num(i), 3));
        g.hstar.push_back(b.add_hospital("hstar" + num(i), 2));
        g.hbarstar.push_back(b.add_hospital("hbarstar" + num(i), 2));
        g.p1.push_back(b.add_hospital("h1_" + num(i), 2));
        g.p2.push_back(b.add_hospital("h2_" + num(i), 2));
        g.p3.push_back(b.add_hospital("h3_" + num(i), 2));
    }
    for (int c = 0; c < p; ++c)
        g.clause_hospital.push_back(b.add_hospital("hc" + num(c), 3));

    std::vector<std::vector<int>> pos(q), neg(q);
    for (int c = 0; c < p; ++c)
        for (int lit : f.clauses[c])
            (lit > 0 ? pos : neg)[std::abs(lit) - 1].push_back(g.clause_hospital[c]);
    for (int i = 0; i < q; ++i) {
        b.resident_strict(g.r[i], {g.h[i], pos[i][0], pos[i][1], g.hstar[i]});
        b.resident_strict(g.rbar[i], {g.hbar[i], neg[i][0], neg[i][1], g.hbarstar[i]});
        b.resident_strict(g.d1[i], {g.h[i], g.hbar[i]});
        b.resident_strict(g.d2[i], {g.hbar[i], g.h[i]});
        b.resident_strict(g.sstar[i], {g.hstar[i], g.hbarstar[i], g.p1[i], g.p2[i]});
        b.resident_strict(g.s1[i], {g.p2[i], g.p3[i]});
        b.resident_strict(g.s2[i], {g.p3[i], g.p1[i]});
    }
    g.inst = checked(b.finish());
    return g;
}

Matching SatGadget::from_assignment(const std::vector<bool> &truth) const
{
    if (static_cast<int>(truth.size()) != formula.q)
        throw RejectedInput("assignment has the wrong number of variables");
    Matching m(inst.n());
    for (int i = 0; i < formula.q; ++i) {
        if (truth[i]) {
            m[r[i]] = m[d1[i]] = m[d2[i]] = h[i];
            m[rbar[i]] = m[sstar[i]] = hbarstar[i];
        } else {
            m[rbar[i]] = m[d1[i]] = m[d2[i]] = hbar[i];
            m[r[i]] = m[sstar[i]] = hstar[i];
        }
        m[s1[i]] = m[s2[i]] = p3[i];
    }
    return m;
}

std::vector<bool> SatGadget::to_assignment(const Matching &m) const
{
    std::vector<bool> truth(formula.q);
    for (int i = 0; i < formula.q; ++i)
        truth[i] = m[r[i]] != hstar[i];
    return truth;
}

std::optional<std::vector<bool>> brute_force_sat(const CnfFormula &f)
{
    if (f.q > 30)
        throw RejectedInput("too many variables for a truth table");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f.q); ++mask) {
        bool ok = std::all_of(f.clauses.begin(), f.clauses.end(), [&](const auto &cl) {
            return std::any_of(cl.begin(), cl.end(), [&](int lit) {
                bool val = mask >> (std::abs(lit) - 1) & 1;
                return lit > 0 ? val : !val;
            });
        });
        if (ok) {
            std::vector<bool> t(f.q);
            for (int v = 0; v < f.q; ++v)
                t[v] = mask >> v & 1;
            return t;
        }
    }
    return std::nullopt;
}

// ---- multicoloured independent set ----

ColoredGraph demo_colored_graph()
{
    ColoredGraph g;
    g.names = {"v1c", "v2c", "v3c", "v1d", "v2d", "v3d"};
    g.color = {0, 0, 0, 1, 1, 1};
    g.edges = {{0, 3}, {0, 4}, {2, 5}, {1, 5}};
    return g;
}

namespace {

void check_graph(const ColoredGraph &g, int k)
{
    const int nv = static_cast<int>(g.names.size());
    if (static_cast<int>(g.color.size()) != nv)
        throw RejectedInput("colour map size differs from vertex count");
    std::vector<int> per_color(std::max(k, 0), 0), degree(nv, 0);
    for (int c : g.color) {
        if (c < 0 || c >= k)
            throw RejectedInput("colour outside 0..k-1");
        ++per_color[c];
    }
    for (int c = 0; c < k; ++c)
        if (per_color[c] == 0)
            throw RejectedInput("colour " + num(c) + " has no vertices");
    std::vector<std::pair<int, int>> seen;
    for (auto [a, b] : g.edges) {
        if (a < 0 || b < 0 || a >= nv || b >= nv || a == b)
            throw RejectedInput("bad edge endpoint");
        if (g.color[a] == g.color[b])
            throw RejectedInput("edge inside colour class " + num(g.color[a]));
        seen.push_back(std::minmax(a, b));
        ++degree[a];
        ++degree[b];
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw RejectedInput("duplicate edge");
    if (g.p)
        for (int v = 0; v < nv; ++v)
            if (degree[v] != *g.p)
                throw RejectedInput("vertex " + g.names[v] + " does not have degree p");
    if (g.q)
        for (int c = 0; c < k; ++c)
            if (per_color[c] != *g.q)
                throw RejectedInput("colour " + num(c) + " does not have q vertices");
}

} // namespace

McisGadget gen_mcis(const ColoredGraph &g, int k)
{
    check_graph(g, k);
    const int nv = static_cast<int>(g.names.size());
    McisGadget out;
    InstanceBuilder b(Variant::hr);
    std::vector<int> r1(k), r2(k), ss(k), s1(k), s2(k), p1(k), p2(k), p3(k);
    for (int c = 0; c < k; ++c) {
        r1[c] = b.add_resident("r1_" + num(c));
        r2[c] = b.add_resident("r2_" + num(c));
        ss[c] = b.add_resident("sstar_" + num(c));
        s1[c] = b.add_resident("s1_" + num(c));
        s2[c] = b.add_resident("s2_" + num(c));
    }
    for (int v = 0; v < nv; ++v)
        out.vertex_hospital.push_back(b.add_hospital("h_" + g.names[v], 3));
    for (auto [a, c] : g.edges)
        out.edge_hospital.push_back(b.add_hospital("h_" + g.names[a] + "_" + g.names[c], 4));
    for (int c = 0; c < k; ++c) {
        p1[c] = b.add_hospital("h1_" + num(c), 2);
        p2[c] = b.add_hospital("h2_" + num(c), 2);
        p3[c] = b.add_hospital("h3_" + num(c), 2);
    }
    // block of v: its edge hospitals in edge input order, then h_v
    auto block = [&](int v) {
        std::vector<int> out_block;
        for (size_t e = 0; e < g.edges.size(); ++e)
            if (g.edges[e].first == v || g.edges[e].second == v)
                out_block.push_back(out.edge_hospital[e]);
        out_block.push_back(out.vertex_hospital[v]);
        return out_block;
    };
    for (int c = 0; c < k; ++c) {
        std::vector<int> verts;
        for (int v = 0; v < nv; ++v)
            if (g.color[v] == c)
                verts.push_back(v);
        std::vector<int> fwd, bwd, star;
        for (int v : verts) {
            auto bl = block(v);
            fwd.insert(fwd.end(), bl.begin(), bl.end());
            star.push_back(out.vertex_hospital[v]);
        }
        for (auto it = verts.rbegin(); it != verts.rend(); ++it) {
            auto bl = block(*it);
            bwd.insert(bwd.end(), bl.begin(), bl.end());
        }
        star.push_back(p1[c]);
        star.push_back(p2[c]);
        b.resident_strict(r1[c], fwd);
        b.resident_strict(r2[c], bwd);
        b.resident_strict(ss[c], star);
        b.resident_strict(s1[c], {p2[c], p3[c]});
        b.resident_strict(s2[c], {p3[c], p1[c]});
    }
    out.inst = checked(b.finish());
    return out;
}

Matching McisGadget::from_independent_set(const ColoredGraph &g, const std::vector<int> &chosen) const
{
    Matching m(inst.n());
    const int k = static_cast<int>(chosen.size());
    for (int c = 0; c < k; ++c) {
        int v = chosen[c];
        if (v < 0 || v >= static_cast<int>(g.names.size()) || g.color[v] != c)
            throw RejectedInput("chosen vertex does not match its colour");
        for (int j = 0; j < 3; ++j)
            m[5 * c + j] = vertex_hospital[v];
        m[5 * c + 3] = m[5 * c + 4] = inst.hospital_index("h3_" + num(c));
    }
    return m;
}

std::vector<int> McisGadget::to_independent_set(const Matching &m) const
{
    std::vector<int> out;
    auto loads = m.loads(inst.m());
    for (size_t v = 0; v < vertex_hospital.size(); ++v)
        if (loads[vertex_hospital[v]] > 0)
            out.push_back(static_cast<int>(v));
    return out;
}

std::optional<std::vector<int>> brute_force_mcis(const ColoredGraph &g, int k)
{
    check_graph(g, k);
    const int nv = static_cast<int>(g.names.size());
    std::vector<std::vector<char>> adj(nv, std::vector<char>(nv, 0));
    for (auto [a, b] : g.edges)
        adj[a][b] = adj[b][a] = 1;
    std::vector<int> chosen;
    std::function<bool(int)> rec = [&](int c) {
        if (c == k)
            return true;
        for (int v = 0; v < nv; ++v) {
            if (g.color[v] != c)
                continue;
            if (std::any_of(chosen.begin(), chosen.end(), [&](int u) { return adj[u][v]; }))
                continue;
            chosen.push_back(v);
            if (rec(c + 1))
                return true;
            chosen.pop_back();
        }
        return false;
    };
    if (rec(0))
        return chosen;
    return std::nullopt;
}

// ---- clique ----

SimpleGraph demo_simple_graph()
{
    SimpleGraph g;
    g.names = {"v1", "v2", "v3", "v4"};
    g.edges = {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {2, 3}};
    return g;
}

namespace {

void check_simple(const SimpleGraph &g)
{
    const int nv = static_cast<int>(g.names.size());
    std::vector<std::pair<int, int>> seen;
    for (auto [a, b] : g.edges) {
        if (a < 0 || b < 0 || a >= nv || b >= nv || a == b)
            throw RejectedInput("bad edge endpoint");
        seen.push_back(std::minmax(a, b));
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw RejectedInput("duplicate edge");
}

} // namespace

CliqueGadget gen_clique(const SimpleGraph &g, int k)
{
    check_simple(g);
    if (k < 0)
        throw RejectedInput("negative clique size");
    const int nv = static_cast<int>(g.names.size()), ne = static_cast<int>(g.edges.size());
    const int kk = k * (k - 1) / 2;
    CliqueGadget out;
    if (k > nv || ne < kk) {
        // Too few vertices or edges: the selection hospitals could stay closed without blocking,
        // so emit a fixed no-instance instead (the three-cycle with indifferent hospitals).
        InstanceBuilder b(Variant::ha);
        for (int i = 0; i < 3; ++i)
            b.add_resident("r" + num(i));
        for (int i = 0; i < 3; ++i)
            b.add_hospital("h" + num(i), 2);
        for (int i = 0; i < 3; ++i)
            b.resident_strict(i, {i, (i + 1) % 3});
        for (int h = 0; h < 3; ++h)
            b.hospital_indifferent(h, {std::min(h, (h + 2) % 3), std::max(h, (h + 2) % 3)});
        out.inst = checked(b.finish());
        return out;
    }
    InstanceBuilder b(Variant::ha);
    for (int v = 0; v < nv; ++v)
        out.vertex_resident.push_back(b.add_resident("rv_" + g.names[v]));
    for (auto [a, c] : g.edges)
        out.edge_resident.push_back(b.add_resident("re_" + g.names[a] + "_" + g.names[c]));
    for (int i = 0; i < k; ++i)
        out.filling.push_back(b.add_resident("rfill" + num(i)));
    int rstar = b.add_resident("rstar");
    int rp[3];
    for (int i = 0; i < 3; ++i)
        rp[i] = b.add_resident("rp" + num(i));

    for (int v = 0; v < nv; ++v)
        out.vertex_hospital.push_back(b.add_hospital("h_" + g.names[v], 1, 1));
    for (auto [a, c] : g.edges)
        out.edge_hospital.push_back(b.add_hospital("h_" + g.names[a] + "_" + g.names[c], 1, 1));
    for (int i = 0; i < k; ++i)
        out.vert_select.push_back(b.add_hospital("hvert" + num(i), 1, 1));
    for (int i = 0; i < kk; ++i)
        out.edge_select.push_back(b.add_hospital("hedge" + num(i), 1, 1));
    int hp[3];
    for (int i = 0; i < 3; ++i)
        hp[i] = b.add_hospital("hp" + num(i), 2, 2);

    for (int v = 0; v < nv; ++v) {
        std::vector<int> list = out.vert_select;
        for (int e = 0; e < ne; ++e)
            if (g.edges[e].first == v || g.edges[e].second == v)
                list.push_back(out.edge_hospital[e]);
        list.push_back(out.vertex_hospital[v]);
        b.resident_strict(out.vertex_resident[v], list);
    }
    for (int e = 0; e < ne; ++e) {
        std::vector<int> list = out.edge_select;
        list.push_back(out.edge_hospital[e]);
        b.resident_strict(out.edge_resident[e], list);
    }
    for (int i = 0; i < k; ++i)
        b.resident_strict(out.filling[i], out.vertex_hospital);
    std::vector<int> star = out.vertex_hospital;
    star.push_back(hp[0]);
    b.resident_strict(rstar, star);
    b.resident_strict(rp[0], {hp[0], hp[1]});
    b.resident_strict(rp[1], {hp[1], hp[2]});
    b.resident_strict(rp[2], {hp[2], hp[0]});
    out.inst = checked(b.finish());
    return out;
}

std::vector<int> CliqueGadget::to_clique(const Matching &m) const
{
    std::vector<int> out;
    for (size_t v = 0; v < vertex_resident.size(); ++v)
        if (std::find(vert_select.begin(), vert_select.end(), m[vertex_resident[v]]) != vert_select.end())
            out.push_back(static_cast<int>(v));
    return out;
}

std::optional<std::vector<int>> brute_force_clique(const SimpleGraph &g, int k)
{
    check_simple(g);
    const int nv = static_cast<int>(g.names.size());
    std::vector<std::vector<char>> adj(nv, std::vector<char>(nv, 0));
    for (auto [a, b] : g.edges)
        adj[a][b] = adj[b][a] = 1;
    std::vector<int> chosen;
    std::function<bool(int)> rec = [&](int from) {
        if (static_cast<int>(chosen.size()) == k)
            return true;
        for (int v = from; v < nv; ++v) {
            if (!std::all_of(chosen.begin(), chosen.end(), [&](int u) { return adj[u][v]; }))
                continue;
            chosen.push_back(v);
            if (rec(v + 1))
                return true;
            chosen.pop_back();
        }
        return false;
    };
    if (rec(0))
        return chosen;
    return std::nullopt;
}

// ---- stable marriage with ties ----

namespace {

struct SmtiRanks {
    std::vector<std::vector<int>> man, woman; // -1 = not mutually acceptable

    explicit SmtiRanks(const SmtiInstance &s)
    {
        const int nm = static_cast<int>(s.men.size()), nw = static_cast<int>(s.women.size());
        std::vector<std::vector<int>> mr(nm, std::vector<int>(nw, -1)), wr(nw, std::vector<int>(nm, -1));
        for (int m = 0; m < nm; ++m)
            for (size_t g = 0; g < s.men[m].size(); ++g)
                for (int w : s.men[m][g]) {
                    if (w < 0 || w >= nw || mr[m][w] >= 0)
                        throw RejectedInput("marriage instance: bad or repeated woman in a man's list");
                    mr[m][w] = static_cast<int>(g);
                }
        for (int w = 0; w < nw; ++w)
            for (size_t g = 0; g < s.women[w].size(); ++g)
                for (int m : s.women[w][g]) {
                    if (m < 0 || m >= nm || wr[w][m] >= 0)
                        throw RejectedInput("marriage instance: bad or repeated man in a woman's list");
                    wr[w][m] = static_cast<int>(g);
                }
        man = mr;
        woman = wr;
        for (int m = 0; m < nm; ++m)
            for (int w = 0; w < nw; ++w)
                if (mr[m][w] < 0 || wr[w][m] < 0)
                    man[m][w] = woman[w][m] = -1;
    }
};

} // namespace

SmtiGadget gen_smti(const SmtiInstance &s)
{
    const SmtiRanks rk(s);
    const int nm = static_cast<int>(s.men.size()), nw = static_cast<int>(s.women.size());
    SmtiGadget out;
    InstanceBuilder b(Variant::hr_ties);
    for (int m = 0; m < nm; ++m)
        out.man_resident.push_back(b.add_resident("rm" + num(m)));
    for (int w = 0; w < nw; ++w)
        out.woman_resident.push_back(b.add_resident("rw" + num(w)));
    std::vector<int> rstar(nm), rp(nm), rpp(nm), rppp(nm);
    for (int m = 0; m < nm; ++m) {
        rstar[m] = b.add_resident("rstar" + num(m));
        rp[m] = b.add_resident("rp" + num(m));
        rpp[m] = b.add_resident("rpp" + num(m));
        rppp[m] = b.add_resident("rppp" + num(m));
    }
    out.pair_hospital.assign(nm, std::vector<int>(nw, -1));
    for (int m = 0; m < nm; ++m)
        for (int w = 0; w < nw; ++w)
            if (rk.man[m][w] >= 0) {
                int h = b.add_hospital("h_m" + num(m) + "_w" + num(w), 2);
                out.pair_hospital[m][w] = h;
                b.hospital_prefs(h, {{out.man_resident[m], out.woman_resident[w]}});
            }
    std::vector<int> hstar(nm), hm(nm), hmp(nm), hmpp(nm);
    for (int m = 0; m < nm; ++m) {
        hstar[m] = b.add_hospital("hstar" + num(m), 2);
        hm[m] = b.add_hospital("hm" + num(m), 2);
        hmp[m] = b.add_hospital("hmp" + num(m), 2);
        hmpp[m] = b.add_hospital("hmpp" + num(m), 2);
    }
    auto translate = [&](const TieGroups &groups, auto hosp) {
        TieGroups outg;
        for (const auto &grp : groups) {
            std::vector<int> g2;
            for (int x : grp)
                if (hosp(x) >= 0)
                    g2.push_back(hosp(x));
            if (!g2.empty())
                outg.push_back(g2);
        }
        return outg;
    };
    for (int m = 0; m < nm; ++m) {
        auto groups = translate(s.men[m], [&](int w) { return out.pair_hospital[m][w]; });
        groups.push_back({hstar[m]});
        b.resident_prefs(out.man_resident[m], groups);
        b.resident_strict(rstar[m], {hstar[m], hm[m]});
        b.resident_strict(rp[m], {hm[m], hmp[m]});
        b.resident_strict(rpp[m], {hmp[m], hmpp[m]});
        b.resident_strict(rppp[m], {hmpp[m], hm[m]});
    }
    for (int w = 0; w < nw; ++w)
        b.resident_prefs(out.woman_resident[w], translate(s.women[w], [&](int m) { return out.pair_hospital[m][w]; }));
    out.inst = checked(b.finish());
    return out;
}

Matching SmtiGadget::from_marriage(const std::vector<int> &partner) const
{
    const int nm = static_cast<int>(man_resident.size());
    if (static_cast<int>(partner.size()) != nm)
        throw RejectedInput("marriage has the wrong number of men");
    Matching mt(inst.n());
    for (int m = 0; m < nm; ++m) {
        int w = partner[m];
        if (w >= 0) {
            int h = pair_hospital.at(m).at(w);
            if (h < 0)
                throw RejectedInput("marriage pairs a man with an unacceptable woman");
            mt[man_resident[m]] = mt[woman_resident[w]] = h;
        }
        // penalizing residents follow the man's resident block
        int base = static_cast<int>(woman_resident.size()) + nm + 4 * m;
        int hm = inst.hospital_index("hm" + num(m)), hmpp = inst.hospital_index("hmpp" + num(m));
        mt[base] = mt[base + 1] = hm;
        mt[base + 2] = mt[base + 3] = hmpp;
    }
    return mt;
}

std::vector<int> SmtiGadget::to_marriage(const Matching &mt) const
{
    std::vector<int> partner(man_resident.size(), -1);
    for (size_t m = 0; m < man_resident.size(); ++m)
        for (size_t w = 0; w < woman_resident.size(); ++w)
            if (pair_hospital[m][w] >= 0 && mt[man_resident[m]] == pair_hospital[m][w])
                partner[m] = static_cast<int>(w);
    return partner;
}

std::optional<std::vector<int>> brute_force_complete_smti(const SmtiInstance &s)
{
    const SmtiRanks rk(s);
    const int nm = static_cast<int>(s.men.size()), nw = static_cast<int>(s.women.size());
    std::vector<int> partner(nm, -1), wife_of(nw, -1);
    auto stable = [&] {
        for (int m = 0; m < nm; ++m)
            for (int w = 0; w < nw; ++w) {
                if (rk.man[m][w] < 0 || partner[m] == w)
                    continue;
                bool mw = rk.man[m][w] < rk.man[m][partner[m]];
                bool wm = wife_of[w] < 0 || rk.woman[w][m] < rk.woman[w][wife_of[w]];
                if (mw && wm)
                    return false;
            }
        return true;
    };
    std::function<bool(int)> rec = [&](int m) {
        if (m == nm)
            return stable();
        for (int w = 0; w < nw; ++w) {
            if (rk.man[m][w] < 0 || wife_of[w] >= 0)
                continue;
            partner[m] = w;
            wife_of[w] = m;
            if (rec(m + 1))
                return true;
            partner[m] = -1;
            wife_of[w] = -1;
        }
        return false;
    };
    if (rec(0))
        return partner;
    return std::nullopt;
}

} // namespace hrql
