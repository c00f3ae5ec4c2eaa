#include <hrql/ilp.hpp>

#include <hrql/enumsolver.hpp>
#include <hrql/stability.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace hrql {

namespace {

std::string sanitize(const std::string &s)
{
    std::string out;
    for (char c : s)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
    return out;
}

TieGroups canonical(const TieGroups &g)
{
    TieGroups c = g;
    for (auto &grp : c)
        std::sort(grp.begin(), grp.end());
    return c;
}

// Hospitals r weakly prefers to h (h included), restricted to `allowed` if given.
std::vector<int> weakly_better(const Ranks &rk, int r, int h, const std::vector<int> &allowed)
{
    std::vector<int> out;
    int rh = rk.resident(r, h);
    for (int h2 : allowed) {
        int v = rk.resident(r, h2);
        if (v >= 0 && v <= rh)
            out.push_back(h2);
    }
    return out;
}

std::vector<int> all_hospitals(int m)
{
    std::vector<int> v(m);
    for (int h = 0; h < m; ++h)
        v[h] = h;
    return v;
}

} // namespace

int IlpModel::add_var(std::string name, std::int64_t lo, std::int64_t hi, VarMeta m, bool binary)
{
    vars.push_back({std::move(name), lo, hi, binary});
    meta.push_back(m);
    return static_cast<int>(vars.size()) - 1;
}

void IlpModel::add(std::string name, std::vector<IlpTerm> terms, Rel rel, std::int64_t rhs)
{
    for (const auto &t : terms)
        if (t.var < 0 || t.var >= static_cast<int>(vars.size()))
            throw InternalInvariant("constraint " + name + " references an undeclared variable");
    constraints.push_back({std::move(name), std::move(terms), rel, rhs});
}

std::vector<ResidentType> resident_types(const Instance &inst, const std::vector<std::vector<int>> &signatures)
{
    std::vector<ResidentType> types;
    std::map<std::pair<TieGroups, std::vector<int>>, int> index;
    for (int r = 0; r < inst.n(); ++r) {
        std::vector<int> sig = signatures.empty() ? std::vector<int>{} : signatures.at(r);
        auto key = std::make_pair(canonical(inst.residents[r].prefs), sig);
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(key, static_cast<int>(types.size()));
            types.push_back({key.first, sig, {r}});
        } else {
            types[it->second].members.push_back(r);
        }
    }
    return types;
}

IlpModel build_haqlu_model(const Instance &inst)
{
    for (const auto &h : inst.hospitals)
        if (!h.indifferent)
            throw WrongVariant("HA model needs indifferent hospitals");
    IlpModel model;
    model.types = resident_types(inst);
    const int n = inst.n(), m = inst.m(), t = static_cast<int>(model.types.size());
    const Ranks rk(inst);
    std::vector<std::string> hn(m);
    for (int h = 0; h < m; ++h)
        hn[h] = sanitize(inst.hospitals[h].name);

    std::vector<std::vector<int>> x(t, std::vector<int>(m));
    for (int i = 0; i < t; ++i)
        for (int h = 0; h < m; ++h)
            x[i][h] = model.add_var("x_t" + std::to_string(i) + "_" + hn[h], 0, model.types[i].count(),
                                    {VarMeta::Role::x, i, h});
    std::vector<int> o(m), y(m);
    for (int h = 0; h < m; ++h)
        o[h] = model.add_var("o_" + hn[h], 0, 1, {VarMeta::Role::o, -1, h}, true);
    for (int h = 0; h < m; ++h)
        y[h] = model.add_var("y_" + hn[h], 0, 1, {VarMeta::Role::y, -1, h}, true);

    const auto hs = all_hospitals(m);
    auto rep = [&](int i) { return model.types[i].members.front(); };
    // a hospital with u > n is never full; n+1 keeps the big-M in (1) valid
    auto cap = [&](int h) { return std::min(inst.upper(h), n + 1); };

    // (1) open and not full forces y_h
    for (int h = 0; h < m; ++h) {
        std::vector<IlpTerm> terms;
        for (int i = 0; i < t; ++i)
            terms.push_back({x[i][h], 1});
        terms.push_back({y[h], n});
        terms.push_back({o[h], -cap(h)});
        model.add("c1_" + hn[h], terms, Rel::ge, 0);
    }
    // (2) no blocking pair at an undersubscribed hospital
    for (int i = 0; i < t; ++i)
        for (int h = 0; h < m; ++h) {
            if (!rk.acceptable(rep(i), h))
                continue;
            std::vector<IlpTerm> terms;
            for (int h2 : weakly_better(rk, rep(i), h, hs))
                terms.push_back({x[i][h2], 1});
            terms.push_back({y[h], -n});
            model.add("c2_t" + std::to_string(i) + "_" + hn[h], terms, Rel::ge, model.types[i].count() - n);
        }
    // (3) closed hospitals: fewer than l(h) residents strictly prefer h to their assignment
    for (int h = 0; h < m; ++h) {
        std::vector<IlpTerm> terms;
        std::int64_t want = 0;
        for (int i = 0; i < t; ++i) {
            if (!rk.acceptable(rep(i), h))
                continue;
            want += model.types[i].count();
            for (int h2 : weakly_better(rk, rep(i), h, hs))
                terms.push_back({x[i][h2], 1});
        }
        terms.push_back({o[h], n});
        model.add("c3_" + hn[h], terms, Rel::ge, want - inst.lower(h) + 1);
    }
    // (4) quotas
    for (int h = 0; h < m; ++h) {
        std::vector<IlpTerm> lo, hi;
        for (int i = 0; i < t; ++i) {
            lo.push_back({x[i][h], 1});
            hi.push_back({x[i][h], 1});
        }
        lo.push_back({o[h], -inst.lower(h)});
        hi.push_back({o[h], -cap(h)});
        model.add("c4l_" + hn[h], lo, Rel::ge, 0);
        model.add("c4u_" + hn[h], hi, Rel::le, 0);
    }
    // (5) type counts
    for (int i = 0; i < t; ++i) {
        std::vector<IlpTerm> terms;
        for (int h = 0; h < m; ++h)
            terms.push_back({x[i][h], 1});
        model.add("c5_t" + std::to_string(i), terms, Rel::le, model.types[i].count());
    }
    // (6) acceptability
    for (int i = 0; i < t; ++i)
        for (int h = 0; h < m; ++h)
            if (!rk.acceptable(rep(i), h))
                model.add("c6_t" + std::to_string(i) + "_" + hn[h], {{x[i][h], 1}}, Rel::eq, 0);
    return model;
}

IlpModel build_hrqlut_model(const Instance &inst, const Guess &g)
{
    const int n = inst.n(), m = inst.m();
    const Ranks rk(inst);
    std::vector<char> is_open(m, 0), is_full(m, 0);
    for (int h : g.open) {
        if (h < 0 || h >= m || is_open[h])
            throw RejectedInput("guess: bad open hospital id");
        is_open[h] = 1;
    }
    if (static_cast<int>(g.worst.size()) != m)
        throw RejectedInput("guess: worst-assignee vector has wrong size");
    for (int h = 0; h < m; ++h) {
        int w = g.worst[h];
        if (!is_open[h]) {
            if (w != -1)
                throw RejectedInput("guess: worst assignee given for closed hospital " + inst.hospitals[h].name);
            continue;
        }
        if (w < 0 || w >= n || rk.hospital(h, w) < 0)
            throw RejectedInput("guess: worst assignee of " + inst.hospitals[h].name + " is not acceptable to it");
    }
    for (int h : g.full) {
        if (h < 0 || h >= m || !is_open[h] || is_full[h])
            throw RejectedInput("guess: full set is not a subset of the open set");
        is_full[h] = 1;
    }
    std::vector<int> open = g.open;
    std::sort(open.begin(), open.end());

    // z_r^h over the open hospitals; unacceptable residents count as worse than r_h
    std::vector<std::vector<int>> sig(n);
    for (int r = 0; r < n; ++r)
        for (int h : open) {
            int a = rk.hospital(h, r), b = rk.hospital(h, g.worst[h]);
            sig[r].push_back(a < 0 ? -1 : a < b ? 1 : a == b ? 0 : -1);
        }
    auto zpos = [&](int h) { return static_cast<int>(std::lower_bound(open.begin(), open.end(), h) - open.begin()); };

    IlpModel model;
    model.types = resident_types(inst, sig);
    const int t = static_cast<int>(model.types.size());
    std::vector<std::string> hn(m);
    for (int h = 0; h < m; ++h)
        hn[h] = sanitize(inst.hospitals[h].name);
    auto rep = [&](int i) { return model.types[i].members.front(); };
    auto z = [&](int i, int h) { return model.types[i].signature[zpos(h)]; };

    std::vector<std::vector<int>> x(t, std::vector<int>(m, -1));
    for (int i = 0; i < t; ++i)
        for (int h : open)
            x[i][h] = model.add_var("x_g" + std::to_string(i) + "_" + hn[h], 0, model.types[i].count(),
                                    {VarMeta::Role::x, i, h});
    auto better_sum = [&](int i, int h) {
        std::vector<IlpTerm> terms;
        for (int h2 : weakly_better(rk, rep(i), h, open))
            terms.push_back({x[i][h2], 1});
        return terms;
    };
    auto load = [&](int h) {
        std::vector<IlpTerm> terms;
        for (int i = 0; i < t; ++i)
            terms.push_back({x[i][h], 1});
        return terms;
    };
    auto tag = [&](const char *c, int i, int h) { return std::string(c) + "_g" + std::to_string(i) + "_" + hn[h]; };

    // (1a) residents h prefers to r_h get h or better
    for (int h : open)
        for (int i = 0; i < t; ++i)
            if (z(i, h) == 1 && rk.acceptable(rep(i), h))
                model.add(tag("c1a", i, h), better_sum(i, h), Rel::ge, model.types[i].count());
    // (1b) hospitals with room leave nobody wanting them
    for (int h : open)
        if (!is_full[h])
            for (int i = 0; i < t; ++i)
                if (rk.acceptable(rep(i), h))
                    model.add(tag("c1b", i, h), better_sum(i, h), Rel::ge, model.types[i].count());
    // (2) closed hospitals: fewer than l(h) residents strictly prefer h to their assignment
    for (int h = 0; h < m; ++h) {
        if (is_open[h])
            continue;
        std::vector<IlpTerm> terms;
        std::int64_t want = 0;
        for (int i = 0; i < t; ++i) {
            if (!rk.acceptable(rep(i), h))
                continue;
            want += model.types[i].count();
            for (auto term : better_sum(i, h))
                terms.push_back(term);
        }
        model.add("c2_" + hn[h], terms, Rel::ge, want - inst.lower(h) + 1);
    }
    // (3) quotas
    for (int h : open) {
        model.add("c3l_" + hn[h], load(h), Rel::ge, inst.lower(h));
        model.add("c3u_" + hn[h], load(h), Rel::le, inst.upper(h));
    }
    // (4) group counts
    for (int i = 0; i < t; ++i) {
        std::vector<IlpTerm> terms;
        for (int h : open)
            terms.push_back({x[i][h], 1});
        model.add("c4_g" + std::to_string(i), terms, Rel::le, model.types[i].count());
    }
    // (5) acceptability
    for (int i = 0; i < t; ++i)
        for (int h : open)
            if (!rk.acceptable(rep(i), h))
                model.add(tag("c5", i, h), {{x[i][h], 1}}, Rel::eq, 0);
    // (6), (7) full or not
    for (int h : open) {
        if (is_full[h])
            model.add("c6_" + hn[h], load(h), Rel::eq, inst.upper(h));
        else
            model.add("c7_" + hn[h], load(h), Rel::le, inst.upper(h) - 1);
    }
    // (8) nobody worse than r_h
    for (int h : open)
        for (int i = 0; i < t; ++i)
            if (z(i, h) == -1)
                model.add(tag("c8", i, h), {{x[i][h], 1}}, Rel::eq, 0);
    // (9) some assignee ties with r_h
    for (int h : open) {
        std::vector<IlpTerm> terms;
        for (int i = 0; i < t; ++i)
            if (z(i, h) == 0)
                terms.push_back({x[i][h], 1});
        model.add("c9_" + hn[h], terms, Rel::ge, 1);
    }
    return model;
}

void enumerate_guesses(const Instance &inst, const std::function<bool(const Guess &)> &visit)
{
    const int m = inst.m();
    if (m > 30)
        throw RejectedInput("too many hospitals for guess enumeration");
    std::vector<std::vector<int>> acc(m);
    for (int h = 0; h < m; ++h) {
        acc[h] = inst.acceptors(h);
        std::sort(acc[h].begin(), acc[h].end());
    }
    for (auto mask : subsets_by_size(m)) {
        Guess g;
        g.worst.assign(m, -1);
        bool possible = true;
        for (int h = 0; h < m; ++h)
            if (mask >> h & 1) {
                g.open.push_back(h);
                possible = possible && !acc[h].empty();
            }
        if (!possible)
            continue;
        const int k = static_cast<int>(g.open.size());
        const auto full_masks = subsets_by_size(k);
        std::vector<size_t> pick(k, 0);
        while (true) {
            for (int j = 0; j < k; ++j)
                g.worst[g.open[j]] = acc[g.open[j]][pick[j]];
            for (auto fm : full_masks) {
                g.full.clear();
                for (int j = 0; j < k; ++j)
                    if (fm >> j & 1)
                        g.full.push_back(g.open[j]);
                if (!visit(g))
                    return;
            }
            int j = k - 1;
            while (j >= 0 && ++pick[j] == acc[g.open[j]].size())
                pick[j--] = 0;
            if (j < 0)
                break;
        }
    }
}

std::int64_t count_guesses(const Instance &inst)
{
    std::int64_t c = 0;
    enumerate_guesses(inst, [&](const Guess &) {
        ++c;
        return true;
    });
    return c;
}

namespace {

struct Row {
    std::vector<IlpTerm> terms;
    std::int64_t b; // sum <= b
};

std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

class NaiveSearch {
public:
    NaiveSearch(const IlpModel &model, std::int64_t budget) : budget_(budget)
    {
        for (const auto &c : model.constraints) {
            if (c.rel != Rel::ge)
                rows_.push_back({c.terms, c.rhs});
            if (c.rel != Rel::le) {
                Row r{c.terms, -c.rhs};
                for (auto &t : r.terms)
                    t.coef = -t.coef;
                rows_.push_back(r);
            }
        }
    }

    std::optional<std::vector<std::int64_t>> run(std::vector<std::int64_t> lo, std::vector<std::int64_t> hi)
    {
        if (!propagate(lo, hi) || !dfs(lo, hi))
            return std::nullopt;
        return result_;
    }

private:
    bool propagate(std::vector<std::int64_t> &lo, std::vector<std::int64_t> &hi) const
    {
        for (size_t v = 0; v < lo.size(); ++v)
            if (lo[v] > hi[v])
                return false;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto &row : rows_) {
                std::int64_t minact = 0;
                for (const auto &t : row.terms)
                    minact += t.coef > 0 ? t.coef * lo[t.var] : t.coef * hi[t.var];
                if (minact > row.b)
                    return false;
                for (const auto &t : row.terms) {
                    if (t.coef == 0)
                        continue;
                    std::int64_t own = t.coef > 0 ? t.coef * lo[t.var] : t.coef * hi[t.var];
                    std::int64_t slack = row.b - (minact - own);
                    if (t.coef > 0) {
                        std::int64_t nh = floor_div(slack, t.coef);
                        if (nh < hi[t.var]) {
                            hi[t.var] = nh;
                            changed = true;
                        }
                    } else {
                        std::int64_t nl = ceil_div(slack, t.coef);
                        if (nl > lo[t.var]) {
                            lo[t.var] = nl;
                            changed = true;
                        }
                    }
                    if (lo[t.var] > hi[t.var])
                        return false;
                    minact = 0;
                    for (const auto &u : row.terms)
                        minact += u.coef > 0 ? u.coef * lo[u.var] : u.coef * hi[u.var];
                }
            }
        }
        return true;
    }

    bool dfs(const std::vector<std::int64_t> &lo, const std::vector<std::int64_t> &hi)
    {
        if (++nodes_ > budget_)
            throw SolverBudget("naive ILP search exceeded " + std::to_string(budget_) + " nodes");
        size_t v = 0;
        while (v < lo.size() && lo[v] == hi[v])
            ++v;
        if (v == lo.size()) {
            result_ = lo;
            return true;
        }
        for (std::int64_t val = lo[v]; val <= hi[v]; ++val) {
            auto l2 = lo, h2 = hi;
            l2[v] = h2[v] = val;
            if (propagate(l2, h2) && dfs(l2, h2))
                return true;
        }
        return false;
    }

    std::vector<Row> rows_;
    std::int64_t budget_;
    std::int64_t nodes_ = 0;
    std::vector<std::int64_t> result_;
};

} // namespace

std::optional<std::vector<std::int64_t>> solve_naive(const IlpModel &model, std::int64_t node_budget)
{
    std::vector<std::int64_t> lo, hi;
    for (const auto &v : model.vars) {
        lo.push_back(v.lo);
        hi.push_back(v.hi);
    }
    return NaiveSearch(model, node_budget).run(lo, hi);
}

Matching decode_solution(const Instance &inst, const IlpModel &model, const std::vector<std::int64_t> &values)
{
    if (values.size() != model.vars.size())
        throw InternalInvariant("assignment size does not match the model");
    Matching mt(inst.n());
    std::vector<size_t> used(model.types.size(), 0);
    for (size_t v = 0; v < model.vars.size(); ++v) {
        const auto &md = model.meta[v];
        if (md.role != VarMeta::Role::x)
            continue;
        const auto &members = model.types.at(md.type).members;
        if (values[v] < 0 || used[md.type] + values[v] > members.size())
            throw InternalInvariant("assignment exceeds type count of " + model.vars[v].name);
        for (std::int64_t k = 0; k < values[v]; ++k)
            mt[members[used[md.type]++]] = md.hospital;
    }
    return mt;
}

std::string export_lp(const IlpModel &model)
{
    std::ostringstream out;
    auto name = [&](int v) { return model.vars[v].name; };
    out << "Minimize\n obj:";
    if (!model.vars.empty())
        out << " 0 " << name(0);
    out << "\nSubject To\n";
    for (const auto &c : model.constraints) {
        out << " " << c.name << ":";
        if (c.terms.empty())
            out << " 0 " << (model.vars.empty() ? std::string("x") : name(0));
        bool first = true;
        for (const auto &t : c.terms) {
            std::int64_t a = t.coef;
            if (!first || a < 0)
                out << (a < 0 ? " - " : " + ");
            else
                out << " ";
            a = a < 0 ? -a : a;
            if (a != 1)
                out << a << " ";
            out << name(t.var);
            first = false;
        }
        out << (c.rel == Rel::le ? " <= " : c.rel == Rel::ge ? " >= " : " = ") << c.rhs << "\n";
    }
    out << "Bounds\n";
    for (const auto &v : model.vars)
        out << " " << v.lo << " <= " << v.name << " <= " << v.hi << "\n";
    bool any_general = false, any_binary = false;
    for (const auto &v : model.vars)
        (v.binary ? any_binary : any_general) = true;
    if (any_general) {
        out << "Generals\n";
        for (const auto &v : model.vars)
            if (!v.binary)
                out << " " << v.name << "\n";
    }
    if (any_binary) {
        out << "Binaries\n";
        for (const auto &v : model.vars)
            if (v.binary)
                out << " " << v.name << "\n";
    }
    out << "End\n";
    return out.str();
}

std::optional<Matching> solve_haqlu_ilp(const Instance &inst, std::int64_t node_budget)
{
    auto model = build_haqlu_model(inst);
    auto sol = solve_naive(model, node_budget);
    if (!sol)
        return std::nullopt;
    auto mt = decode_solution(inst, model, *sol);
    if (!check_stability(inst, mt).stable)
        throw InternalInvariant("HA model decoded to an unstable matching: " + to_string(inst, mt));
    return mt;
}

std::optional<Matching> solve_hrqlut_xp(const Instance &inst, std::int64_t node_budget)
{
    std::optional<Matching> found;
    const Ranks rk(inst);
    enumerate_guesses(inst, [&](const Guess &g) {
        auto model = build_hrqlut_model(inst, g);
        auto sol = solve_naive(model, node_budget);
        if (!sol)
            return true;
        auto mt = decode_solution(inst, model, *sol);
        if (!check_stability(inst, rk, mt).stable)
            throw InternalInvariant("guess model decoded to an unstable matching: " + to_string(inst, mt));
        found = mt;
        return false;
    });
    return found;
}

} // namespace hrql
