#include <hrql/instance.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace hrql {

const char *variant_name(Variant v)
{
    switch (v) {
    case Variant::hr: return "hr";
    case Variant::hr_ties: return "hr_ties";
    case Variant::ha: return "ha";
    }
    return "?";
}

std::vector<int> Instance::acceptors(int h) const
{
    const auto &hp = hospitals[h];
    if (hp.indifferent)
        return hp.accepted;
    std::vector<int> out;
    for (const auto &g : hp.prefs)
        out.insert(out.end(), g.begin(), g.end());
    return out;
}

std::vector<int> Instance::accepted_by(int r) const
{
    std::vector<int> out;
    for (const auto &g : residents[r].prefs)
        out.insert(out.end(), g.begin(), g.end());
    return out;
}

static bool any_tie(const TieGroups &groups)
{
    return std::any_of(groups.begin(), groups.end(), [](const auto &g) { return g.size() > 1; });
}

bool Instance::has_resident_ties() const
{
    return std::any_of(residents.begin(), residents.end(), [](const Resident &r) { return any_tie(r.prefs); });
}

bool Instance::has_hospital_ties() const
{
    return std::any_of(hospitals.begin(), hospitals.end(),
                       [](const Hospital &h) { return h.indifferent || any_tie(h.prefs); });
}

bool Instance::all_unbounded() const
{
    return std::all_of(hospitals.begin(), hospitals.end(), [](const Hospital &h) { return !h.upper; });
}

int Instance::max_lower() const
{
    int mx = 0;
    for (const auto &h : hospitals)
        mx = std::max(mx, h.lower);
    return mx;
}

int Instance::resident_index(const std::string &name) const
{
    for (int r = 0; r < n(); ++r)
        if (residents[r].name == name)
            return r;
    return -1;
}

int Instance::hospital_index(const std::string &name) const
{
    for (int h = 0; h < m(); ++h)
        if (hospitals[h].name == name)
            return h;
    return -1;
}

Ranks::Ranks(const Instance &inst)
    : n_(inst.n()), m_(inst.m()), res_(static_cast<size_t>(n_) * m_, -1), hos_(static_cast<size_t>(n_) * m_, -1)
{
    for (int r = 0; r < n_; ++r) {
        const auto &groups = inst.residents[r].prefs;
        for (int g = 0; g < static_cast<int>(groups.size()); ++g)
            for (int h : groups[g])
                if (h >= 0 && h < m_)
                    res_[r * m_ + h] = g;
    }
    for (int h = 0; h < m_; ++h) {
        const auto &hp = inst.hospitals[h];
        if (hp.indifferent) {
            for (int r : hp.accepted)
                if (r >= 0 && r < n_)
                    hos_[h * n_ + r] = 0;
            continue;
        }
        for (int g = 0; g < static_cast<int>(hp.prefs.size()); ++g)
            for (int r : hp.prefs[g])
                if (r >= 0 && r < n_)
                    hos_[h * n_ + r] = g;
    }
}

std::vector<int> Matching::members(int h) const
{
    std::vector<int> out;
    for (int r = 0; r < size(); ++r)
        if (assign[r] == h)
            out.push_back(r);
    return out;
}

std::vector<int> Matching::loads(int m) const
{
    std::vector<int> out(m, 0);
    for (int h : assign)
        if (h >= 0 && h < m)
            ++out[h];
    return out;
}

int Matching::open_count(int m) const
{
    auto l = loads(m);
    return static_cast<int>(std::count_if(l.begin(), l.end(), [](int x) { return x > 0; }));
}

std::string to_string(const Instance &inst, const Matching &m)
{
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int h = 0; h < inst.m(); ++h) {
        auto mem = m.members(h);
        if (mem.empty())
            continue;
        os << (first ? "" : ", ") << '(' << inst.hospitals[h].name << ",{";
        for (size_t i = 0; i < mem.size(); ++i)
            os << (i ? "," : "") << inst.residents[mem[i]].name;
        os << "})";
        first = false;
    }
    os << '}';
    return os.str();
}

namespace {

void check_list(std::vector<std::string> &out, const std::string &owner, const TieGroups &groups, int bound,
                const char *kind)
{
    std::set<int> seen;
    for (const auto &g : groups) {
        if (g.empty())
            out.push_back("empty tie-group in list of " + owner);
        for (int x : g) {
            if (x < 0 || x >= bound)
                out.push_back("unknown " + std::string(kind) + " id " + std::to_string(x) + " in list of " + owner);
            else if (!seen.insert(x).second)
                out.push_back("duplicate " + std::string(kind) + " id " + std::to_string(x) + " in list of " + owner);
        }
    }
}

} // namespace

std::vector<std::string> validate_instance(const Instance &inst)
{
    std::vector<std::string> out;
    const int n = inst.n(), m = inst.m();

    for (int r = 0; r < n; ++r) {
        const auto &res = inst.residents[r];
        check_list(out, res.name, res.prefs, m, "hospital");
        if (inst.variant == Variant::hr && any_tie(res.prefs))
            out.push_back("tie in list of " + res.name + " but variant is hr");
    }
    for (int h = 0; h < m; ++h) {
        const auto &hp = inst.hospitals[h];
        if (hp.lower < 1)
            out.push_back("l<1 at " + hp.name);
        if (hp.upper && *hp.upper < hp.lower)
            out.push_back("l>u at " + hp.name);
        if (hp.indifferent) {
            check_list(out, hp.name, hp.accepted.empty() ? TieGroups{} : TieGroups{hp.accepted}, n, "resident");
            if (!hp.prefs.empty())
                out.push_back("indifferent hospital " + hp.name + " also has a preference list");
            if (inst.variant != Variant::ha)
                out.push_back("indifferent hospital " + hp.name + " outside variant ha");
        } else {
            check_list(out, hp.name, hp.prefs, n, "resident");
            if (inst.variant == Variant::ha)
                out.push_back("hospital " + hp.name + " is not indifferent but variant is ha");
            if (inst.variant == Variant::hr && any_tie(hp.prefs))
                out.push_back("tie in list of " + hp.name + " but variant is hr");
        }
    }

    std::set<std::string> names;
    for (const auto &r : inst.residents)
        if (!names.insert("r:" + r.name).second)
            out.push_back("duplicate resident name " + r.name);
    for (const auto &h : inst.hospitals)
        if (!names.insert("h:" + h.name).second)
            out.push_back("duplicate hospital name " + h.name);

    // Symmetric acceptability.
    std::set<std::pair<int, int>> from_res, from_hos;
    for (int r = 0; r < n; ++r)
        for (int h : inst.accepted_by(r))
            if (h >= 0 && h < m)
                from_res.insert({r, h});
    for (int h = 0; h < m; ++h)
        for (int r : inst.acceptors(h))
            if (r >= 0 && r < n)
                from_hos.insert({r, h});
    for (auto [r, h] : from_res)
        if (!from_hos.count({r, h}))
            out.push_back("asymmetry: " + inst.residents[r].name + " lists " + inst.hospitals[h].name +
                          " but not vice versa");
    for (auto [r, h] : from_hos)
        if (!from_res.count({r, h}))
            out.push_back("asymmetry: " + inst.hospitals[h].name + " lists " + inst.residents[r].name +
                          " but not vice versa");
    return out;
}

void check_ids(const Instance &inst, const Matching &m)
{
    if (m.size() != inst.n())
        throw RejectedInput("matching covers " + std::to_string(m.size()) + " residents, instance has " +
                            std::to_string(inst.n()));
    for (int r = 0; r < m.size(); ++r)
        if (m[r] != kUnmatched && (m[r] < 0 || m[r] >= inst.m()))
            throw RejectedInput("unknown hospital id " + std::to_string(m[r]) + " for resident " +
                                inst.residents[r].name);
}

int InstanceBuilder::add_resident(const std::string &name)
{
    inst_.residents.push_back({name, {}});
    return inst_.n() - 1;
}

int InstanceBuilder::add_hospital(const std::string &name, int lower, std::optional<int> upper)
{
    Hospital h;
    h.name = name;
    h.lower = lower;
    h.upper = upper;
    inst_.hospitals.push_back(std::move(h));
    hosp_set_.push_back(false);
    return inst_.m() - 1;
}

void InstanceBuilder::resident_prefs(int r, TieGroups groups) { inst_.residents[r].prefs = std::move(groups); }

void InstanceBuilder::resident_strict(int r, const std::vector<int> &order)
{
    inst_.residents[r].prefs = singletons(order);
}

void InstanceBuilder::hospital_prefs(int h, TieGroups groups)
{
    inst_.hospitals[h].prefs = std::move(groups);
    inst_.hospitals[h].indifferent = false;
    hosp_set_[h] = true;
}

void InstanceBuilder::hospital_strict(int h, const std::vector<int> &order) { hospital_prefs(h, singletons(order)); }

void InstanceBuilder::hospital_indifferent(int h, std::vector<int> accepted)
{
    auto &hp = inst_.hospitals[h];
    hp.indifferent = true;
    hp.prefs.clear();
    hp.accepted = std::move(accepted);
    hosp_set_[h] = true;
}

Instance InstanceBuilder::finish()
{
    std::vector<std::vector<int>> acc(inst_.m());
    for (int r = 0; r < inst_.n(); ++r)
        for (int h : inst_.accepted_by(r))
            if (h >= 0 && h < inst_.m())
                acc[h].push_back(r);
    for (int h = 0; h < inst_.m(); ++h) {
        if (hosp_set_[h])
            continue;
        if (inst_.variant == Variant::ha)
            hospital_indifferent(h, acc[h]);
        else
            hospital_strict(h, acc[h]);
        hosp_set_[h] = false;
    }
    return inst_;
}

TieGroups singletons(const std::vector<int> &order)
{
    TieGroups g;
    for (int x : order)
        g.push_back({x});
    return g;
}

} // namespace hrql
