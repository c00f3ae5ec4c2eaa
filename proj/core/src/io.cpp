#include <hrql/io.hpp>

#include <json.hpp>

#include <fstream>
#include <map>
#include <sstream>

namespace hrql {

using nlohmann::json;

namespace {

std::pair<int, int> locate(const std::string &text, std::size_t byte)
{
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

json parse_json(const std::string &text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        // byte is 1-based position of the offending character
        auto [line, col] = locate(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("syntax error", line, col);
    }
}

const json &field(const json &obj, const char *key, const std::string &where)
{
    if (!obj.is_object() || !obj.contains(key))
        throw RejectedInput(where + ": missing key '" + key + "'");
    return obj.at(key);
}

std::string id_of(const json &obj, const std::string &where)
{
    const auto &v = field(obj, "id", where);
    if (!v.is_string())
        throw RejectedInput(where + ": id must be a string");
    return v.get<std::string>();
}

int integer(const json &v, const std::string &where)
{
    if (!v.is_number_integer())
        throw RejectedInput(where + " must be an integer");
    return v.get<int>();
}

TieGroups groups_of(const json &v, const std::map<std::string, int> &ids, const std::string &owner,
                    const char *kind)
{
    if (!v.is_array())
        throw RejectedInput(owner + ": prefs must be a list of tie-groups");
    TieGroups out;
    for (const auto &grp : v) {
        if (!grp.is_array())
            throw RejectedInput(owner + ": each tie-group must be a list");
        std::vector<int> g;
        for (const auto &x : grp) {
            if (!x.is_string())
                throw RejectedInput(owner + ": ids must be strings");
            auto it = ids.find(x.get<std::string>());
            if (it == ids.end())
                throw RejectedInput("asymmetry: " + owner + " lists unknown " + kind + " " + x.get<std::string>());
            g.push_back(it->second);
        }
        out.push_back(g);
    }
    return out;
}

json names(const Instance &inst, const std::vector<int> &v, bool hospital)
{
    json a = json::array();
    for (int x : v)
        a.push_back(hospital ? inst.hospitals[x].name : inst.residents[x].name);
    return a;
}

json groups_json(const Instance &inst, const TieGroups &g, bool hospital)
{
    json a = json::array();
    for (const auto &grp : g)
        a.push_back(names(inst, grp, hospital));
    return a;
}

} // namespace

Instance parse_instance(const std::string &text)
{
    json doc = parse_json(text);
    if (!doc.is_object())
        throw RejectedInput("instance document must be an object");
    Instance inst;
    const auto &var = field(doc, "variant", "document");
    std::string vs = var.is_string() ? var.get<std::string>() : "";
    if (vs == "hr")
        inst.variant = Variant::hr;
    else if (vs == "hr_ties")
        inst.variant = Variant::hr_ties;
    else if (vs == "ha")
        inst.variant = Variant::ha;
    else
        throw RejectedInput("variant must be one of hr, hr_ties, ha");

    const auto &res = field(doc, "residents", "document");
    const auto &hos = field(doc, "hospitals", "document");
    if (!res.is_array() || !hos.is_array())
        throw RejectedInput("residents and hospitals must be lists");
    std::map<std::string, int> rid, hid;
    for (const auto &r : res) {
        std::string id = id_of(r, "resident");
        if (!rid.emplace(id, static_cast<int>(rid.size())).second)
            throw RejectedInput("duplicate resident id " + id);
        inst.residents.push_back({id, {}});
    }
    for (const auto &h : hos) {
        std::string id = id_of(h, "hospital");
        if (!hid.emplace(id, static_cast<int>(hid.size())).second)
            throw RejectedInput("duplicate hospital id " + id);
        Hospital hp;
        hp.name = id;
        hp.lower = integer(field(h, "lower", id), id + ": lower");
        const auto &u = field(h, "upper", id);
        if (!u.is_null())
            hp.upper = integer(u, id + ": upper");
        inst.hospitals.push_back(hp);
    }
    for (std::size_t i = 0; i < res.size(); ++i)
        inst.residents[i].prefs = groups_of(field(res[i], "prefs", inst.residents[i].name), hid,
                                            inst.residents[i].name, "hospital");
    for (std::size_t i = 0; i < hos.size(); ++i) {
        auto &hp = inst.hospitals[i];
        const auto &h = hos[i];
        bool has_ind = h.contains("indifferent"), has_prefs = h.contains("prefs");
        if (has_ind == has_prefs)
            throw RejectedInput(hp.name + ": give exactly one of prefs or indifferent");
        if (has_ind) {
            hp.indifferent = true;
            json grp = json::array();
            grp.push_back(h.at("indifferent"));
            hp.accepted = groups_of(grp, rid, hp.name, "resident").front();
        } else {
            hp.prefs = groups_of(h.at("prefs"), rid, hp.name, "resident");
        }
    }
    auto errs = validate_instance(inst);
    if (!errs.empty()) {
        std::string msg = "invalid instance: " + errs.front();
        for (std::size_t i = 1; i < errs.size(); ++i)
            msg += "; " + errs[i];
        throw RejectedInput(msg);
    }
    return inst;
}

std::string serialize_instance(const Instance &inst)
{
    json doc;
    doc["variant"] = variant_name(inst.variant);
    json res = json::array();
    for (const auto &r : inst.residents)
        res.push_back({{"id", r.name}, {"prefs", groups_json(inst, r.prefs, true)}});
    json hos = json::array();
    for (const auto &h : inst.hospitals) {
        json o{{"id", h.name}, {"lower", h.lower}};
        o["upper"] = h.upper ? json(*h.upper) : json(nullptr);
        if (h.indifferent)
            o["indifferent"] = names(inst, h.accepted, false);
        else
            o["prefs"] = groups_json(inst, h.prefs, false);
        hos.push_back(o);
    }
    doc["residents"] = res;
    doc["hospitals"] = hos;
    return doc.dump(2) + "\n";
}

std::string serialize_matching(const Instance &inst, const Matching &m)
{
    check_ids(inst, m);
    json a = json::array();
    for (int r = 0; r < m.size(); ++r) {
        json e{{"resident", inst.residents[r].name}};
        e["hospital"] = m[r] == kUnmatched ? json(nullptr) : json(inst.hospitals[m[r]].name);
        a.push_back(e);
    }
    return a.dump(2) + "\n";
}

Matching parse_matching(const Instance &inst, const std::string &text)
{
    json doc = parse_json(text);
    if (!doc.is_array())
        throw RejectedInput("matching document must be a list");
    Matching m(inst.n());
    std::vector<char> seen(inst.n(), 0);
    for (const auto &e : doc) {
        const auto &r = field(e, "resident", "matching entry");
        const auto &h = field(e, "hospital", "matching entry");
        if (!r.is_string() || !(h.is_string() || h.is_null()))
            throw RejectedInput("matching entry: resident must be a string, hospital a string or null");
        int ri = inst.resident_index(r.get<std::string>());
        if (ri < 0)
            throw RejectedInput("matching names unknown resident " + r.get<std::string>());
        if (seen[ri])
            throw RejectedInput("duplicate resident " + r.get<std::string>() + " in matching");
        seen[ri] = 1;
        if (!h.is_null()) {
            int hi = inst.hospital_index(h.get<std::string>());
            if (hi < 0)
                throw RejectedInput("matching names unknown hospital " + h.get<std::string>());
            m[ri] = hi;
        }
    }
    return m;
}

std::string serialize_report(const Instance &inst, const StabilityReport &rep)
{
    json doc;
    doc["feasible"] = rep.feasible;
    doc["stable"] = rep.stable;
    json pairs = json::array();
    for (auto [r, h] : rep.blocking_pairs)
        pairs.push_back({{"resident", inst.residents[r].name}, {"hospital", inst.hospitals[h].name}});
    doc["blocking_pairs"] = pairs;
    json coal = json::array();
    for (const auto &c : rep.blocked_closed_hospitals)
        coal.push_back({{"hospital", inst.hospitals[c.hospital].name}, {"witness", names(inst, c.witness, false)}});
    doc["blocking_coalitions"] = coal;
    return doc.dump(2) + "\n";
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw RejectedInput("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw RejectedInput("cannot write " + path);
    out << text;
}

} // namespace hrql
