#include "fixtures.hpp"

namespace hrql::test {

Instance strict_instance(const std::vector<std::pair<std::string, std::vector<std::string>>> &residents,
                         const std::vector<HospSpec> &hospitals)
{
    InstanceBuilder b(Variant::hr);
    for (const auto &r : residents)
        b.add_resident(r.first);
    for (const auto &h : hospitals)
        b.add_hospital(h.name, h.lower, h.upper);
    Instance names = b.finish();
    auto hid = [&](const std::string &s) {
        int h = names.hospital_index(s);
        if (h < 0)
            throw RejectedInput("fixture names unknown hospital " + s);
        return h;
    };
    auto rid = [&](const std::string &s) {
        int r = names.resident_index(s);
        if (r < 0)
            throw RejectedInput("fixture names unknown resident " + s);
        return r;
    };
    for (size_t r = 0; r < residents.size(); ++r) {
        std::vector<int> order;
        for (const auto &h : residents[r].second)
            order.push_back(hid(h));
        b.resident_strict(static_cast<int>(r), order);
    }
    for (size_t h = 0; h < hospitals.size(); ++h) {
        if (hospitals[h].prefs.empty())
            continue;
        std::vector<int> order;
        for (const auto &r : hospitals[h].prefs)
            order.push_back(rid(r));
        b.hospital_strict(static_cast<int>(h), order);
    }
    return b.finish();
}

Matching matching_of(const Instance &inst, const std::map<std::string, std::vector<std::string>> &assign)
{
    Matching m(inst.n());
    for (const auto &[h, rs] : assign)
        for (const auto &r : rs)
            m[inst.resident_index(r)] = inst.hospital_index(h);
    return m;
}

Instance f1()
{
    return strict_instance({{"r1", {"h1", "h2"}}, {"r2", {"h2", "h3"}}, {"r3", {"h3", "h1"}}},
                           {{"h1", 2, std::nullopt, {}}, {"h2", 2, std::nullopt, {}}, {"h3", 2, std::nullopt, {}}});
}

Instance f2()
{
    return strict_instance({{"r1", {"h3", "h1"}}, {"r2", {"h2", "h3"}}, {"r3", {"h3", "h2"}}, {"r4", {"h3"}}},
                           {{"h1", 1, std::nullopt, {}}, {"h2", 2, std::nullopt, {}}, {"h3", 4, std::nullopt, {}}});
}

Matching f2_m1(const Instance &f) { return matching_of(f, {{"h3", {"r1", "r2", "r3", "r4"}}}); }
Matching f2_m2(const Instance &f) { return matching_of(f, {{"h1", {"r1"}}, {"h2", {"r2", "r3"}}}); }

Instance f3()
{
    return strict_instance({{"r1", {"h1", "h2"}}, {"r2", {"h4", "h2", "h3"}}, {"r3", {"h3", "h1", "h4"}}},
                           {{"h1", 1, 1, {"r3", "r1"}},
                            {"h2", 2, 2, {"r1", "r2"}},
                            {"h3", 2, 2, {"r2", "r3"}},
                            {"h4", 2, 2, {"r2", "r3"}}});
}

Instance f4()
{
    return strict_instance({{"r1", {"h1", "h2"}}, {"r2", {"h2", "h3"}}, {"r3", {"h3", "h1"}}},
                           {{"h1", 1, 1, {"r3", "r1"}}, {"h2", 2, 2, {"r1", "r2"}}, {"h3", 2, 2, {"r2", "r3"}}});
}

Matching f4_final(const Instance &f) { return matching_of(f, {{"h1", {"r3"}}, {"h2", {"r1", "r2"}}}); }

Lists f3_after_phase1()
{
    return {{"r1", {"h1", "h2"}}, {"r2", {"h2", "h3"}}, {"r3", {"h3", "h1"}}, {"h1", {"r3", "r1"}},
            {"h2", {"r1", "r2"}}, {"h3", {"r2", "r3"}}, {"h4", {}}};
}

Lists f4_after_rotation()
{
    return {{"r1", {"h2"}}, {"r2", {"h2"}}, {"r3", {"h3", "h1"}},
            {"h1", {"r3"}}, {"h2", {"r1", "r2"}}, {"h3", {"r3"}}};
}

} // namespace hrql::test
