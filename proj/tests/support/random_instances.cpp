#include "random_instances.hpp"

#include <algorithm>

namespace hrql::test {

namespace {

TieGroups group(const std::vector<int> &order, bool ties, std::mt19937_64 &rng)
{
    TieGroups g;
    std::bernoulli_distribution join(0.35);
    for (int x : order) {
        if (ties && !g.empty() && join(rng))
            g.back().push_back(x);
        else
            g.push_back({x});
    }
    return g;
}

} // namespace

Instance random_instance(const RandomSpec &spec, std::mt19937_64 &rng)
{
    std::uniform_int_distribution<int> dn(spec.min_n, spec.max_n), dm(spec.min_m, spec.max_m);
    const int n = dn(rng), m = dm(rng);
    std::uniform_real_distribution<double> dd(spec.density_lo, spec.density_hi);
    const double density = dd(rng);
    Variant v = spec.indifferent ? Variant::ha
                : (spec.resident_ties || spec.hospital_ties) ? Variant::hr_ties
                                                             : Variant::hr;
    InstanceBuilder b(v);
    for (int r = 0; r < n; ++r)
        b.add_resident("r" + std::to_string(r + 1));
    std::uniform_int_distribution<int> dl(spec.min_lower, spec.max_lower), extra(0, 2);
    std::bernoulli_distribution bounded(spec.bounded_prob), accept(density);
    for (int h = 0; h < m; ++h) {
        int l = dl(rng);
        std::optional<int> u;
        if (bounded(rng))
            u = l + extra(rng);
        b.add_hospital("h" + std::to_string(h + 1), l, u);
    }
    std::vector<std::vector<int>> acc(m);
    for (int r = 0; r < n; ++r) {
        std::vector<int> list;
        for (int h = 0; h < m; ++h)
            if (accept(rng))
                list.push_back(h);
        std::shuffle(list.begin(), list.end(), rng);
        for (int h : list)
            acc[h].push_back(r);
        b.resident_prefs(r, group(list, spec.resident_ties, rng));
    }
    for (int h = 0; h < m; ++h) {
        if (spec.indifferent) {
            std::sort(acc[h].begin(), acc[h].end());
            b.hospital_indifferent(h, acc[h]);
            continue;
        }
        std::shuffle(acc[h].begin(), acc[h].end(), rng);
        b.hospital_prefs(h, group(acc[h], spec.hospital_ties, rng));
    }
    return b.finish();
}

Instance random_large_q2(int n, int m, int list_len, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    InstanceBuilder b(Variant::hr);
    for (int r = 0; r < n; ++r)
        b.add_resident("r" + std::to_string(r + 1));
    std::uniform_int_distribution<int> dl(1, 2), extra(0, 6);
    std::bernoulli_distribution bounded(0.5);
    for (int h = 0; h < m; ++h) {
        int l = dl(rng);
        std::optional<int> u;
        if (bounded(rng))
            u = l + extra(rng);
        b.add_hospital("h" + std::to_string(h + 1), l, u);
    }
    std::vector<int> all(m);
    for (int h = 0; h < m; ++h)
        all[h] = h;
    std::vector<std::vector<int>> acc(m);
    for (int r = 0; r < n; ++r) {
        std::shuffle(all.begin(), all.end(), rng);
        std::vector<int> list(all.begin(), all.begin() + std::min(list_len, m));
        for (int h : list)
            acc[h].push_back(r);
        b.resident_strict(r, list);
    }
    for (int h = 0; h < m; ++h) {
        std::shuffle(acc[h].begin(), acc[h].end(), rng);
        b.hospital_strict(h, acc[h]);
    }
    return b.finish();
}

} // namespace hrql::test
