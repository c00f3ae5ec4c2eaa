#include <hrql/oracle.hpp>
#include <hrql/stability.hpp>

#include <algorithm>

namespace hrql {

namespace {

// Depth-first assignment of residents in index order.
class Search {
public:
    Search(const Instance &inst, bool stable_only)
        : inst_(inst), rk_(inst), stable_only_(stable_only), n_(inst.n()), m_(inst.m()), cur_(n_), load_(m_, 0),
          opts_(n_), remaining_(m_, 0), last_acceptor_(m_, -1)
    {
        for (int r = 0; r < n_; ++r)
            for (int h = 0; h < m_; ++h)
                if (rk_.acceptable(r, h)) {
                    opts_[r].push_back(h);
                    ++remaining_[h];
                    last_acceptor_[h] = r;
                }
        closing_.resize(n_);
        for (int h = 0; h < m_; ++h)
            if (last_acceptor_[h] >= 0)
                closing_[last_acceptor_[h]].push_back(h);
    }

    void run(const std::function<bool(const Matching &)> &visit)
    {
        visit_ = &visit;
        dfs(0);
    }

private:
    bool dfs(int r)
    {
        if (r == n_) {
            if (stable_only_ && !is_stable(inst_, rk_, cur_))
                return true;
            return (*visit_)(cur_);
        }
        // unmatched first, then hospitals in index order
        if (!place(r, kUnmatched))
            return false;
        for (int h : opts_[r]) {
            if (load_[h] >= inst_.upper(h))
                continue;
            if (!place(r, h))
                return false;
        }
        return true;
    }

    bool place(int r, int h)
    {
        cur_[r] = h;
        if (h != kUnmatched)
            ++load_[h];
        for (int x : opts_[r])
            --remaining_[x];
        bool cont = true;
        if (viable(r))
            cont = dfs(r + 1);
        for (int x : opts_[r])
            ++remaining_[x];
        if (h != kUnmatched)
            --load_[h];
        cur_[r] = kUnmatched;
        return cont;
    }

    bool viable(int r) const
    {
        for (int h : opts_[r])
            if (load_[h] > 0 && load_[h] + remaining_[h] < inst_.lower(h))
                return false;
        if (!stable_only_)
            return true;
        // Hospitals whose acceptors are all decided can be judged now.
        for (int h : closing_[r]) {
            if (load_[h] == 0) {
                int c = 0;
                for (int x = 0; x <= r; ++x)
                    if (rk_.acceptable(x, h) && rk_.resident(x, h) < rk_.of(x, cur_[x]))
                        ++c;
                if (c >= inst_.lower(h))
                    return false;
                continue;
            }
            int worst = -1;
            for (int x = 0; x <= r; ++x)
                if (cur_[x] == h)
                    worst = std::max(worst, rk_.hospital(h, x));
            bool under = load_[h] < inst_.upper(h);
            for (int x = 0; x <= r; ++x) {
                if (!rk_.acceptable(x, h) || rk_.resident(x, h) >= rk_.of(x, cur_[x]))
                    continue;
                if (under || (!inst_.hospitals[h].indifferent && rk_.hospital(h, x) < worst))
                    return false;
            }
        }
        return true;
    }

    const Instance &inst_;
    Ranks rk_;
    bool stable_only_;
    int n_, m_;
    Matching cur_;
    std::vector<int> load_;
    std::vector<std::vector<int>> opts_;
    std::vector<int> remaining_; // acceptors not yet decided
    std::vector<int> last_acceptor_;
    std::vector<std::vector<int>> closing_;
    const std::function<bool(const Matching &)> *visit_ = nullptr;
};

} // namespace

void enumerate_feasible(const Instance &inst, std::int64_t cap, const std::function<bool(const Matching &)> &visit)
{
    if (cap <= 0)
        throw RejectedInput("cap must be positive");
    std::int64_t count = 0;
    Search s(inst, false);
    s.run([&](const Matching &m) {
        if (++count > cap)
            throw EnumerationOverflow("more than " + std::to_string(cap) + " feasible matchings");
        return visit(m);
    });
}

std::vector<Matching> enumerate_feasible(const Instance &inst, std::int64_t cap)
{
    std::vector<Matching> out;
    enumerate_feasible(inst, cap, [&](const Matching &m) {
        out.push_back(m);
        return true;
    });
    return out;
}

std::vector<Matching> enumerate_stable(const Instance &inst, std::int64_t cap)
{
    if (cap <= 0)
        throw RejectedInput("cap must be positive");
    std::vector<Matching> out;
    Search s(inst, true);
    s.run([&](const Matching &m) {
        if (static_cast<std::int64_t>(out.size()) >= cap)
            throw EnumerationOverflow("more than " + std::to_string(cap) + " stable matchings");
        out.push_back(m);
        return true;
    });
    return out;
}

std::optional<Matching> first_stable(const Instance &inst)
{
    std::optional<Matching> found;
    Search s(inst, true);
    s.run([&](const Matching &m) {
        found = m;
        return false;
    });
    return found;
}

RuralReport rural_summary(const Instance &inst, const std::vector<Matching> &stable)
{
    RuralReport rep;
    rep.stable_count = static_cast<std::int64_t>(stable.size());
    std::vector<int> first_set;
    for (size_t i = 0; i < stable.size(); ++i) {
        std::vector<int> matched;
        for (int r = 0; r < inst.n(); ++r)
            if (stable[i][r] != kUnmatched)
                matched.push_back(r);
        int open = stable[i].open_count(inst.m());
        if (i == 0)
            first_set = matched;
        else {
            if (matched != first_set)
                rep.matched_set_uniform = false;
            if (open != rep.open_counts.front())
                rep.open_count_uniform = false;
        }
        rep.open_counts.push_back(open);
    }
    if (rep.matched_set_uniform)
        rep.matched_residents = first_set;
    return rep;
}

RuralReport rural_check(const Instance &inst, std::int64_t cap) { return rural_summary(inst, enumerate_stable(inst, cap)); }

} // namespace hrql
