#include <hrql/q2solver.hpp>
#include <hrql/stability.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace hrql {

namespace {

void erase_value(std::vector<int> &v, int x)
{
    auto it = std::find(v.begin(), v.end(), x);
    if (it != v.end())
        v.erase(it);
}

bool contains(const std::vector<int> &v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

} // namespace

PhaseState::PhaseState(const Instance &inst) : inst_(&inst), m_in_(inst.m())
{
    if (!inst.strict())
        throw WrongVariant("the lower-quota<=2 algorithm needs strict preferences");
    for (int h = 0; h < inst.m(); ++h)
        if (inst.lower(h) > 2)
            throw NotApplicable("hospital " + inst.hospitals[h].name + " has lower quota " +
                                std::to_string(inst.lower(h)) + " > 2");

    const int n = inst.n();
    Ranks rk(inst);
    res_rank_.assign(static_cast<size_t>(n) * m_in_, -1);
    hos_rank_.assign(static_cast<size_t>(n) * m_in_, -1);
    for (int r = 0; r < n; ++r)
        for (int h = 0; h < m_in_; ++h) {
            res_rank_[r * m_in_ + h] = rk.resident(r, h);
            hos_rank_[h * n + r] = rk.hospital(h, r);
        }

    rlist_.assign(n, {});
    r_issued_.assign(n, -1);
    r_held_.assign(n, -1);
    rqueued_.assign(n, 0);

    // Upper quotas beyond the number of acceptors change nothing; capping keeps copies few.
    for (int h = 0; h < m_in_; ++h) {
        auto acc = inst.acceptors(h);
        int cap = std::max(inst.lower(h), std::min(inst.upper(h), static_cast<int>(acc.size())));
        const auto &name = inst.hospitals[h].name;
        if (inst.lower(h) == 1 && cap > 1) {
            for (int k = 0; k < cap; ++k) {
                Hosp c;
                c.name = name + "#" + std::to_string(k + 1);
                c.orig = h;
                c.copy = k;
                c.lower = c.upper = 1;
                c.list = acc;
                hosp_.push_back(std::move(c));
            }
        } else {
            Hosp c;
            c.name = name;
            c.orig = h;
            c.lower = inst.lower(h);
            c.upper = cap;
            c.list = acc;
            hosp_.push_back(std::move(c));
        }
    }
    hqueued_.assign(hosp_.size(), 0);
    for (int h = 0; h < static_cast<int>(hosp_.size()); ++h)
        for (int r : hosp_[h].list)
            rlist_[r].push_back(h);
    for (int r = 0; r < n; ++r)
        sort_resident_list(r);
}

int PhaseState::rkey(int r, int h) const { return res_rank_[r * m_in_ + hosp_[h].orig] * (n() + 1) + hosp_[h].copy; }

int PhaseState::hkey(int h, int r) const { return hos_rank_[hosp_[h].orig * n() + r]; }

void PhaseState::sort_resident_list(int r)
{
    std::sort(rlist_[r].begin(), rlist_[r].end(), [&](int a, int b) { return rkey(r, a) < rkey(r, b); });
}

void PhaseState::insert_held(int h, int r)
{
    auto &held = hosp_[h].held;
    auto it = std::find_if(held.begin(), held.end(), [&](int x) { return hkey(h, r) < hkey(h, x); });
    held.insert(it, r);
}

std::string PhaseState::name(AgentRef a) const
{
    return a.hospital ? hosp_[a.id].name : inst_->residents[a.id].name;
}

std::map<std::string, std::vector<std::string>> PhaseState::lists() const
{
    std::map<std::string, std::vector<std::string>> out;
    for (int r = 0; r < n(); ++r) {
        auto &v = out[inst_->residents[r].name];
        for (int h : rlist_[r])
            v.push_back(hosp_[h].name);
    }
    for (const auto &h : hosp_) {
        auto &v = out[h.name];
        for (int r : h.list)
            v.push_back(inst_->residents[r].name);
    }
    return out;
}

void PhaseState::log(const std::string &line)
{
    if (tracing)
        trace.push_back(line);
}

void PhaseState::enqueue_resident(int r)
{
    if (!rqueued_[r]) {
        rqueued_[r] = 1;
        queue_.push_back({false, r});
    }
}

void PhaseState::enqueue_hospital(int h)
{
    if (!hqueued_[h]) {
        hqueued_[h] = 1;
        queue_.push_back({true, h});
    }
}

void PhaseState::activate(int h)
{
    auto &hp = hosp_[h];
    if (!hp.alive)
        return;
    if (!hp.active) {
        hp.active = true;
        log("ACTIVATE " + hp.name);
    }
    enqueue_hospital(h);
}

// A proposal issued by h was rejected or cancelled.
void PhaseState::notify_rejected(int h)
{
    if (quota_one(h))
        enqueue_hospital(h);
    else
        activate(h);
}

// Deletes mutual acceptability of r and h and cancels proposals between them.
void PhaseState::remove_pair(int r, int h)
{
    erase_value(rlist_[r], h);
    auto &hp = hosp_[h];
    erase_value(hp.list, r);
    if (r_issued_[r] == h) {
        r_issued_[r] = -1;
        erase_value(hp.held, r);
        enqueue_resident(r);
        if (!quota_one(h))
            activate(h);
    }
    if (r_held_[r] == h) {
        r_held_[r] = -1;
        erase_value(hp.issued, r);
        notify_rejected(h);
    }
    if (immediate_rule_)
        apply_small_list_rule(h);
}

void PhaseState::reject_pair(int rejecter_is_hospital, int r, int h)
{
    if (rejecter_is_hospital)
        log("REJECT " + hosp_[h].name + " " + inst_->residents[r].name);
    else
        log("REJECT " + inst_->residents[r].name + " " + hosp_[h].name);
    remove_pair(r, h);
}

// A quota-two hospital rejected by all but at most one resident of its list
// rejects the proposals it holds.
void PhaseState::apply_small_list_rule(int h)
{
    auto &hp = hosp_[h];
    if (quota_one(h) || !hp.alive || hp.list.size() > 1)
        return;
    while (!hp.held.empty())
        reject_pair(true, hp.held.front(), h);
}

void PhaseState::resident_proposes(int r)
{
    if (rlist_[r].empty() || r_issued_[r] != -1)
        return;
    int h = rlist_[r].front();
    log("PROPOSE " + inst_->residents[r].name + " " + hosp_[h].name);
    hospital_receives(h, r);
}

void PhaseState::hospital_receives(int h, int r)
{
    auto &hp = hosp_[h];
    r_issued_[r] = h;
    insert_held(h, r);
    if (!quota_one(h)) {
        activate(h);
        if (hp.list.size() <= 1) {
            reject_pair(true, r, h);
            return;
        }
    }
    if (static_cast<int>(hp.held.size()) > hp.upper)
        reject_pair(true, hp.held.back(), h);
}

void PhaseState::resident_receives(int r, int h)
{
    int h0 = r_held_[r];
    if (h0 == -1 || rkey(r, h) < rkey(r, h0)) {
        if (h0 != -1)
            reject_pair(false, r, h0);
        r_held_[r] = h;
        hosp_[h].issued.push_back(r);
    } else {
        reject_pair(false, r, h);
        notify_rejected(h);
    }
}

void PhaseState::quota_one_proposes(int h)
{
    auto &hp = hosp_[h];
    if (!hp.alive || hp.list.empty() || !hp.issued.empty())
        return;
    int r = hp.list.front();
    log("PROPOSE " + hp.name + " " + inst_->residents[r].name);
    resident_receives(r, h);
}

std::vector<int> PhaseState::quota_two_targets(int h) const
{
    const auto &hp = hosp_[h];
    const int u = hp.upper;
    std::vector<int> out;
    if (hp.held.size() == 1) {
        int r = hp.held.front();
        auto pos = std::find(hp.list.begin(), hp.list.end(), r) - hp.list.begin();
        if (pos < u) {
            for (int x : hp.list)
                if (x != r && static_cast<int>(out.size()) < u - 1)
                    out.push_back(x);
            return out;
        }
    }
    for (int i = 0; i < static_cast<int>(hp.list.size()) && i < u; ++i)
        out.push_back(hp.list[i]);
    return out;
}

void PhaseState::quota_two_proposes(int h)
{
    auto deactivate = [&] {
        auto &hp = hosp_[h];
        if (hp.active) {
            hp.active = false;
            log("DEACTIVATE " + hp.name);
        }
    };
    if (!hosp_[h].alive)
        return;
    while (true) {
        if (hosp_[h].list.size() <= 1) {
            apply_small_list_rule(h);
            break;
        }
        int next = -1;
        for (int t : quota_two_targets(h))
            if (r_held_[t] != h) {
                next = t;
                break;
            }
        if (next == -1)
            break;
        log("PROPOSE " + hosp_[h].name + " " + inst_->residents[next].name);
        resident_receives(next, h);
    }
    deactivate();
}

void PhaseState::drain()
{
    while (!queue_.empty()) {
        Item it = queue_.front();
        queue_.pop_front();
        if (it.hospital) {
            hqueued_[it.id] = 0;
            if (quota_one(it.id))
                quota_one_proposes(it.id);
            else if (hosp_[it.id].active)
                quota_two_proposes(it.id);
        } else {
            rqueued_[it.id] = 0;
            resident_proposes(it.id);
        }
    }
}

// End-of-phase deletions. Returns true when anything was deleted.
bool PhaseState::cleanup()
{
    bool changed = false;
    for (int r = 0; r < n(); ++r) {
        int h0 = r_held_[r];
        if (h0 == -1)
            continue;
        auto it = std::find(rlist_[r].begin(), rlist_[r].end(), h0);
        std::vector<int> below(it + 1, rlist_[r].end());
        for (int h : below) {
            log("DELETE " + inst_->residents[r].name + " " + hosp_[h].name);
            remove_pair(r, h);
            changed = true;
        }
    }
    for (int h = 0; h < hospital_count(); ++h) {
        auto &hp = hosp_[h];
        if (!hp.alive || !quota_one(h) || hp.held.empty())
            continue;
        auto it = std::find(hp.list.begin(), hp.list.end(), hp.held.front());
        std::vector<int> below(it + 1, hp.list.end());
        for (int r : below) {
            log("DELETE " + inst_->residents[r].name + " " + hp.name);
            remove_pair(r, h);
            changed = true;
        }
    }
    for (int h = 0; h < hospital_count(); ++h) {
        if (!hosp_[h].alive || quota_one(h) || hosp_[h].list.size() > 1)
            continue;
        std::vector<int> rest = hosp_[h].list;
        for (int r : rest) {
            log("DELETE " + inst_->residents[r].name + " " + hosp_[h].name);
            remove_pair(r, h);
        }
        hosp_[h].alive = false;
        hosp_[h].active = false;
        changed = true;
    }
    return changed;
}

void PhaseState::run_phase1a()
{
    immediate_rule_ = true;
    for (int h = 0; h < hospital_count(); ++h)
        if (!quota_one(h))
            apply_small_list_rule(h);
    for (int r = 0; r < n(); ++r)
        if (!rlist_[r].empty() && r_issued_[r] == -1)
            enqueue_resident(r);
    for (int h = 0; h < hospital_count(); ++h)
        if (quota_one(h) && hosp_[h].alive && !hosp_[h].list.empty() && hosp_[h].issued.empty())
            enqueue_hospital(h);
    while (true) {
        drain();
        if (!cleanup() && queue_.empty())
            break;
    }
    immediate_rule_ = false;
}

bool PhaseState::run_phase1b()
{
    std::vector<int> split;
    for (int h = 0; h < hospital_count(); ++h)
        if (hosp_[h].alive && !quota_one(h) && hosp_[h].held.size() >= 2)
            split.push_back(h);
    for (int h : split) {
        Hosp old = hosp_[h];
        log("SPLIT " + old.name + " " + std::to_string(old.upper));
        for (int r : old.list) {
            if (r_issued_[r] == h) {
                r_issued_[r] = -1;
                enqueue_resident(r);
            }
            if (r_held_[r] == h)
                r_held_[r] = -1;
            erase_value(rlist_[r], h);
        }
        auto &dead = hosp_[h];
        dead.alive = false;
        dead.active = false;
        dead.list.clear();
        dead.held.clear();
        dead.issued.clear();
        for (int k = 0; k < old.upper; ++k) {
            Hosp c;
            c.name = old.name + "#" + std::to_string(k + 1);
            c.orig = old.orig;
            c.copy = k;
            c.lower = c.upper = 1;
            c.list = old.list;
            hosp_.push_back(std::move(c));
            hqueued_.push_back(0);
            int id = hospital_count() - 1;
            for (int r : old.list)
                rlist_[r].push_back(id);
            enqueue_hospital(id);
        }
        for (int r : old.list)
            sort_resident_list(r);
    }
    return !split.empty();
}

void PhaseState::fix_S()
{
    s_.clear();
    for (int r = 0; r < n(); ++r)
        if (!rlist_[r].empty())
            s_.push_back(r);
}

std::optional<Rotation> PhaseState::find_rotation() const
{
    int start = -1;
    for (int r = 0; r < n(); ++r)
        if (rlist_[r].size() >= 2) {
            start = r;
            break;
        }
    if (start == -1)
        return std::nullopt;

    auto fail = [&](const std::string &why) -> InternalInvariant { return InternalInvariant("rotation: " + why); };
    auto flexible = [&](int h) { return !quota_one(h) && hosp_[h].list.size() > 2; };

    // b_{i+1} from a_i
    auto ab = [&](AgentRef a, std::string &tag) -> AgentRef {
        if (a.hospital) {
            const auto &l = hosp_[a.id].list;
            if (l.size() < 2)
                throw fail("AB-1 needs two residents at " + hosp_[a.id].name);
            tag = "AB-1";
            return {false, l[1]};
        }
        const auto &rl = rlist_[a.id];
        if (rl.size() < 2)
            throw fail("resident " + name(a) + " has fewer than two hospitals");
        int h = rl[0];
        if (flexible(h)) {
            std::vector<int> rest;
            for (int x : hosp_[h].list)
                if (x != a.id)
                    rest.push_back(x);
            if (rest.size() < 2)
                throw fail("AB-2 at " + hosp_[h].name);
            tag = "AB-2";
            return {false, rest[1]};
        }
        int g = rl[1];
        if (quota_one(g)) {
            tag = "AB-3a";
            return {true, g};
        }
        if (!hosp_[g].held.empty()) {
            tag = "AB-3b(i)";
            return {false, hosp_[g].held.front()};
        }
        for (int x : hosp_[g].list)
            if (x != a.id) {
                tag = "AB-3b(ii)";
                return {false, x};
            }
        throw fail("AB-3b(ii) at " + hosp_[g].name);
    };
    // a_i from b_i
    auto ba = [&](AgentRef b, std::string &tag) -> AgentRef {
        if (b.hospital) {
            const auto &l = hosp_[b.id].list;
            if (l.empty())
                throw fail("BA-1 at empty " + hosp_[b.id].name);
            tag = "BA-1";
            return {false, l.back()};
        }
        const auto &rl = rlist_[b.id];
        if (rl.empty())
            throw fail("BA at empty resident " + name(b));
        int h = rl.back();
        if (quota_one(h)) {
            tag = "BA-2";
            return {true, h};
        }
        tag = "BA-3";
        if (hosp_[h].held.size() == 1)
            return {false, hosp_[h].held.front()};
        for (int x : hosp_[h].list)
            if (x != b.id && !rlist_[x].empty() && rlist_[x].front() == h)
                return {false, x};
        throw fail("BA-3 finds no proposer for " + hosp_[h].name);
    };

    std::vector<AgentRef> as{{false, start}};
    std::vector<AgentRef> bs{{}}; // bs[i] = b_i computed from a_{i-1}
    std::vector<std::string> ab_tags, ba_tags{""};
    const size_t limit = 4 * (n() + hospital_count()) + 8;
    while (as.size() <= limit) {
        std::string t1, t2;
        AgentRef b = ab(as.back(), t1);
        AgentRef a = ba(b, t2);
        ab_tags.push_back(t1);
        auto it = std::find(as.begin(), as.end(), a);
        if (it != as.end()) {
            size_t j = it - as.begin();
            Rotation rot;
            for (size_t t = j; t < as.size(); ++t) {
                AgentRef bt = t == j ? b : bs[t];
                rot.pairs.push_back({as[t], bt});
                rot.ab_tags.push_back(ab_tags[t]);
                rot.ba_tags.push_back(t == j ? t2 : ba_tags[t]);
            }
            return rot;
        }
        as.push_back(a);
        bs.push_back(b);
        ba_tags.push_back(t2);
    }
    throw fail("no cycle found");
}

void PhaseState::eliminate(const Rotation &rot)
{
    if (tracing) {
        log("ROTATION " + format_rotation(*this, rot));
    }
    std::vector<std::pair<int, int>> dels; // (resident, hospital)
    for (auto &[a, b] : rot.pairs) {
        if (a.hospital)
            dels.push_back({b.id, a.id});
        else if (b.hospital)
            dels.push_back({a.id, b.id});
        else
            dels.push_back({b.id, rlist_[a.id].front()});
    }
    for (auto [r, h] : dels) {
        if (!contains(rlist_[r], h))
            continue;
        log("DELETE " + inst_->residents[r].name + " " + hosp_[h].name);
        remove_pair(r, h);
    }
}

void PhaseState::check_phase1_invariants() const
{
    auto fail = [](const std::string &why) { throw InternalInvariant("after Phase 1: " + why); };
    for (int r = 0; r < n(); ++r)
        for (int h : rlist_[r])
            if (!hosp_[h].alive || !contains(hosp_[h].list, r))
                fail("asymmetric pair " + inst_->residents[r].name + "/" + hosp_[h].name);
    for (int h = 0; h < hospital_count(); ++h)
        for (int r : hosp_[h].list)
            if (!contains(rlist_[r], h))
                fail("asymmetric pair " + hosp_[h].name + "/" + inst_->residents[r].name);

    for (int r = 0; r < n(); ++r)
        if ((r_issued_[r] != -1) != (r_held_[r] != -1))
            fail("resident " + inst_->residents[r].name + " holds and issues unevenly");
    for (int h = 0; h < hospital_count(); ++h) {
        const auto &hp = hosp_[h];
        if (!hp.alive)
            continue;
        if (quota_one(h) && hp.held.size() != hp.issued.size())
            fail("quota-one hospital " + hp.name + " holds and issues unevenly");
        if (!quota_one(h) && hp.held.size() > 1)
            fail("quota-two hospital " + hp.name + " holds several proposals");
    }

    auto len_h = [&](int h) { return hosp_[h].list.size(); };
    for (int r = 0; r < n(); ++r)
        if (rlist_[r].size() > 1)
            for (int h : rlist_[r])
                if (len_h(h) <= 1)
                    fail("single-entry hospital " + hosp_[h].name + " on a longer list");
    for (int h = 0; h < hospital_count(); ++h)
        if (len_h(h) > 1)
            for (int r : hosp_[h].list)
                if (rlist_[r].size() <= 1)
                    fail("single-entry resident " + inst_->residents[r].name + " on a longer list");
}

PhaseState normalize(const Instance &inst) { return PhaseState(inst); }

void phase1a(PhaseState &state) { state.run_phase1a(); }

bool phase1b(PhaseState &state) { return state.run_phase1b(); }

std::optional<Rotation> find_rotation(const PhaseState &state) { return state.find_rotation(); }

void eliminate_rotation(PhaseState &state, const Rotation &rot) { state.eliminate(rot); }

std::string format_rotation(const PhaseState &state, const Rotation &rot)
{
    std::string s;
    for (auto &[a, b] : rot.pairs)
        s += (s.empty() ? "(" : ",(") + state.name(a) + "," + state.name(b) + ")";
    return s;
}

Q2Result solve_q2(const Instance &inst, const Q2Options &opts)
{
    PhaseState st(inst);
    st.tracing = opts.trace;
    Q2Result res;

    auto finish = [&](std::optional<Matching> m) {
        res.matching = std::move(m);
        res.trace = std::move(st.trace);
        return res;
    };
    auto lost_resident = [&] {
        for (int r : st.S())
            if (st.resident_list(r).empty())
                return true;
        return false;
    };

    st.run_phase1a();
    st.fix_S();
    while (true) {
        st.run_phase1a();
        while (st.run_phase1b())
            st.run_phase1a();
        if (opts.check_invariants)
            st.check_phase1_invariants();
        if (opts.observer)
            opts.observer(st, "phase1");
        if (lost_resident())
            return finish(std::nullopt);
        auto rot = st.find_rotation();
        if (!rot)
            break;
        st.eliminate(*rot);
        res.rotations.push_back(*rot);
        if (opts.observer)
            opts.observer(st, "rotation");
        if (lost_resident())
            return finish(std::nullopt);
    }

    Matching m(inst.n());
    for (int r : st.S()) {
        const auto &l = st.resident_list(r);
        if (l.size() != 1)
            return finish(std::nullopt);
        m[r] = st.hospital(l.front()).orig;
    }
    auto rep = check_stability(inst, m);
    if (!rep.stable)
        throw InternalInvariant("lower-quota<=2 algorithm produced an unstable matching " + to_string(inst, m));
    return finish(m);
}

} // namespace hrql
