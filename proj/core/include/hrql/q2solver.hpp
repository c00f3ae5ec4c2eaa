#pragma once

#include <hrql/instance.hpp>

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hrql {

// An entry of a rotation is either a resident or a quota-one hospital.
struct AgentRef {
    bool hospital = false;
    int id = -1;

    bool operator==(const AgentRef &) const = default;
};

struct Rotation {
    std::vector<std::pair<AgentRef, AgentRef>> pairs; // (a_i, b_i)
    std::vector<std::string> ab_tags;                 // rule used to get b_{i+1} from a_i
    std::vector<std::string> ba_tags;                 // rule used to get a_i from b_i
};

// Mutable state of the lower-quota<=2 algorithm. Hospitals include unit copies
// made by normalization and splitting; lineage maps each back to the input.
class PhaseState {
public:
    struct Hosp {
        std::string name;
        int orig = -1; // input hospital
        int copy = 0;  // copy index, orders copies within a resident list
        int lower = 1;
        int upper = 1;
        bool alive = true;
        bool active = false;
        std::vector<int> list;   // residents, best first
        std::vector<int> held;   // residents whose proposals this hospital holds, best first
        std::vector<int> issued; // residents holding this hospital's proposal
    };

    explicit PhaseState(const Instance &inst);

    const Instance &instance() const { return *inst_; }
    int n() const { return static_cast<int>(rlist_.size()); }
    int hospital_count() const { return static_cast<int>(hosp_.size()); }
    const Hosp &hospital(int h) const { return hosp_[h]; }
    const std::vector<int> &resident_list(int r) const { return rlist_[r]; }
    int issued_by(int r) const { return r_issued_[r]; }
    int held_by(int r) const { return r_held_[r]; }
    bool quota_one(int h) const { return hosp_[h].lower == 1; }
    const std::vector<int> &S() const { return s_; }

    std::string name(AgentRef a) const;

    // Current lists keyed by agent name; deleted hospitals appear with empty lists.
    std::map<std::string, std::vector<std::string>> lists() const;

    bool tracing = false;
    std::vector<std::string> trace;

    // Phase operations, see the free functions below.
    void run_phase1a();
    bool run_phase1b();
    std::optional<Rotation> find_rotation() const;
    void eliminate(const Rotation &rot);
    void fix_S();

    // Structural checks after a completed Phase 1; throws InternalInvariant.
    void check_phase1_invariants() const;

private:
    int rkey(int r, int h) const;
    int hkey(int h, int r) const;
    void sort_resident_list(int r);
    void insert_held(int h, int r);

    void enqueue_resident(int r);
    void enqueue_hospital(int h);
    void activate(int h);
    void notify_rejected(int h);

    void remove_pair(int r, int h);
    void reject_pair(int rejecter_is_hospital, int r, int h);
    void apply_small_list_rule(int h);

    void resident_proposes(int r);
    void hospital_receives(int h, int r);
    void resident_receives(int r, int h);
    void quota_one_proposes(int h);
    void quota_two_proposes(int h);
    std::vector<int> quota_two_targets(int h) const;
    bool cleanup();
    void drain();

    void log(const std::string &line);

    const Instance *inst_;
    std::vector<int> res_rank_; // n x m input ranks
    std::vector<int> hos_rank_; // m x n input ranks
    int m_in_ = 0;

    std::vector<std::vector<int>> rlist_;
    std::vector<int> r_issued_, r_held_;
    std::vector<Hosp> hosp_;
    std::vector<int> s_;

    struct Item {
        bool hospital;
        int id;
    };
    std::deque<Item> queue_;
    std::vector<char> rqueued_, hqueued_;
    bool immediate_rule_ = false;
};

struct Q2Options {
    bool trace = false;
    bool check_invariants =
#ifdef NDEBUG
        false;
#else
        true;
#endif
    // Called with a stage tag: "phase1" after each completed Phase 1, "rotation" after each elimination.
    std::function<void(const PhaseState &, const char *)> observer;
};

struct Q2Result {
    std::optional<Matching> matching; // nullopt = NO
    std::vector<std::string> trace;
    std::vector<Rotation> rotations;
};

PhaseState normalize(const Instance &inst);
void phase1a(PhaseState &state);
bool phase1b(PhaseState &state);
std::optional<Rotation> find_rotation(const PhaseState &state);
void eliminate_rotation(PhaseState &state, const Rotation &rot);

Q2Result solve_q2(const Instance &inst, const Q2Options &opts = {});

std::string format_rotation(const PhaseState &state, const Rotation &rot);

} // namespace hrql
