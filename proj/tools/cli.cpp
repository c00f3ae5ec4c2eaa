#include "cli.hpp"

#include <hrql/enumsolver.hpp>
#include <hrql/gadgets.hpp>
#include <hrql/ilp.hpp>
#include <hrql/io.hpp>
#include <hrql/openset.hpp>
#include <hrql/oracle.hpp>
#include <hrql/q2solver.hpp>
#include <hrql/stability.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

namespace hrql {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty())
            out.push_back(cur);
    return out;
}

int hospital_id(const Instance &inst, const std::string &name)
{
    int h = inst.hospital_index(name);
    if (h < 0)
        throw RejectedInput("unknown hospital " + name);
    return h;
}

OpenSet parse_open(const Instance &inst, const std::string &s)
{
    OpenSet open;
    for (const auto &name : split(s, ','))
        open.push_back(hospital_id(inst, name));
    return open;
}

// open=h1,h2;worst=h1:r3,h2:r2;full=h1
Guess parse_guess(const Instance &inst, const std::string &s)
{
    Guess g;
    g.worst.assign(inst.m(), -1);
    for (const auto &part : split(s, ';')) {
        auto eq = part.find('=');
        if (eq == std::string::npos)
            throw RejectedInput("guess part without '=': " + part);
        std::string key = part.substr(0, eq), val = part.substr(eq + 1);
        if (key == "open") {
            g.open = parse_open(inst, val);
        } else if (key == "full") {
            g.full = parse_open(inst, val);
        } else if (key == "worst") {
            for (const auto &kv : split(val, ',')) {
                auto c = kv.find(':');
                if (c == std::string::npos)
                    throw RejectedInput("worst entry must be hospital:resident");
                int h = hospital_id(inst, kv.substr(0, c));
                int r = inst.resident_index(kv.substr(c + 1));
                if (r < 0)
                    throw RejectedInput("unknown resident " + kv.substr(c + 1));
                g.worst[h] = r;
            }
        } else {
            throw RejectedInput("unknown guess key " + key);
        }
    }
    std::sort(g.open.begin(), g.open.end());
    std::sort(g.full.begin(), g.full.end());
    return g;
}

// Stable matchings by brute force, filtered by a predicate on the open set.
std::optional<Matching> brute_with(const Instance &inst, const std::function<bool(const Matching &)> &pred)
{
    for (const auto &m : enumerate_stable(inst))
        if (pred(m))
            return m;
    return std::nullopt;
}

std::optional<Matching> solve_auto(const Instance &inst)
{
    if (inst.strict())
        return inst.max_lower() <= 2 ? solve_q2(inst).matching : solve_fpt_subsets(inst);
    if (inst.variant == Variant::ha)
        return solve_haqlu_ilp(inst);
    if (inst.all_unbounded())
        return solve_fpt_subsets_ties(inst);
    return first_stable(inst);
}

std::optional<Matching> solve_method(const Instance &inst, const std::string &method, const std::string &trace_path)
{
    if (!trace_path.empty()) {
        bool q2 = method == "q2" || (method == "auto" && inst.strict() && inst.max_lower() <= 2);
        if (!q2)
            throw RejectedInput("--trace needs the q2 solver");
        Q2Options opts;
        opts.trace = true;
        auto res = solve_q2(inst, opts);
        std::string text;
        for (const auto &line : res.trace)
            text += line + "\n";
        write_file(trace_path, text);
        return res.matching;
    }
    if (method == "auto")
        return solve_auto(inst);
    if (method == "q2")
        return solve_q2(inst).matching;
    if (method == "fpt")
        return inst.strict() ? solve_fpt_subsets(inst) : solve_fpt_subsets_ties(inst);
    if (method == "brute")
        return first_stable(inst);
    if (method == "ilp")
        return inst.variant == Variant::ha ? solve_haqlu_ilp(inst) : solve_hrqlut_xp(inst);
    throw RejectedInput("unknown method " + method);
}

std::optional<Matching> solve_open(const Instance &inst, const OpenSet &open)
{
    auto mask = open_mask(inst, open);
    if (inst.strict())
        return inst.all_unbounded() ? solve_fixed_open_strict_noupper(inst, open) : solve_fixed_open_hrqlu(inst, open);
    if (inst.variant == Variant::hr_ties && inst.all_unbounded())
        return solve_fixed_open_ties_noupper(inst, open);
    return brute_with(inst, [&](const Matching &m) {
        auto loads = m.loads(inst.m());
        for (int h = 0; h < inst.m(); ++h)
            if ((loads[h] > 0) != static_cast<bool>(mask[h]))
                return false;
        return true;
    });
}

std::optional<Matching> solve_count(const Instance &inst, int k, CountMode mode)
{
    try {
        return solve_count_open(inst, k, mode);
    } catch (const WrongVariant &) {
        int want = mode == CountMode::open ? k : inst.m() - k;
        return brute_with(inst, [&](const Matching &m) { return m.open_count(inst.m()) == want; });
    }
}

std::vector<std::vector<int>> int_groups(const json &v)
{
    return v.get<std::vector<std::vector<int>>>();
}

Instance generate(const std::string &kind, const std::string &input, const std::string &formula, int vars,
                  std::uint64_t seed, int k, bool demo)
{
    json spec;
    if (!input.empty()) {
        try {
            spec = json::parse(read_file(input));
        } catch (const json::exception &e) {
            throw RejectedInput(std::string("generator input: ") + e.what());
        }
    }
    try {
        if (kind == "counterexample")
            return gen_counterexample();
        if (kind == "sat") {
            CnfFormula f;
            if (!formula.empty()) {
                int mx = 0;
                for (const auto &cl : split(formula, ';')) {
                    auto lits = split(cl, ',');
                    if (lits.size() != 3)
                        throw RejectedInput("each clause needs three literals");
                    std::array<int, 3> c{};
                    for (int i = 0; i < 3; ++i) {
                        c[i] = std::stoi(lits[i]);
                        mx = std::max(mx, std::abs(c[i]));
                    }
                    f.clauses.push_back(c);
                }
                f.q = mx;
            } else if (!input.empty()) {
                f.q = spec.at("vars").get<int>();
                for (const auto &cl : spec.at("clauses"))
                    f.clauses.push_back({cl.at(0).get<int>(), cl.at(1).get<int>(), cl.at(2).get<int>()});
            } else {
                f = random_formula(vars, seed);
            }
            return gen_sat(f).inst;
        }
        if (kind == "mcis") {
            if (demo || input.empty())
                return gen_mcis(demo_colored_graph(), 2).inst;
            ColoredGraph g;
            g.names = spec.at("vertices").get<std::vector<std::string>>();
            g.color = spec.at("colors").get<std::vector<int>>();
            for (const auto &e : spec.at("edges")) {
                auto a = std::find(g.names.begin(), g.names.end(), e.at(0).get<std::string>());
                auto b = std::find(g.names.begin(), g.names.end(), e.at(1).get<std::string>());
                if (a == g.names.end() || b == g.names.end())
                    throw RejectedInput("edge names an unknown vertex");
                g.edges.emplace_back(a - g.names.begin(), b - g.names.begin());
            }
            if (spec.contains("p"))
                g.p = spec.at("p").get<int>();
            if (spec.contains("q"))
                g.q = spec.at("q").get<int>();
            int colors = g.color.empty() ? 0 : *std::max_element(g.color.begin(), g.color.end()) + 1;
            return gen_mcis(g, spec.value("k", colors)).inst;
        }
        if (kind == "clique") {
            if (demo || input.empty())
                return gen_clique(demo_simple_graph(), k > 0 ? k : 2).inst;
            SimpleGraph g;
            g.names = spec.at("vertices").get<std::vector<std::string>>();
            for (const auto &e : spec.at("edges")) {
                auto a = std::find(g.names.begin(), g.names.end(), e.at(0).get<std::string>());
                auto b = std::find(g.names.begin(), g.names.end(), e.at(1).get<std::string>());
                if (a == g.names.end() || b == g.names.end())
                    throw RejectedInput("edge names an unknown vertex");
                g.edges.emplace_back(a - g.names.begin(), b - g.names.begin());
            }
            return gen_clique(g, spec.value("k", k)).inst;
        }
        if (kind == "smti") {
            if (input.empty())
                throw RejectedInput("smti needs --input");
            SmtiInstance s;
            for (const auto &m : spec.at("men"))
                s.men.push_back(int_groups(m));
            for (const auto &w : spec.at("women"))
                s.women.push_back(int_groups(w));
            return gen_smti(s).inst;
        }
    } catch (const json::exception &e) {
        throw RejectedInput(std::string("generator input: ") + e.what());
    }
    throw RejectedInput("unknown generator " + kind);
}

} // namespace

int cli_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Stable matchings with lower and upper quotas", "hrql"};
    app.require_subcommand(1);

    std::string inst_path, match_path, method = "auto", open_s, trace, out_path, kind, input, formula, guess_s;
    std::optional<int> count_open, count_closed;
    std::int64_t cap = kDefaultCap;
    int vars = 3, k = 0;
    std::uint64_t seed = 1;
    bool demo = false;

    auto *check = app.add_subcommand("check", "Report blocking pairs and coalitions of a matching");
    check->add_option("instance", inst_path)->required();
    check->add_option("matching", match_path)->required();

    auto *solve = app.add_subcommand("solve", "Find a stable matching or decide NO");
    solve->add_option("instance", inst_path)->required();
    solve->add_option("--method", method)->check(CLI::IsMember({"auto", "q2", "fpt", "brute", "ilp"}));
    solve->add_option("--open", open_s, "Comma-separated hospitals that must be exactly the open ones");
    solve->add_option("--count-open", count_open);
    solve->add_option("--count-closed", count_closed);
    solve->add_option("--trace", trace, "Write the q2 event log here");
    solve->add_option("-o,--output", out_path);

    auto *enumerate = app.add_subcommand("enumerate", "List all stable matchings");
    enumerate->add_option("instance", inst_path)->required();
    enumerate->add_option("--cap", cap);
    enumerate->add_option("-o,--output", out_path);

    auto *gen = app.add_subcommand("generate", "Build an instance from a reduction");
    gen->add_option("kind", kind)->required()->check(CLI::IsMember({"counterexample", "sat", "mcis", "clique", "smti"}));
    gen->add_option("--input", input, "JSON description of the source problem");
    gen->add_option("--formula", formula, "sat: clauses as '1,2,-3;...'");
    gen->add_option("--vars", vars, "sat: variables of a random formula");
    gen->add_option("--seed", seed);
    gen->add_option("--k", k, "clique size");
    gen->add_flag("--demo", demo, "mcis/clique: the worked example graph");
    gen->add_option("-o,--output", out_path)->required();

    auto *lp = app.add_subcommand("export-lp", "Write the integer program in LP format");
    lp->add_option("instance", inst_path)->required();
    lp->add_option("--guess", guess_s, "open=h1,h2;worst=h1:r3,h2:r2;full=h1");
    lp->add_option("-o,--output", out_path)->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty())
        rev.pop_back(); // program name
    try {
        app.parse(rev);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    auto emit = [&](const std::string &text) {
        if (out_path.empty())
            out << text;
        else
            write_file(out_path, text);
    };

    try {
        if (*check) {
            auto inst = parse_instance(read_file(inst_path));
            auto m = parse_matching(inst, read_file(match_path));
            auto rep = check_stability(inst, m);
            out << serialize_report(inst, rep);
            return rep.stable ? 0 : 1;
        }
        if (*solve) {
            auto inst = parse_instance(read_file(inst_path));
            int modes = !open_s.empty() + count_open.has_value() + count_closed.has_value();
            if (modes > 1)
                throw RejectedInput("--open, --count-open and --count-closed are exclusive");
            std::optional<Matching> m;
            if (!open_s.empty())
                m = solve_open(inst, parse_open(inst, open_s));
            else if (count_open)
                m = solve_count(inst, *count_open, CountMode::open);
            else if (count_closed)
                m = solve_count(inst, *count_closed, CountMode::closed);
            else
                m = solve_method(inst, method, trace);
            if (!m) {
                emit("NO\n");
                return 1;
            }
            emit(serialize_matching(inst, *m));
            return 0;
        }
        if (*enumerate) {
            auto inst = parse_instance(read_file(inst_path));
            auto all = enumerate_stable(inst, cap);
            json doc = json::array();
            for (const auto &m : all)
                doc.push_back(json::parse(serialize_matching(inst, m)));
            emit(doc.dump(2) + "\n");
            return 0;
        }
        if (*gen) {
            emit(serialize_instance(generate(kind, input, formula, vars, seed, k, demo)));
            return 0;
        }
        if (*lp) {
            auto inst = parse_instance(read_file(inst_path));
            auto model = guess_s.empty() ? build_haqlu_model(inst) : build_hrqlut_model(inst, parse_guess(inst, guess_s));
            emit(export_lp(model));
            return 0;
        }
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace hrql
