#ifndef IFG_CLI_HPP
#define IFG_CLI_HPP

// The ifg command-line front end, callable in-process for tests.
//
// Exit codes:
//   0  success
//   1  validate found violations
//   2  malformed or unreadable input
//   3  abstract instance violates the axioms (solve refused without --force)
//   4  memory budget exceeded
//   5  instance exceeds the brute-force oracle caps
//   6  solution failed its certificate check on an instance with the usual
//      guarantee (a forced solve reports the failure but exits 0)

#include "ifg/generators.hpp"
#include "ifg/instance.hpp"
#include "ifg/io.hpp"
#include "ifg/mwim.hpp"
#include "ifg/mwis.hpp"
#include "ifg/oracle.hpp"
#include "ifg/svg.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace ifg::cli {

enum exit_code : int
{
    ok = 0,
    violations = 1,
    malformed = 2,
    axiom_violation = 3,
    over_budget = 4,
    over_oracle_cap = 5,
    certificate_failed = 6
};

class cli_error : public std::runtime_error
{
public:
    cli_error(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
    int code() const { return code_; }

private:
    int code_;
};

/// Accepts a byte count with an optional K, M or G suffix (powers of 1024).
inline std::uint64_t parse_byte_size(const std::string& s)
{
    if (s.empty())
        throw std::invalid_argument("empty byte size");
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(s, &used);
    const std::string suffix = s.substr(used);
    if (suffix.empty())
        return v;
    if (suffix == "K" || suffix == "k")
        return v << 10;
    if (suffix == "M" || suffix == "m")
        return v << 20;
    if (suffix == "G" || suffix == "g")
        return v << 30;
    throw std::invalid_argument("unknown byte size suffix '" + suffix + "'");
}

/// --memory-budget when given, otherwise FILAMENT_MEMORY_BUDGET, otherwise
/// the library default.
inline std::uint64_t resolve_memory_budget(const std::string& flag)
{
    if (!flag.empty())
        return parse_byte_size(flag);
    if (const char* env = std::getenv("FILAMENT_MEMORY_BUDGET"); env && *env)
        return parse_byte_size(env);
    return default_memory_budget;
}

inline WeightRange parse_weight_range(const std::string& s)
{
    const auto colon = s.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("weight range must look like lo:hi");
    WeightRange r{std::stoll(s.substr(0, colon)), std::stoll(s.substr(colon + 1))};
    if (r.lo > r.hi)
        throw std::invalid_argument("weight range lo exceeds hi");
    return r;
}

inline std::string format_ms(double ms)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", ms);
    return buf;
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw cli_error(malformed, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-")
    {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw cli_error(malformed, "cannot write " + path);
    f << text;
}

template <class W>
InstanceRecord<W> load_record(const std::string& path)
{
    try
    {
        return parse_instance<W>(read_file(path));
    }
    catch (const parse_error& e)
    {
        throw cli_error(malformed, path + ": " + e.what());
    }
}

template <class W>
std::vector<std::string> geometry_problems(const InstanceRecord<W>& rec)
{
    std::vector<std::string> msgs;
    for (std::size_t i = 0; i < rec.size(); ++i)
        for (const auto& v : validate_filament(rec.filaments[i]).violations)
            msgs.push_back("filament " + rec.ids[i] + ": violates \"" + to_string(v.condition) + "\" at vertex "
                           + std::to_string(v.vertex));
    return msgs;
}

template <class W>
std::vector<std::string> axiom_problems(const InstanceRecord<W>& rec, const AxiomReport& report)
{
    std::vector<std::string> msgs;
    for (const auto& [a, b] : report.p1_violations)
        msgs.push_back("P1 violation: " + rec.ids[a] + " " + rec.ids[b] + " (disjoint intervals intersect)");
    for (const auto& [a, b] : report.p2_violations)
        msgs.push_back("P2 violation: " + rec.ids[a] + " " + rec.ids[b] + " (overlapping intervals do not intersect)");
    for (const auto& [a, b, c] : report.p3_violations)
        msgs.push_back("P3 violation: " + rec.ids[a] + " " + rec.ids[b] + " " + rec.ids[c]
                       + " (non-intersection does not propagate inward)");
    return msgs;
}

template <class W>
Instance<W> build_checked(const InstanceRecord<W>& rec, const std::string& path)
{
    const auto problems = geometry_problems(rec);
    if (!problems.empty())
        throw cli_error(malformed, path + ": " + problems.front());
    try
    {
        return rec.build();
    }
    catch (const invalid_instance& e)
    {
        throw cli_error(malformed, path + ": " + e.what());
    }
}

struct SolveFlags
{
    std::string problem = "mwis";
    std::string path;
    std::string format = "text";
    std::string memory_budget;
    std::string order = "bottom-up";
    std::string out;
    bool force = false;
    bool float_weights = false;
};

inline void emit_report(const SolveFlags& flags, nlohmann::json doc, std::ostream& out)
{
    if (flags.format == "machine")
    {
        write_output(flags.out, doc.dump() + "\n", out);
        return;
    }
    std::ostringstream t;
    t << "problem: " << doc["problem"].get<std::string>() << "\n";
    t << "solver: " << doc["solver"].get<std::string>() << "\n";
    t << "weight: " << doc["weight"].dump() << "\n";
    if (doc.contains("s_prime"))
        t << "s_prime: " << doc["s_prime"].dump() << "\n";
    if (doc.contains("members"))
    {
        t << "members:";
        for (const auto& m : doc["members"])
            t << " " << m.get<std::string>();
        t << "\n";
    }
    if (doc.contains("edges"))
    {
        t << "edges:";
        for (const auto& e : doc["edges"])
            t << " " << e[0].get<std::string>() << "-" << e[1].get<std::string>();
        t << "\n";
    }
    t << "evaluated_states: " << doc["evaluated_states"].dump() << "\n";
    t << "wall_time_ms: " << format_ms(doc["wall_time_ms"].get<double>()) << "\n";
    t << "certificate: " << (doc["certificate"].get<bool>() ? "ok" : "FAILED") << "\n";
    if (!doc["guarantee"].get<bool>())
        t << "note: no correctness guarantee (axioms violated, solved with --force)\n";
    write_output(flags.out, t.str(), out);
}

template <class W>
int run_solve(const SolveFlags& flags, bool oracle, std::ostream& out, std::ostream& err)
{
    using clock = std::chrono::steady_clock;
    using nlohmann::json;
    const auto rec = load_record<W>(flags.path);
    const auto inst = build_checked(rec, flags.path);

    bool guarantee = true;
    if (!inst.geometric())
    {
        const auto report = check_axioms(inst);
        if (!report.empty())
        {
            for (const auto& m : axiom_problems(rec, report))
                err << m << "\n";
            if (!flags.force && !oracle)
                throw cli_error(axiom_violation, "abstract instance violates the intersection axioms; use --force");
            guarantee = oracle;
        }
    }

    EdgeWeights<W> edge_weights;
    try
    {
        edge_weights = rec.edge_weight_map();
    }
    catch (const parse_error& e)
    {
        throw cli_error(malformed, e.what());
    }
    const EdgeWeights<W>* ew = rec.edge_weights.empty() ? nullptr : &edge_weights;

    SolveOptions opts;
    opts.memory_budget = resolve_memory_budget(flags.memory_budget);
    opts.order = flags.order == "memoized" ? EvaluationOrder::memoized : EvaluationOrder::bottom_up;

    json doc;
    doc["problem"] = flags.problem;
    doc["solver"] = oracle ? "oracle" : "dp";
    doc["guarantee"] = guarantee;
    bool certified = false;
    const auto start = clock::now();
    try
    {
        if (flags.problem == "mwis")
        {
            Solution<W> sol;
            std::uint64_t states = 0;
            if (oracle)
            {
                sol = brute_mwis(inst);
                states = std::uint64_t{1} << inst.size();
            }
            else
            {
                const auto idx = build_index(inst);
                auto r = solve_mwis(idx, opts);
                sol = std::move(r.solution);
                states = state_count(r.table);
            }
            certified = verify_independent_set(inst, sol);
            doc["weight"] = sol.weight;
            json members = json::array();
            for (auto i : sol.members)
                members.push_back(rec.ids[i]);
            doc["members"] = members;
            doc["evaluated_states"] = states;
        }
        else
        {
            MatchingSolution<W> sol;
            std::uint64_t states = 0;
            std::size_t s_prime = 0;
            if (oracle)
            {
                sol = brute_mwim(inst, ew);
                s_prime = intersection_edges(inst).size();
                states = std::uint64_t{1} << s_prime;
            }
            else
            {
                try
                {
                    auto r = solve_mwim(inst, ew, opts);
                    sol = std::move(r.solution);
                    states = state_count(r.table);
                    s_prime = r.union_size;
                }
                catch (const std::invalid_argument& e)
                {
                    throw cli_error(malformed, e.what());
                }
            }
            certified = verify_induced_matching(inst, sol.edges);
            W total{};
            for (const auto& e : sol.edges)
            {
                W w = checked_add(W(inst.weight(e.first)), W(inst.weight(e.second)));
                if (ew)
                    if (auto it = ew->find(e); it != ew->end())
                        w = it->second;
                total = checked_add(total, w);
            }
            certified = certified && total == sol.weight;
            doc["weight"] = sol.weight;
            json edges = json::array();
            for (const auto& [a, b] : sol.edges)
                edges.push_back(json::array({rec.ids[a], rec.ids[b]}));
            doc["edges"] = edges;
            doc["s_prime"] = s_prime;
            doc["evaluated_states"] = states;
        }
    }
    catch (const memory_budget_exceeded& e)
    {
        throw cli_error(over_budget, e.what());
    }
    catch (const oracle_cap_exceeded& e)
    {
        throw cli_error(over_oracle_cap, e.what());
    }
    const double ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
    doc["wall_time_ms"] = ms;
    doc["certificate"] = certified;
    emit_report(flags, doc, out);
    if (!certified)
    {
        err << "solution failed its certificate check\n";
        if (guarantee)
            return certificate_failed;
    }
    return ok;
}

inline int run_validate(const std::string& path, std::ostream& out)
{
    const auto rec = load_record<double>(path);
    auto problems = geometry_problems(rec);
    if (problems.empty())
    {
        try
        {
            const auto inst = rec.build();
            const auto more = axiom_problems(rec, check_axioms(inst));
            problems.insert(problems.end(), more.begin(), more.end());
        }
        catch (const invalid_instance& e)
        {
            throw cli_error(malformed, path + ": " + e.what());
        }
    }
    for (const auto& p : problems)
        out << p << "\n";
    out << (problems.empty() ? "ok" : std::to_string(problems.size()) + " violation(s)") << "\n";
    return problems.empty() ? ok : violations;
}

struct GenFlags
{
    std::string family = "random-arcs";
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::string weights;
    std::size_t segments = 3;
    std::string out;
};

inline GeneratorSpec make_spec(const GenFlags& g)
{
    const auto family = parse_family(g.family);
    if (!family)
        throw cli_error(malformed, "unknown family '" + g.family + "'");
    GeneratorSpec spec;
    spec.family = *family;
    spec.n = g.n;
    spec.seed = g.seed;
    spec.segments = g.segments;
    if (!g.weights.empty())
        spec.weights = parse_weight_range(g.weights);
    return spec;
}

inline InstanceRecord<std::int64_t> generated_record(const GeneratorSpec& spec)
{
    auto rec = to_record(generate(spec));
    if (spec.family == Family::worstcase)
        for (std::size_t i = 0; i < rec.ids.size(); ++i)
            rec.ids[i] = (i < spec.n / 2 ? "o" : "i") + std::to_string(i < spec.n / 2 ? i : i - spec.n / 2);
    return rec;
}

inline int run_gen(const GenFlags& g, std::ostream& out)
{
    const auto spec = make_spec(g);
    std::string text;
    try
    {
        text = serialize(generated_record(spec));
    }
    catch (const std::invalid_argument& e)
    {
        throw cli_error(malformed, e.what());
    }
    write_output(g.out, text, out);
    return ok;
}

struct BenchFlags
{
    GenFlags gen;
    std::string problem = "mwis";
    std::vector<std::size_t> sizes;
    std::size_t reps = 1;
    std::string memory_budget;
    std::string out;
};

inline std::string bench_csv(const BenchFlags& b)
{
    using clock = std::chrono::steady_clock;
    std::ostringstream csv;
    csv << "family,n,s_prime,evaluated_states,wall_time_ms,optimal_weight\n";
    SolveOptions opts;
    opts.memory_budget = resolve_memory_budget(b.memory_budget);
    for (std::size_t n : b.sizes)
        for (std::size_t rep = 0; rep < b.reps; ++rep)
        {
            GenFlags g = b.gen;
            g.n = n;
            g.seed = b.gen.seed + rep;
            const auto inst = generate(make_spec(g));
            std::string s_prime;
            std::uint64_t states = 0;
            std::int64_t weight = 0;
            const auto start = clock::now();
            if (b.problem == "mwis")
            {
                const auto r = solve_mwis(build_index(inst), opts);
                states = state_count(r.table);
                weight = r.solution.weight;
            }
            else
            {
                const auto r = solve_mwim(inst, nullptr, opts);
                states = state_count(r.table);
                weight = r.solution.weight;
                s_prime = std::to_string(r.union_size);
            }
            const double ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
            csv << b.gen.family << "," << n << "," << s_prime << "," << states << "," << format_ms(ms) << ","
                << weight << "\n";
        }
    return csv.str();
}

inline int run_bench(const BenchFlags& b, std::ostream& out)
{
    std::string text;
    try
    {
        text = bench_csv(b);
    }
    catch (const memory_budget_exceeded& e)
    {
        throw cli_error(over_budget, e.what());
    }
    catch (const std::invalid_argument& e)
    {
        throw cli_error(malformed, e.what());
    }
    write_output(b.out, text, out);
    return ok;
}

inline std::set<std::size_t> highlight_from(const InstanceRecord<double>& rec, const std::string& path)
{
    std::set<std::size_t> out;
    nlohmann::json doc;
    try
    {
        doc = nlohmann::json::parse(read_file(path));
    }
    catch (const nlohmann::json::exception& e)
    {
        throw cli_error(malformed, path + ": " + e.what());
    }
    std::vector<std::string> ids;
    if (doc.contains("members"))
        for (const auto& m : doc["members"])
            ids.push_back(m.get<std::string>());
    if (doc.contains("edges"))
        for (const auto& e : doc["edges"])
            for (const auto& m : e)
                ids.push_back(m.get<std::string>());
    for (const auto& id : ids)
    {
        const auto pos = rec.position(id);
        if (!pos)
            throw cli_error(malformed, path + ": unknown id '" + id + "'");
        out.insert(*pos);
    }
    return out;
}

inline int run_render(const std::string& path, const std::string& out_path, const std::string& highlight,
                      std::ostream& out)
{
    const auto rec = load_record<double>(path);
    std::set<std::size_t> hl;
    if (!highlight.empty())
        hl = highlight_from(rec, highlight);
    write_output(out_path, render_svg(rec, hl), out);
    return ok;
}

/// Parses argv and runs one subcommand. Never calls exit().
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"Independent sets and induced matchings of interval filament graphs", "ifg"};
    app.require_subcommand(1);

    SolveFlags solve_flags;
    auto add_solve_flags = [&](CLI::App* sub, bool dp) {
        sub->add_option("problem", solve_flags.problem, "mwis or mwim")
            ->required()
            ->check(CLI::IsMember({"mwis", "mwim"}));
        sub->add_option("instance", solve_flags.path, "instance file")->required();
        sub->add_option("--format", solve_flags.format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
        sub->add_option("--out", solve_flags.out, "write the report here instead of stdout");
        sub->add_flag("--float-weights", solve_flags.float_weights, "read weights as floating point (not exact)");
        if (dp)
        {
            sub->add_flag("--force", solve_flags.force, "solve abstract instances that violate the axioms");
            sub->add_option("--memory-budget", solve_flags.memory_budget, "DP table limit in bytes (K/M/G suffix)");
            sub->add_option("--order", solve_flags.order, "bottom-up or memoized")
                ->check(CLI::IsMember({"bottom-up", "memoized"}));
        }
    };
    auto* solve = app.add_subcommand("solve", "solve with the dynamic program");
    add_solve_flags(solve, true);
    auto* oracle = app.add_subcommand("oracle", "solve by exhaustive enumeration");
    add_solve_flags(oracle, false);

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "check filament validity and the intersection axioms");
    validate->add_option("instance", validate_path, "instance file")->required();

    GenFlags gen_flags;
    auto add_gen_flags = [](CLI::App* sub, GenFlags& g) {
        sub->add_option("--family", g.family, "worstcase, random-arcs, random-polylines or nested-arcs");
        sub->add_option("--seed", g.seed, "64-bit seed");
        sub->add_option("--weights", g.weights, "integer weight range lo:hi");
        sub->add_option("--segments", g.segments, "segments per polyline");
    };
    auto* gen = app.add_subcommand("gen", "generate an instance");
    add_gen_flags(gen, gen_flags);
    gen->add_option("--n", gen_flags.n, "filament count (even for worstcase)");
    gen->add_option("--out", gen_flags.out, "output path (default stdout)");

    BenchFlags bench_flags;
    auto* bench = app.add_subcommand("bench", "time the solvers over a size sweep");
    add_gen_flags(bench, bench_flags.gen);
    bench->add_option("--problem", bench_flags.problem, "mwis or mwim")->check(CLI::IsMember({"mwis", "mwim"}));
    bench->add_option("--sizes", bench_flags.sizes, "filament counts")->delimiter(',')->required();
    bench->add_option("--reps", bench_flags.reps, "repetitions per size");
    bench->add_option("--memory-budget", bench_flags.memory_budget, "DP table limit in bytes (K/M/G suffix)");
    bench->add_option("--out", bench_flags.out, "CSV output path (default stdout)");

    std::string render_path;
    std::string render_out;
    std::string render_highlight;
    auto* render = app.add_subcommand("render", "draw an instance as SVG");
    render->add_option("instance", render_path, "instance file")->required();
    render->add_option("--out", render_out, "SVG output path (default stdout)");
    render->add_option("--highlight", render_highlight, "machine-format solution whose members are highlighted");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return ok;
    }
    catch (const CLI::ParseError& e)
    {
        err << e.what() << "\n";
        return malformed;
    }

    try
    {
        if (solve->parsed() || oracle->parsed())
        {
            const bool is_oracle = oracle->parsed();
            return solve_flags.float_weights ? run_solve<double>(solve_flags, is_oracle, out, err)
                                             : run_solve<std::int64_t>(solve_flags, is_oracle, out, err);
        }
        if (validate->parsed())
            return run_validate(validate_path, out);
        if (gen->parsed())
            return run_gen(gen_flags, out);
        if (bench->parsed())
            return run_bench(bench_flags, out);
        if (render->parsed())
            return run_render(render_path, render_out, render_highlight, out);
    }
    catch (const cli_error& e)
    {
        err << "error: " << e.what() << "\n";
        return e.code();
    }
    catch (const weight_overflow& e)
    {
        err << "error: " << e.what() << "\n";
        return malformed;
    }
    catch (const std::invalid_argument& e)
    {
        err << "error: " << e.what() << "\n";
        return malformed;
    }
    return ok;
}

} // namespace ifg::cli

#endif // IFG_CLI_HPP
