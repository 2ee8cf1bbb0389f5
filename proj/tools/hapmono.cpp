// hapmono: command-line front end.
//
// Exit codes: 0 success (every requested scenario PASS), 1 definite failure
// or bad input, 2 undecided within budget, 64 usage.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "hapmono.hpp"

using namespace hapmono;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUndecided = 2;
constexpr int kUsage = 64;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;

    explicit Output(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw invalid_input("cannot write " + path);
        os = &file;
    }
};

Budget make_budget(double seconds) { return seconds > 0 ? Budget::seconds(seconds) : Budget::unlimited(); }

std::string pair_text(const Pair& p) { return "{" + std::to_string(p.a) + "," + std::to_string(p.b) + "}"; }

int cmd_pm(int n, bool dump, std::ostream& os) {
    const TeamSet ts(n);
    auto parts = enumerate_partitions(ts);
    auto pm = enumerate_pm(ts);
    os << "teams " << n << "\n";
    os << "partitions " << parts.size() << "\n";
    os << "generators " << pm.size() << "\n";
    if (dump)
        for (const auto& g : pm) os << format_vector(g.to_vector());
    return kOk;
}

int cmd_feasible(const RegularGraph& g, const HapTable& hap, Budget budget, std::ostream& os) {
    PolytopeInstance p = build_polytope(g, hap);
    FractionalResult fr = fractional_feasible(p, budget);
    if (fr.feasible) {
        os << "feasible\n";
        for (std::size_t i = 0; i < fr.point.size(); ++i)
            if (fr.point[i] != 0)
                os << "x day " << p.variables[i].day + 1 << " " << pair_text(p.variables[i].edge) << " "
                   << to_string(fr.point[i]) << "\n";
    } else {
        os << "infeasible\nfarkas";
        for (const auto& y : fr.farkas) os << " " << to_string(y);
        os << "\n";
    }
    return kOk;
}

int cmd_schedule(const RegularGraph& g, const HapTable& hap, Budget budget, std::ostream& os) {
    ScheduleResult sr = find_integral_schedule(g, hap, budget);
    if (sr.status == SearchStatus::Undecided) {
        os << "UNDECIDED after " << sr.nodes << " nodes\n";
        return kUndecided;
    }
    if (sr.status == SearchStatus::Found) {
        os << format_schedule(sr.schedule);
        return kOk;
    }
    os << "no-schedule\n";
    os << "search nodes " << sr.nodes << "\n";
    PolytopeInstance p = build_polytope(g, hap);
    FractionalResult fr = fractional_feasible(p, budget);
    if (!fr.feasible) {
        os << "fractional infeasible; farkas";
        for (const auto& y : fr.farkas) os << " " << to_string(y);
        os << "\n";
    } else {
        os << "fractional feasible: the vector lies in the rational cone\n";
    }
    return kOk;
}

int cmd_hilbert(const std::vector<PMGenerator>& gens, bool edge_bound_one, Budget budget, std::ostream& os) {
    HilbertBasisResult hb = hilbert_basis(gens, budget, edge_bound_one);
    os << "# generators " << hb.generator_count << " rank " << hb.stats.rank << " support hyperplanes "
       << hb.stats.support_hyperplanes << "\n";
    if (!hb.complete) {
        os << "UNDECIDED: basis incomplete within budget\n";
        return kUndecided;
    }
    os << format_hilbert(hb);
    return kOk;
}

int cmd_bfactor(const RegularGraph& g, Budget budget, std::uint64_t seed, std::ostream& os) {
    BFactorVerdict v = decide_bfactor(g, budget, seed);
    os << "verdict " << to_string(v.verdict) << "\n";
    os << "method " << to_string(v.method) << "\n";
    os << "additional " << v.additional << "\n";
    for (const auto& sup : v.obstruction_supports) {
        os << "obstruction";
        for (const Pair& p : sup) os << " " << pair_text(p);
        os << "\n";
    }
    if (!v.note.empty()) os << "note " << v.note << "\n";
    if (v.witness) {
        os << "witness\n" << format_vector(*v.witness);
        os << format_hap(hap_of(*v.witness));
    }
    return v.verdict == Verdict::Undecided ? kUndecided : kOk;
}

int cmd_antiprism(int n, Budget budget, std::ostream& os) {
    AntiprismCounterexample c = antiprism_counterexample(n, budget);
    os << "antiprism " << n << "\n";
    os << "source " << c.source << "\n";
    for (const auto& note : c.notes) os << "note " << note << "\n";
    if (c.twists) {
        for (std::size_t d = 0; d < c.twists->twists.size(); ++d) {
            os << "twists day " << d + 1;
            for (int i : c.twists->twists[d]) os << " " << pair_text(Pair(i, (i + 1) % n));
            os << "\n";
        }
    }
    os << "double-cover " << (c.double_cover_ok ? "verified" : "missing") << "\n";
    os << "schedule " << (c.no_schedule ? "none" : "exists or unknown") << "\n";
    os << "stable-4-set " << (c.no_disjoint_system ? "none" : "exists or unknown") << "\n";
    os << format_hap(c.hap) << format_vector(c.v);
    if (c.double_cover_ok) os << format_decomposition(as_decomposition(c.double_cover, 2));
    if (c.valid()) return kOk;
    return c.undecided ? kUndecided : kFail;
}

int cmd_verify(std::vector<std::string> names, bool include_slow, int jobs, double seconds, double slow_seconds,
               const std::string& checkpoint, std::ostream& os) {
    std::vector<const Scenario*> chosen;
    if (names.empty()) {
        for (const auto& s : scenarios())
            if (include_slow || !s.slow) chosen.push_back(&s);
    } else {
        for (const auto& name : names) {
            const Scenario* s = find_scenario(name);
            if (!s) {
                std::cerr << "unknown scenario: " << name << "\n";
                return kUsage;
            }
            if (s->slow && !include_slow) {
                std::cerr << "scenario " << name << " is long-running; add --include-slow\n";
                return kUsage;
            }
            chosen.push_back(s);
        }
    }
    ScenarioOptions opt{checkpoint};
    std::vector<Report> reports(chosen.size());
    const std::size_t width = static_cast<std::size_t>(std::max(1, jobs));
    for (std::size_t first = 0; first < chosen.size(); first += width) {
        std::vector<std::future<Report>> running;
        const std::size_t last = std::min(chosen.size(), first + width);
        for (std::size_t i = first; i < last; ++i) {
            const Scenario* s = chosen[i];
            Budget b = make_budget(s->slow ? slow_seconds : seconds);
            running.push_back(std::async(width == 1 ? std::launch::deferred : std::launch::async,
                                         [s, b, opt] { return run_scenario(*s, b, opt); }));
        }
        for (std::size_t i = first; i < last; ++i) reports[i] = running[i - first].get();
    }
    bool fail = false, undecided = false;
    for (const auto& r : reports) {
        os << format_report(r) << "\n";
        fail = fail || r.outcome == Outcome::Fail;
        undecided = undecided || r.outcome == Outcome::Undecided;
    }
    return fail ? kFail : undecided ? kUndecided : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Home-away pattern feasibility and Hilbert bases of perfect-matching monoids"};
    app.require_subcommand(1);
    double seconds = 300;
    std::uint64_t seed = 0;
    std::string out_path;
    app.add_option("--budget", seconds, "seconds per search or scenario; 0 = unlimited")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--seed", seed, "search-order seed; never changes a verdict");
    app.add_option("-o,--output", out_path, "write the report here instead of stdout");

    int n = 0;
    bool dump = false;
    auto* pm = app.add_subcommand("pm", "count equal partitions and PM(V) generators");
    pm->add_option("--n", n, "team count")->required();
    pm->add_flag("--dump", dump, "print every generator");

    std::string graph_path, hap_path;
    auto* feas = app.add_subcommand("feasible", "fractional schedule or Farkas certificate");
    feas->add_option("--graph", graph_path)->required()->check(CLI::ExistingFile);
    feas->add_option("--hap", hap_path)->required()->check(CLI::ExistingFile);

    auto* sched = app.add_subcommand("schedule", "integral schedule or proof that none exists");
    sched->add_option("--graph", graph_path)->required()->check(CLI::ExistingFile);
    sched->add_option("--hap", hap_path)->required()->check(CLI::ExistingFile);

    bool edge_bound_one = false;
    auto* hil = app.add_subcommand("hilbert", "Hilbert basis and additional generators");
    auto* hil_n = hil->add_option("--n", n, "all of PM(V) for n teams");
    auto* hil_g = hil->add_option("--graph", graph_path, "generators restricted to a graph")->check(CLI::ExistingFile);
    hil_n->excludes(hil_g);
    hil->add_flag("--edge-bound-one", edge_bound_one, "keep only elements with edge components <= 1");

    auto* bf = app.add_subcommand("bfactor", "B-factorizability verdict");
    bf->add_option("--graph", graph_path)->required()->check(CLI::ExistingFile);

    auto* anti = app.add_subcommand("antiprism", "antiprism counterexample bundle");
    anti->add_option("--n", n, "even vertex count >= 6")->required();

    std::vector<std::string> names;
    bool include_slow = false;
    int jobs = 1;
    double slow_seconds = 0;
    std::string checkpoint;
    auto* ver = app.add_subcommand("verify-paper", "run the acceptance scenarios");
    ver->add_option("--scenario", names, "scenario name; repeatable");
    ver->add_flag("--include-slow", include_slow, "also run long scenarios (k44)");
    ver->add_option("--jobs", jobs, "scenarios run concurrently")->check(CLI::PositiveNumber);
    ver->add_option("--slow-budget", slow_seconds, "seconds for long scenarios; 0 = unlimited");
    ver->add_option("--checkpoint", checkpoint, "progress file for long scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        Output out(out_path);
        std::ostream& os = *out.os;
        const Budget budget = make_budget(seconds);
        if (*pm) return cmd_pm(n, dump, os);
        if (*feas || *sched) {
            RegularGraph g = parse_graph(slurp(graph_path));
            HapTable hap = parse_hap(slurp(hap_path));
            return *feas ? cmd_feasible(g, hap, budget, os) : cmd_schedule(g, hap, budget, os);
        }
        if (*hil) {
            if (*hil_g) return cmd_hilbert(restricted_generators(parse_graph(slurp(graph_path))), edge_bound_one, budget, os);
            if (*hil_n) return cmd_hilbert(enumerate_pm(TeamSet(n)), edge_bound_one, budget, os);
            std::cerr << "hilbert needs --n or --graph\n";
            return kUsage;
        }
        if (*bf) return cmd_bfactor(parse_graph(slurp(graph_path)), budget, seed, os);
        if (*anti) return cmd_antiprism(n, budget, os);
        if (*ver) return cmd_verify(names, include_slow, jobs, seconds, slow_seconds, checkpoint, os);
    } catch (const budget_exceeded& e) {
        std::cout << "UNDECIDED: " << e.what() << "\n";
        return kUndecided;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kFail;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kUsage;
}
