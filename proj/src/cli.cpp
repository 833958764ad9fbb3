#include "peg/cli.hpp"

#include <cerrno>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "peg/fgh.hpp"
#include "peg/fullobs.hpp"
#include "peg/game.hpp"
#include "peg/minsky.hpp"
#include "peg/reductions.hpp"
#include "peg/strategy.hpp"
#include "peg/tree_solver.hpp"

namespace peg {

namespace {

using nlohmann::ordered_json;

// Thrown by handlers to end the run with a message and an exit code.
struct Failure {
    int code;
    std::string message;
};

struct Options {
    std::size_t limit_nodes = 1'000'000;
    double limit_time = 60;
    std::string format = "text";
    std::uint64_t seed = 0;
    bool timing = false;

    bool json() const { return format == "json"; }

    BuildOptions build(bool reuse) const
    {
        BuildOptions o;
        o.reuse_equal_beliefs = reuse;
        o.limits.max_nodes = limit_nodes ? std::optional<std::size_t>(limit_nodes) : std::nullopt;
        if (limit_time > 0)
            o.limits.max_time = std::chrono::milliseconds(static_cast<std::int64_t>(limit_time * 1000));
        else
            o.limits.max_time.reset();
        return o;
    }
};

std::string read_text(const std::string& path, std::istream& in)
{
    std::ostringstream os;
    if (path == "-") {
        os << in.rdbuf();
        return os.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Failure{exit_usage, "cannot read '" + path + "': " + std::strerror(errno)};
    os << f.rdbuf();
    return os.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Failure{exit_usage, "cannot write '" + path + "': " + std::strerror(errno)};
    f << text;
    if (!f) throw Failure{exit_usage, "error writing '" + path + "'"};
}

Game load_game(const std::string& path, std::istream& in)
{
    std::string text = read_text(path, in);
    try {
        return parse_game(text);
    } catch (const GameError& e) {
        throw Failure{exit_usage, path + ": " + e.what()};
    }
}

MinskyMachine load_machine(const std::string& path, std::istream& in)
{
    std::string text = read_text(path, in);
    try {
        return parse_machine(text);
    } catch (const MinskyError& e) {
        throw Failure{exit_usage, path + ": " + e.what()};
    }
}

Int parse_credit(const std::string& text)
{
    Int c;
    try {
        c = parse_int(text);
    } catch (const std::invalid_argument&) {
        throw Failure{exit_usage, "credit must be an integer, got '" + text + "'"};
    }
    if (c < 0) throw Failure{exit_usage, "credit must be non-negative"};
    return c;
}

Int parse_natural(const std::string& text, const char* what)
{
    Int v;
    try {
        v = parse_int(text);
    } catch (const std::invalid_argument&) {
        throw Failure{exit_usage, std::string(what) + " must be an integer, got '" + text + "'"};
    }
    if (v < 0) throw Failure{exit_usage, std::string(what) + " must be non-negative"};
    return v;
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) {
        auto b = item.find_first_not_of(' ');
        auto e = item.find_last_not_of(' ');
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

ordered_json int_json(const Int& v)
{
    if (fits_int64(v)) return static_cast<std::int64_t>(v);
    return v.str();
}

int verdict_code(Verdict v)
{
    switch (v) {
    case Verdict::win: return exit_ok;
    case Verdict::lose: return exit_false;
    case Verdict::resource_limit: return exit_resource;
    }
    return exit_usage;
}

void print_report(const Options& o, const SolveReport& r, std::ostream& out)
{
    if (o.json()) {
        out << report_to_json(r, o.timing) << "\n";
        return;
    }
    out << to_string(r.verdict) << "\n";
    out << "nodes_built: " << r.nodes_built << "\n";
    out << "max_depth: " << r.max_depth << "\n";
    out << "control_parameter: " << r.control_parameter << "\n";
    if (o.timing) out << "elapsed_ms: " << std::chrono::duration<double, std::milli>(r.elapsed).count() << "\n";
}

void print_value(const Options& o, const Int& v, std::ostream& out)
{
    if (o.json())
        out << ordered_json{{"value", int_json(v)}}.dump() << "\n";
    else
        out << v << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Energy games with partial observation: solver, strategies, generators"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--limits-nodes", o.limit_nodes, "Node budget for tree construction (0 = unlimited)")
        ->capture_default_str();
    app.add_option("--limits-time", o.limit_time, "Time budget in seconds (0 = unlimited)")->capture_default_str();
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    app.add_option("--seed", o.seed, "Seed for randomized adversaries")->capture_default_str();
    app.add_flag("--timing", o.timing, "Report elapsed time");

    std::string game_path, credit_text = "0", out_path, dot_path;
    bool no_reuse = false;

    auto* solve = app.add_subcommand("solve", "Decide the fixed initial credit problem");
    solve->add_option("game", game_path, "Game file or - for stdin")->required();
    solve->add_option("--credit,-c", credit_text, "Initial credit")->capture_default_str();
    solve->add_flag("--no-reuse", no_reuse, "Disable reuse of finished equal beliefs");
    solve->add_option("--dot", dot_path, "Write the safety game in DOT format");

    auto* strategy = app.add_subcommand("strategy", "Extract a finite-memory winning strategy");
    strategy->add_option("game", game_path, "Game file or - for stdin")->required();
    strategy->add_option("--credit,-c", credit_text, "Initial credit")->capture_default_str();
    strategy->add_option("-o,--output", out_path, "Strategy file (default stdout)");
    strategy->add_option("--dot", dot_path, "Write the strategy in DOT format");
    strategy->add_flag("--no-reuse", no_reuse, "Disable reuse of finished equal beliefs");

    std::string strat_path, adam_name = "random", word_text, cycle_text;
    std::size_t steps = 10'000, depth = 0;
    auto* simulate_cmd = app.add_subcommand("simulate", "Play a strategy against an adversary");
    simulate_cmd->add_option("game", game_path, "Game file or - for stdin")->required();
    simulate_cmd->add_option("--credit,-c", credit_text, "Initial credit")->capture_default_str();
    auto* strat_opt = simulate_cmd->add_option("--strategy", strat_path, "Strategy file from 'strategy'");
    auto* word_opt = simulate_cmd->add_option("--word", word_text, "Blind word prefix, comma separated");
    simulate_cmd->add_option("--cycle", cycle_text, "Letters repeated after the prefix, comma separated")
        ->needs(word_opt);
    strat_opt->excludes(word_opt);
    simulate_cmd->add_option("--adam", adam_name, "Adversary")
        ->check(CLI::IsMember({"random", "greedy", "exhaustive"}))
        ->capture_default_str();
    simulate_cmd->add_option("--steps", steps, "Rounds to play")->capture_default_str();
    simulate_cmd->add_option("--depth", depth, "Exploration depth for the exhaustive adversary (default: steps)");

    auto* oracle = app.add_subcommand("oracle", "Minimal credits of a full-observation game");
    oracle->add_option("game", game_path, "Game file or - for stdin")->required();
    oracle->add_option("--credit,-c", credit_text, "Initial credit")->capture_default_str();

    std::string machine_path;
    std::size_t pump_m = 1;
    int which = 1, counter = 1;
    std::string letter = "#";
    auto* gen = app.add_subcommand("gen", "Generate reduction games");
    gen->require_subcommand(1);
    auto* gen_minsky = gen->add_subcommand("minsky", "Blind game G_M simulating a machine");
    gen_minsky->add_option("--machine", machine_path, "Machine file")->required();
    gen_minsky->add_option("-o,--output", out_path, "Game file (default stdout)");
    auto* gen_pump_cmd = gen->add_subcommand("pump", "Pumping game I_m");
    gen_pump_cmd->add_option("--m", pump_m, "Dimension m >= 1")->required()->check(CLI::PositiveNumber);
    gen_pump_cmd->add_option("-o,--output", out_path, "Game file (default stdout)");
    auto* gen_full_cmd = gen->add_subcommand("full", "Pumping copies followed by G_M");
    gen_full_cmd->add_option("--machine", machine_path, "Machine file")->required();
    gen_full_cmd->add_option("-o,--output", out_path, "Game file (default stdout)");
    auto* gen_gadget = gen->add_subcommand("gadget", "One gadget of G_M on its own");
    gen_gadget->add_option("--machine", machine_path, "Machine file")->required();
    gen_gadget->add_option("--which", which, "Gadget number")->required()->check(CLI::Range(1, 5));
    gen_gadget->add_option("--letter", letter, "Guarded letter (gadget 2)")->capture_default_str();
    gen_gadget->add_option("--counter", counter, "Counter (gadgets 4 and 5)")
        ->check(CLI::Range(1, 2))
        ->capture_default_str();
    gen_gadget->add_option("-o,--output", out_path, "Game file (default stdout)");

    std::uint64_t bound = 0;
    std::optional<std::uint64_t> step_limit;
    auto* minsky = app.add_subcommand("minsky", "Two-counter machines");
    minsky->require_subcommand(1);
    auto* minsky_run = minsky->add_subcommand("run", "Bounded run of a machine");
    minsky_run->add_option("--machine", machine_path, "Machine file")->required();
    minsky_run->add_option("--bound", bound, "Counter bound")->required();
    minsky_run->add_option("--steps", step_limit, "Step limit (default |M| * bound^2)");

    std::size_t fgh_i = 0, max_bits = Budget{}.max_bits;
    std::string x_text = "0", a_text, rules_text;
    bool trace = false;
    auto* fgh = app.add_subcommand("fgh", "Fast-growing functions and the rewrite calculus");
    fgh->require_subcommand(1);
    fgh->add_option("--max-bits", max_bits, "Bit budget for intermediate values")->capture_default_str();
    auto* fgh_eval = fgh->add_subcommand("eval", "F_i(x)");
    fgh_eval->add_option("--i", fgh_i, "Level i")->required();
    fgh_eval->add_option("--x", x_text, "Argument x")->required();
    auto* fgh_omega = fgh->add_subcommand("omega", "F_omega(x)");
    fgh_omega->add_option("--x", x_text, "Argument x")->required();
    auto* fgh_phi = fgh->add_subcommand("phi", "Phi(a_k,...,a_0; x)");
    fgh_phi->add_option("--a", a_text, "Vector a_k,...,a_0")->required();
    fgh_phi->add_option("--x", x_text, "Argument x")->required();
    auto* fgh_rewrite = fgh->add_subcommand("rewrite", "Replay rewrite rules from (a; x)");
    fgh_rewrite->add_option("--a", a_text, "Vector a_k,...,a_0")->required();
    fgh_rewrite->add_option("--x", x_text, "Argument x")->required();
    fgh_rewrite->add_option("--rules", rules_text, "Rules, comma separated (default: canonical proper schedule)");
    fgh_rewrite->add_flag("--trace", trace, "Print every intermediate state");

    auto* check = app.add_subcommand("check", "Validate a game file");
    check->add_option("game", game_path, "Game file or - for stdin")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        const Budget budget{max_bits, Budget{}.max_steps};

        if (*solve) {
            Game g = load_game(game_path, in);
            Int c0 = parse_credit(credit_text);
            auto opts = o.build(!no_reuse);
            SolveReport r;
            if (!dot_path.empty()) {
                auto built = build_safety_game(g, c0, opts);
                write_text(dot_path, safety_game_to_dot(built.game, g), out);
                r = built.report;
            } else {
                r = decide(g, c0, opts);
            }
            print_report(o, r, out);
            return verdict_code(r.verdict);
        }

        if (*strategy) {
            Game g = load_game(game_path, in);
            Int c0 = parse_credit(credit_text);
            auto built = build_safety_game(g, c0, o.build(!no_reuse));
            if (built.report.verdict == Verdict::resource_limit) {
                err << "ResourceLimit: safety game not finished after " << built.report.nodes_built << " nodes\n";
                return exit_resource;
            }
            auto win = solve_safety(built.game);
            if (!win[0]) {
                err << "Lose: no winning strategy with credit " << c0 << "\n";
                return exit_false;
            }
            MealyStrategy s = extract_strategy(built.game, win);
            write_text(out_path, strategy_to_json(g, s), out);
            if (!dot_path.empty()) write_text(dot_path, strategy_to_dot(g, s), out);
            return exit_ok;
        }

        if (*simulate_cmd) {
            Game g = load_game(game_path, in);
            Int c0 = parse_credit(credit_text);
            Adversary adam{*parse_adversary(adam_name), o.seed, depth};
            SimulationResult r;
            if (!strat_path.empty()) {
                auto s = strategy_from_json(g, read_text(strat_path, in));
                r = simulate(g, c0, s, adam, steps);
            } else if (!word_text.empty()) {
                std::vector<ActionId> prefix, cycle;
                try {
                    for (const auto& l : split_list(word_text)) prefix.push_back(g.action(l));
                    for (const auto& l : split_list(cycle_text)) cycle.push_back(g.action(l));
                } catch (const GameError& e) {
                    throw Failure{exit_usage, e.what()};
                }
                WordStrategy w(prefix, cycle);
                if (cycle.empty()) steps = std::min(steps, prefix.size());
                if (cycle.empty() && adam.kind == AdversaryKind::exhaustive && (depth == 0 || depth > prefix.size()))
                    adam.depth = prefix.size();
                r = simulate(g, c0, w, adam, steps);
            } else {
                throw Failure{exit_usage, "simulate needs --strategy or --word"};
            }
            if (o.json())
                out << simulation_to_json(r, c0) << "\n";
            else
                out << "violated: " << (r.violated ? "true" : "false") << "\nsteps: " << r.steps
                    << "\nmin_energy_seen: " << r.min_energy_seen << "\n";
            return r.violated ? exit_false : exit_ok;
        }

        if (*oracle) {
            Game g = load_game(game_path, in);
            Int c0 = parse_credit(credit_text);
            CreditTable t;
            try {
                t = min_credit(g);
            } catch (const NotFullObservation& e) {
                throw Failure{exit_usage, game_path + ": " + e.what()};
            }
            Verdict v = t.wins(g.initial(), c0) ? Verdict::win : Verdict::lose;
            if (o.json()) {
                ordered_json j;
                j["verdict"] = to_string(v);
                j["credits"] = ordered_json::parse(credit_table_to_json(g, t));
                out << j.dump() << "\n";
            } else {
                out << to_string(v) << "\n" << credit_table_to_json(g, t) << "\n";
            }
            return verdict_code(v);
        }

        if (*gen) {
            Game g;
            if (*gen_pump_cmd) {
                g = gen_pump(pump_m);
            } else {
                MinskyMachine m = load_machine(machine_path, in);
                if (*gen_minsky) {
                    g = gen_G_M(m);
                } else if (*gen_full_cmd) {
                    g = gen_full(m);
                } else {
                    switch (which) {
                    case 1: g = gen_gadget1(m); break;
                    case 2: g = gen_gadget2(m, letter); break;
                    case 3: g = gen_gadget3(m); break;
                    case 4: g = gen_gadget4(m, counter); break;
                    default: g = gen_gadget5(m, counter); break;
                    }
                }
            }
            write_text(out_path, serialize_game(g), out);
            return exit_ok;
        }

        if (*minsky_run) {
            MinskyMachine m = load_machine(machine_path, in);
            MachineRun r = run_bounded(m, bound, step_limit);
            if (o.json()) {
                out << run_to_json(m, r) << "\n";
            } else {
                out << to_string(r.outcome);
                if (r.outcome == MachineRun::Outcome::bound_exceeded)
                    out << "(c" << r.counter << ", " << r.step << ")";
                else if (r.outcome == MachineRun::Outcome::cycle_detected)
                    out << "(" << r.step << ")";
                out << "\nsteps: " << r.step << "\n";
            }
            return r.outcome == MachineRun::Outcome::halted ? exit_ok : exit_false;
        }

        if (*fgh) {
            Int x = parse_natural(x_text, "x");
            if (*fgh_eval) {
                print_value(o, F_eval(fgh_i, x, budget), out);
                return exit_ok;
            }
            if (*fgh_omega) {
                print_value(o, F_omega(x, budget), out);
                return exit_ok;
            }
            RewriteState s;
            try {
                s = {parse_vector(a_text), x};
            } catch (const std::invalid_argument& e) {
                throw Failure{exit_usage, std::string("--a: ") + e.what()};
            }
            if (*fgh_phi) {
                print_value(o, phi_eval(s, budget), out);
                return exit_ok;
            }
            std::vector<Rule> rules;
            if (rules_text.empty()) {
                rules = proper_sequence(s.a.size() - 1, s.x, s.a, budget);
            } else {
                for (const auto& r : split_list(rules_text)) {
                    auto rule = parse_rule(r);
                    if (!rule) throw Failure{exit_usage, "unknown rule '" + r + "'"};
                    rules.push_back(*rule);
                }
            }
            Trace t = replay(s, rules);
            if (o.json()) {
                ordered_json j;
                ordered_json states = ordered_json::array();
                for (const auto& st : t.states) states.push_back(to_string(st));
                ordered_json names = ordered_json::array();
                for (const auto& r : rules) names.push_back(to_string(r));
                j["rules"] = names;
                if (trace) j["trace"] = states;
                j["final"] = to_string(t.states.back());
                j["value"] = t.value ? int_json(*t.value) : ordered_json();
                out << j.dump() << "\n";
            } else {
                if (trace)
                    for (std::size_t i = 0; i < t.states.size(); ++i)
                        out << (i ? to_string(rules[i - 1]) + " " : std::string()) << to_string(t.states[i]) << "\n";
                if (t.value)
                    out << "N0 " << *t.value << "\n";
                else if (!trace)
                    out << to_string(t.states.back()) << "\n";
            }
            return exit_ok;
        }

        if (*check) {
            std::string text = read_text(game_path, in);
            try {
                Game g = parse_game(text);
                if (o.json())
                    out << ordered_json{{"valid", true}, {"kind", to_string(g.kind())}, {"states", g.num_states()},
                                        {"actions", g.num_actions()}}
                               .dump()
                        << "\n";
                else
                    out << "ok: " << to_string(g.kind()) << " game, " << g.num_states() << " states, "
                        << g.num_actions() << " actions\n";
                return exit_ok;
            } catch (const GameError& e) {
                if (o.json())
                    out << ordered_json{{"valid", false}, {"error", e.what()}}.dump() << "\n";
                else
                    err << game_path << ": " << e.what() << "\n";
                return exit_false;
            }
        }
    } catch (const Failure& f) {
        err << f.message << "\n";
        return f.code;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return exit_resource;
    } catch (const RewriteError& e) {
        err << e.what() << "\n";
        return exit_usage;
    } catch (const StrategyError& e) {
        err << e.what() << "\n";
        return exit_usage;
    } catch (const MinskyError& e) {
        err << e.what() << "\n";
        return exit_usage;
    } catch (const GameError& e) {
        err << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

}  // namespace peg
