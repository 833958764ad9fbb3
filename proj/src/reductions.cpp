#include "peg/reductions.hpp"

#include <algorithm>
#include <map>
#include <memory>

namespace peg {

namespace {

const char* op_tag(Op op)
{
    switch (op) {
    case Op::inc: return "inc";
    case Op::dec: return "dec";
    case Op::zero: return "zero";
    }
    return "?";
}

// Incremental blind game over a fixed alphabet.
class Assembly {
public:
    explicit Assembly(std::vector<std::string> alphabet)
    {
        for (auto& a : alphabet) index_.emplace(a, b_.add_action(a)), names_.push_back(std::move(a));
    }

    ActionId letter(std::string_view name) const { return index_.at(std::string(name)); }
    std::size_t num_letters() const { return names_.size(); }

    StateId state(std::string name) { return b_.add_state(std::move(name)); }
    void edge(StateId p, ActionId a, StateId q, std::int64_t w) { b_.add_transition(p, a, q, w); }
    void edge(StateId p, std::string_view a, StateId q, std::int64_t w) { edge(p, letter(a), q, w); }
    void loop_all(StateId p, std::int64_t w)
    {
        for (ActionId a = 0; a < names_.size(); ++a) edge(p, a, p, w);
    }

    Game finish(StateId initial)
    {
        b_.set_initial(initial);
        b_.make_blind();
        return make_total(b_.build(), -1);
    }

private:
    GameBuilder b_;
    std::vector<std::string> names_;
    std::map<std::string, ActionId> index_;
};

struct Entry {
    StateId state;
    std::int64_t weight;
};

// Letters of the machine part: "#" followed by one letter per transition.
struct MachineLetters {
    ActionId hash;
    std::vector<ActionId> delta;

    std::vector<ActionId> sigma() const
    {
        std::vector<ActionId> s{hash};
        s.insert(s.end(), delta.begin(), delta.end());
        return s;
    }
};

MachineLetters machine_letters(const Assembly& as, const MinskyMachine& m)
{
    MachineLetters l{as.letter(restart_letter), {}};
    for (const auto& t : m.delta) l.delta.push_back(as.letter(letter_name(m, t)));
    return l;
}

std::vector<std::string> machine_alphabet(const MinskyMachine& m)
{
    std::vector<std::string> a{std::string(restart_letter)};
    for (const auto& t : m.delta) a.push_back(letter_name(m, t));
    return a;
}

std::int64_t counter_weight(const Instruction& t, int k)
{
    if (t.counter != k) return 0;
    if (t.op == Op::inc) return -1;
    if (t.op == Op::dec) return 1;
    return 0;
}

std::int64_t cube(const MinskyMachine& m)
{
    auto n = static_cast<std::int64_t>(m.size());
    return n * n * n;
}

void check_machine(const MinskyMachine& m)
{
    auto problems = validate(m);
    if (!problems.empty()) throw MinskyError("invalid machine: " + problems.front());
}

Entry add_gadget1(Assembly& as, const MachineLetters& l, StateId top)
{
    StateId a = as.state("g1.A");
    StateId c = as.state("g1.C");
    as.edge(a, l.hash, top, 0);
    for (ActionId t : l.delta) as.edge(a, t, c, 0);
    for (ActionId s : l.sigma()) as.edge(c, s, c, -1);
    return {a, 0};
}

Entry add_gadget2(Assembly& as, const MinskyMachine& m, const MachineLetters& l, std::string_view sigma1,
                  StateId top)
{
    const std::string tag = "g2[" + std::string(sigma1) + "]";
    StateId a = as.state(tag + ".A");
    StateId b = as.state(tag + ".B");
    for (ActionId s : l.sigma()) as.edge(a, s, a, 0);
    as.edge(a, sigma1, b, 0);
    // Letters outside the allowed set have no edge and fall into bot.
    for (const auto& s2 : allowed_successors(m, sigma1)) as.edge(b, s2, top, 0);
    return {a, 0};
}

Entry add_gadget3(Assembly& as, const MinskyMachine& m, const MachineLetters& l, StateId top)
{
    StateId a = as.state("g3.A");
    StateId b = as.state("g3.B");
    for (ActionId s : l.sigma()) as.edge(a, s, a, 0);
    as.edge(a, l.hash, b, 0);
    for (ActionId t : l.delta) as.edge(b, t, b, -1);
    as.edge(b, l.hash, top, 0);
    return {a, cube(m)};
}

Entry add_gadget4(Assembly& as, const MinskyMachine& m, const MachineLetters& l, int k)
{
    StateId a = as.state("g4[c" + std::to_string(k) + "]");
    as.edge(a, l.hash, a, 0);
    for (std::size_t i = 0; i < m.delta.size(); ++i) as.edge(a, l.delta[i], a, counter_weight(m.delta[i], k));
    return {a, static_cast<std::int64_t>(m.size())};
}

Entry add_gadget5(Assembly& as, const MinskyMachine& m, const MachineLetters& l, int k, StateId top)
{
    const std::string tag = "g5[c" + std::to_string(k) + "]";
    StateId a = as.state(tag + ".A");
    StateId b = as.state(tag + ".B");
    StateId c = as.state(tag + ".C");
    for (ActionId s : l.sigma()) as.edge(a, s, a, 0);
    as.edge(a, l.hash, b, 0);
    as.edge(a, l.hash, c, 0);
    // B replays the counter backwards and returns on a zero test; C replays
    // it forwards and returns on a decrement.
    for (std::size_t i = 0; i < m.delta.size(); ++i) {
        const auto& t = m.delta[i];
        if (t.counter == k && t.op == Op::zero)
            as.edge(b, l.delta[i], a, 0);
        else
            as.edge(b, l.delta[i], b, counter_weight(t, k));
        if (t.counter == k && t.op == Op::dec)
            as.edge(c, l.delta[i], a, -1);
        else
            as.edge(c, l.delta[i], c, -counter_weight(t, k));
    }
    as.edge(b, l.hash, top, 0);
    as.edge(c, l.hash, top, 0);
    return {a, cube(m)};
}

std::vector<Entry> add_machine_gadgets(Assembly& as, const MinskyMachine& m, StateId top, bool with_counter_bound)
{
    const auto l = machine_letters(as, m);
    std::vector<Entry> entries;
    entries.push_back(add_gadget1(as, l, top));
    entries.push_back(add_gadget2(as, m, l, restart_letter, top));
    for (const auto& t : m.delta) entries.push_back(add_gadget2(as, m, l, letter_name(m, t), top));
    entries.push_back(add_gadget3(as, m, l, top));
    if (with_counter_bound)
        for (int k : {1, 2}) entries.push_back(add_gadget4(as, m, l, k));
    for (int k : {1, 2}) entries.push_back(add_gadget5(as, m, l, k, top));
    return entries;
}

template <class AddGadget>
Game standalone(const MinskyMachine& m, AddGadget add)
{
    check_machine(m);
    auto alphabet = machine_alphabet(m);
    alphabet.insert(alphabet.begin(), std::string(start_letter));
    Assembly as(alphabet);
    StateId q0 = as.state("q0");
    StateId top = as.state("top");
    as.loop_all(top, 0);
    Entry e = add(as, machine_letters(as, m), top);
    as.edge(q0, start_letter, e.state, e.weight);
    return as.finish(q0);
}

std::vector<std::string> pump_letters(std::size_t m)
{
    std::vector<std::string> a{"N0", "N2"};
    for (std::size_t j = 1; j <= m; ++j) a.push_back("N1_" + std::to_string(j));
    return a;
}

struct Pump {
    StateId q0;
    StateId chi;
    std::vector<StateId> alpha;
};

// Q_N states of one pumping copy with their N2/N1_j transitions and the
// N0 moves of the alphas. chi's N0 move is left to the caller.
Pump add_pump(Assembly& as, const std::string& prefix, std::size_t m, StateId top)
{
    Pump p;
    p.q0 = as.state(prefix + "q0");
    p.chi = as.state(prefix + "chi");
    for (std::size_t i = 0; i <= m; ++i) p.alpha.push_back(as.state(prefix + "alpha" + std::to_string(i)));

    const ActionId n0 = as.letter("N0");
    const ActionId n2 = as.letter("N2");
    for (StateId a : p.alpha) as.edge(a, n0, top, 0);

    as.edge(p.chi, n2, p.chi, 1);
    for (std::size_t i = 0; i <= m; ++i) as.edge(p.alpha[i], n2, p.alpha[i], i == 0 ? -1 : 0);

    for (std::size_t j = 1; j <= m; ++j) {
        const ActionId n1 = as.letter("N1_" + std::to_string(j));
        as.edge(p.chi, n1, p.chi, 0);
        as.edge(p.chi, n1, p.alpha[j - 1], 1);
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == j)
                as.edge(p.alpha[i], n1, p.alpha[i], -1);
            else if (i == j - 1)
                as.edge(p.alpha[i], n1, top, 0);
            else
                as.edge(p.alpha[i], n1, p.alpha[i], 0);
        }
    }
    return p;
}

void add_pump_entry(Assembly& as, const Pump& p, ActionId via)
{
    const std::size_t m = p.alpha.size() - 1;
    as.edge(p.q0, via, p.chi, static_cast<std::int64_t>(m));
    for (std::size_t i = 0; i <= m; ++i) as.edge(p.q0, via, p.alpha[i], i == m ? 1 : 0);
}

std::vector<ActionId> actions_of(const Game& g, const std::vector<std::string>& letters)
{
    std::vector<ActionId> out;
    out.reserve(letters.size());
    for (const auto& l : letters) out.push_back(g.action(l));
    return out;
}

}  // namespace

std::string letter_name(const MinskyMachine& m, const Instruction& t)
{
    return m.states.at(t.src) + "-" + op_tag(t.op) + std::to_string(t.counter) + "->" + m.states.at(t.dst);
}

std::vector<std::string> allowed_successors(const MinskyMachine& m, std::string_view sigma1)
{
    auto leaving = [&](std::uint32_t q) {
        std::vector<std::string> out;
        if (q == m.final) out.emplace_back(restart_letter);
        for (const auto& t : m.delta)
            if (t.src == q) out.push_back(letter_name(m, t));
        return out;
    };
    if (sigma1 == restart_letter) return leaving(m.initial);
    for (const auto& t : m.delta)
        if (letter_name(m, t) == sigma1) return leaving(t.dst);
    throw MinskyError("unknown letter '" + std::string(sigma1) + "'");
}

Game gen_gadget1(const MinskyMachine& m)
{
    return standalone(m, [&](Assembly& as, const MachineLetters& l, StateId top) { return add_gadget1(as, l, top); });
}

Game gen_gadget2(const MinskyMachine& m, std::string_view sigma1)
{
    return standalone(
        m, [&](Assembly& as, const MachineLetters& l, StateId top) { return add_gadget2(as, m, l, sigma1, top); });
}

Game gen_gadget3(const MinskyMachine& m)
{
    return standalone(m,
                      [&](Assembly& as, const MachineLetters& l, StateId top) { return add_gadget3(as, m, l, top); });
}

Game gen_gadget4(const MinskyMachine& m, int counter)
{
    if (counter != 1 && counter != 2) throw MinskyError("counter must be 1 or 2");
    return standalone(m, [&](Assembly& as, const MachineLetters& l, StateId) { return add_gadget4(as, m, l, counter); });
}

Game gen_gadget5(const MinskyMachine& m, int counter)
{
    if (counter != 1 && counter != 2) throw MinskyError("counter must be 1 or 2");
    return standalone(
        m, [&](Assembly& as, const MachineLetters& l, StateId top) { return add_gadget5(as, m, l, counter, top); });
}

Game gen_G_M(const MinskyMachine& m)
{
    check_machine(m);
    auto alphabet = machine_alphabet(m);
    alphabet.insert(alphabet.begin(), std::string(start_letter));
    Assembly as(alphabet);
    StateId q0 = as.state("q0");
    StateId top = as.state("top");
    as.loop_all(top, 0);
    for (const Entry& e : add_machine_gadgets(as, m, top, true)) as.edge(q0, start_letter, e.state, e.weight);
    return as.finish(q0);
}

Game gen_pump(std::size_t m)
{
    if (m < 1) throw std::invalid_argument("pumping gadget needs m >= 1");
    auto alphabet = pump_letters(m);
    alphabet.insert(alphabet.begin(), std::string(start_letter));
    Assembly as(alphabet);
    StateId top = as.state("top");
    Pump p = add_pump(as, "", m, top);
    StateId f = as.state("f");
    as.loop_all(top, 0);
    as.loop_all(f, 0);
    as.edge(p.chi, "N0", f, 0);

    const ActionId start = as.letter(start_letter);
    add_pump_entry(as, p, start);
    for (ActionId a = 0; a < as.num_letters(); ++a)
        if (a != start) as.edge(p.q0, a, p.q0, -1);
    as.edge(p.chi, start, p.chi, -1);
    for (StateId a : p.alpha) as.edge(a, start, a, -1);

    return as.finish(p.q0);
}

Game gen_full(const MinskyMachine& m)
{
    check_machine(m);
    const std::size_t n = m.size();
    auto alphabet = pump_letters(n);
    alphabet.insert(alphabet.begin(), std::string(start_letter));
    for (auto& l : machine_alphabet(m)) alphabet.push_back(std::move(l));
    Assembly as(alphabet);

    StateId top = as.state("top");
    as.loop_all(top, 0);
    Pump p1 = add_pump(as, "p1.", n, top);
    Pump p2 = add_pump(as, "p2.", n, top);
    StateId s0 = as.state("s0");
    StateId s1 = as.state("s1");

    const ActionId n0 = as.letter("N0");
    std::vector<ActionId> sigma_n;
    for (const auto& l : pump_letters(n))
        if (l != "N0") sigma_n.push_back(as.letter(l));

    add_pump_entry(as, p1, as.letter(start_letter));
    add_pump_entry(as, p2, n0);
    for (ActionId a : sigma_n) {
        as.edge(p2.q0, a, p2.q0, 0);
        as.edge(s0, a, s0, 0);
        as.edge(s1, a, s1, 0);
    }
    as.edge(p1.chi, n0, s0, 0);
    as.edge(p1.chi, n0, p2.q0, 0);
    as.edge(s0, n0, s1, 0);

    const auto l = machine_letters(as, m);
    for (int k : {1, 2}) as.edge(s1, n0, add_gadget4(as, m, l, k).state, 0);
    for (const Entry& e : add_machine_gadgets(as, m, top, false)) as.edge(p2.chi, n0, e.state, 0);
    return as.finish(p1.q0);
}

std::vector<std::string> halting_word(const MinskyMachine& m)
{
    auto run = run_bounded(m, m.size());
    if (run.outcome != MachineRun::Outcome::halted)
        throw MinskyError(std::string("machine has no |M|-bounded halting run (") + to_string(run.outcome) + ")");
    std::vector<std::string> out;
    for (std::size_t i : run.taken) out.push_back(letter_name(m, m.delta[i]));
    return out;
}

WordStrategy honest_gm_strategy(const Game& g, const MinskyMachine& m)
{
    std::vector<std::string> cycle{std::string(restart_letter)};
    for (auto& l : halting_word(m)) cycle.push_back(std::move(l));
    return WordStrategy({g.action(start_letter)}, actions_of(g, cycle));
}

WordStrategy word_strategy(const Game& g, const std::vector<std::string>& letters)
{
    std::vector<ActionId> prefix{g.action(start_letter)};
    for (ActionId a : actions_of(g, letters)) prefix.push_back(a);
    return WordStrategy(std::move(prefix), {});
}

WordStrategy pump_strategy(const Game& g, const std::vector<Rule>& rules)
{
    std::vector<ActionId> prefix{g.action(start_letter)};
    for (const Rule& r : rules) prefix.push_back(g.action(to_string(r)));
    return WordStrategy(std::move(prefix), {g.action("N0")});
}

WordStrategy honest_pump_strategy(const Game& g, std::size_t m)
{
    RewriteState s{std::vector<Int>(m + 1, 0), Int(m)};
    s.a[m] = 1;
    auto sched = std::make_shared<ProperScheduler>(s);
    auto started = std::make_shared<bool>(false);
    const ActionId start = g.action(start_letter);
    const Game* game = &g;
    return WordStrategy([=]() -> ActionId {
        if (!*started) {
            *started = true;
            return start;
        }
        auto r = sched->next();
        return game->action(r ? to_string(*r) : "N0");
    });
}

WordStrategy honest_full_strategy(const Game& g, const MinskyMachine& m)
{
    const std::size_t n = m.size();
    std::vector<ActionId> cycle{g.action(restart_letter)};
    for (ActionId a : actions_of(g, halting_word(m))) cycle.push_back(a);

    struct Phase {
        int stage = 0;  // 0 start, 1 first schedule, 2 second N0, 3 second schedule, 4 machine
        std::unique_ptr<ProperScheduler> sched;
        Int first_value;
        std::size_t pos = 0;
    };
    auto ph = std::make_shared<Phase>();
    const Game* game = &g;
    const ActionId start = g.action(start_letter);
    const ActionId n0 = g.action("N0");

    return WordStrategy([=]() -> ActionId {
        Phase& p = *ph;
        switch (p.stage) {
        case 0: {
            RewriteState s{std::vector<Int>(n + 1, 0), Int(n)};
            s.a[n] = 1;
            p.sched = std::make_unique<ProperScheduler>(s);
            p.stage = 1;
            return start;
        }
        case 1: {
            auto r = p.sched->next();
            if (r->kind == Rule::Kind::N0) {
                p.first_value = p.sched->state().x;
                p.stage = 2;
            }
            return game->action(to_string(*r));
        }
        case 2: {
            const Int& v = p.first_value;
            RewriteState s{std::vector<Int>(n + 1, v), v + n};
            s.a[n] = v + 1;
            p.sched = std::make_unique<ProperScheduler>(s);
            p.stage = 3;
            return n0;
        }
        case 3: {
            auto r = p.sched->next();
            if (r->kind == Rule::Kind::N0) p.stage = 4;
            return game->action(to_string(*r));
        }
        default: return cycle[p.pos++ % cycle.size()];
        }
    });
}

}  // namespace peg
