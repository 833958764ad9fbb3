#include "peg/minsky.hpp"

#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include "json.hpp"

namespace peg {

const char* to_string(Op op)
{
    switch (op) {
    case Op::inc: return "inc";
    case Op::dec: return "dec";
    case Op::zero: return "0?";
    }
    return "?";
}

const char* to_string(MachineRun::Outcome o)
{
    switch (o) {
    case MachineRun::Outcome::halted: return "Halted";
    case MachineRun::Outcome::bound_exceeded: return "BoundExceeded";
    case MachineRun::Outcome::cycle_detected: return "CycleDetected";
    case MachineRun::Outcome::step_limit: return "StepLimit";
    }
    return "?";
}

std::vector<std::string> validate(const MinskyMachine& m)
{
    std::vector<std::string> out;
    const std::size_t n = m.states.size();
    if (n == 0) out.push_back("machine has no states");
    std::set<std::string> names;
    for (const auto& s : m.states)
        if (!names.insert(s).second) out.push_back("duplicate state name '" + s + "'");
    if (m.initial >= n) out.push_back("initial state out of range");
    if (m.final >= n) out.push_back("final state out of range");
    if (!out.empty()) return out;

    std::vector<std::vector<const Instruction*>> outgoing(n);
    for (const auto& t : m.delta) {
        if (t.src >= n || t.dst >= n) {
            out.push_back("transition endpoint out of range");
            continue;
        }
        if (t.counter != 1 && t.counter != 2) {
            out.push_back("counter must be 1 or 2, got " + std::to_string(t.counter));
            continue;
        }
        outgoing[t.src].push_back(&t);
    }
    for (std::uint32_t q = 0; q < n; ++q) {
        const auto& o = outgoing[q];
        const std::string& name = m.states[q];
        if (q == m.final) {
            if (!o.empty()) out.push_back("final state '" + name + "' has outgoing transitions");
            continue;
        }
        bool ok = (o.size() == 1 && o[0]->op == Op::inc) ||
                  (o.size() == 2 && o[0]->counter == o[1]->counter &&
                   ((o[0]->op == Op::dec && o[1]->op == Op::zero) || (o[0]->op == Op::zero && o[1]->op == Op::dec)));
        if (!ok)
            out.push_back("state '" + name +
                          "' must have one inc transition or a dec and a zero-test on the same counter");
    }
    return out;
}

MinskyMachine parse_machine(std::string_view text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw MinskyError("machine syntax error at byte " + std::to_string(e.byte));
    }
    MinskyMachine m;
    try {
        std::unordered_map<std::string, std::uint32_t> index;
        for (const auto& s : j.at("states")) {
            auto name = s.get<std::string>();
            index.emplace(name, static_cast<std::uint32_t>(m.states.size()));
            m.states.push_back(name);
        }
        auto lookup = [&](const nlohmann::json& v) {
            auto name = v.get<std::string>();
            auto it = index.find(name);
            if (it == index.end()) throw MinskyError("undeclared state '" + name + "'");
            return it->second;
        };
        m.initial = lookup(j.at("initial"));
        m.final = lookup(j.at("final"));
        for (const auto& t : j.at("delta")) {
            if (!t.is_array() || t.size() != 4) throw MinskyError("transition must be [src, op, counter, dst]");
            Instruction ins{};
            ins.src = lookup(t[0]);
            auto op = t[1].get<std::string>();
            if (op == "inc")
                ins.op = Op::inc;
            else if (op == "dec")
                ins.op = Op::dec;
            else if (op == "0?")
                ins.op = Op::zero;
            else
                throw MinskyError("unknown instruction '" + op + "'");
            ins.counter = t[2].get<int>();
            ins.dst = lookup(t[3]);
            m.delta.push_back(ins);
        }
    } catch (const nlohmann::json::exception& e) {
        throw MinskyError(std::string("malformed machine: ") + e.what());
    }
    auto problems = validate(m);
    if (!problems.empty()) throw MinskyError("invalid machine: " + problems.front());
    return m;
}

std::string serialize_machine(const MinskyMachine& m)
{
    nlohmann::ordered_json j;
    j["states"] = m.states;
    j["initial"] = m.states.at(m.initial);
    j["final"] = m.states.at(m.final);
    nlohmann::ordered_json delta = nlohmann::ordered_json::array();
    for (const auto& t : m.delta)
        delta.push_back({m.states.at(t.src), to_string(t.op), t.counter, m.states.at(t.dst)});
    j["delta"] = delta;
    return j.dump(2) + "\n";
}

MachineRun run_bounded(const MinskyMachine& m, std::uint64_t bound, std::optional<std::uint64_t> step_limit)
{
    auto problems = validate(m);
    if (!problems.empty()) throw MinskyError("invalid machine: " + problems.front());
    const std::uint64_t limit = step_limit ? *step_limit : m.size() * bound * bound;

    MachineRun r;
    MachineConfig c{m.initial, 0, 0};
    r.trace.push_back(c);
    std::set<std::tuple<std::uint32_t, std::uint64_t, std::uint64_t>> seen{{c.state, c.c1, c.c2}};
    while (true) {
        if (c.state == m.final) {
            r.outcome = MachineRun::Outcome::halted;
            return r;
        }
        if (r.step >= limit) {
            r.outcome = MachineRun::Outcome::step_limit;
            return r;
        }
        std::size_t pick = m.delta.size();
        for (std::size_t i = 0; i < m.delta.size(); ++i) {
            const auto& t = m.delta[i];
            if (t.src != c.state) continue;
            const bool zero = c.counter(t.counter) == 0;
            if (t.op == Op::inc || (t.op == Op::dec && !zero) || (t.op == Op::zero && zero)) {
                pick = i;
                break;
            }
        }
        const auto& t = m.delta.at(pick);
        std::uint64_t& v = t.counter == 1 ? c.c1 : c.c2;
        if (t.op == Op::inc) ++v;
        if (t.op == Op::dec) --v;
        c.state = t.dst;
        ++r.step;
        r.taken.push_back(pick);
        r.trace.push_back(c);
        if (c.c1 > bound || c.c2 > bound) {
            r.outcome = MachineRun::Outcome::bound_exceeded;
            r.counter = c.c1 > bound ? 1 : 2;
            return r;
        }
        if (!seen.insert({c.state, c.c1, c.c2}).second) {
            r.outcome = MachineRun::Outcome::cycle_detected;
            return r;
        }
    }
}

bool decide_bounded_halting(const MinskyMachine& m, std::uint64_t bound)
{
    return run_bounded(m, bound).outcome == MachineRun::Outcome::halted;
}

std::string run_to_json(const MinskyMachine& m, const MachineRun& r)
{
    nlohmann::ordered_json j;
    j["outcome"] = to_string(r.outcome);
    if (r.outcome == MachineRun::Outcome::bound_exceeded) j["counter"] = r.counter;
    j["steps"] = r.step;
    nlohmann::ordered_json trace = nlohmann::ordered_json::array();
    for (const auto& c : r.trace) trace.push_back({m.states.at(c.state), c.c1, c.c2});
    j["trace"] = trace;
    return j.dump();
}

}  // namespace peg
