#include "doctest.h"
#include "test_util.hpp"

using namespace peg;
using namespace peg::test;

TEST_CASE("run_bounded examples")
{
    auto h = run_bounded(m_halt(), 3);
    CHECK(h.outcome == MachineRun::Outcome::halted);
    CHECK(h.step == 2);
    std::uint64_t top = 0;
    for (const auto& c : h.trace) top = std::max({top, c.c1, c.c2});
    CHECK(top == 1);
    // The dec branch is taken because the counter is positive.
    CHECK(m_halt().delta[h.taken[1]].op == Op::dec);

    auto l = run_bounded(m_loop(), 3);
    CHECK(l.outcome == MachineRun::Outcome::bound_exceeded);
    CHECK(l.counter == 1);
    CHECK(l.step == 4);

    auto c = run_bounded(m_cycle(), 5);
    CHECK(c.outcome == MachineRun::Outcome::cycle_detected);
    CHECK(c.trace.back() == c.trace.front());

    CHECK(run_bounded(m_trivial(), 0).outcome == MachineRun::Outcome::halted);
    CHECK(run_bounded(m_loop(), 3, 2).outcome == MachineRun::Outcome::step_limit);
}

TEST_CASE("decide_bounded_halting examples")
{
    CHECK(decide_bounded_halting(m_halt(), m_halt().size()));
    for (std::uint64_t b : {0, 1, 3, 10}) {
        CHECK(!decide_bounded_halting(m_loop(), b));
        CHECK(!decide_bounded_halting(m_cycle(), b));
    }
}

TEST_CASE("runs respect the semantics")
{
    const auto m = m_cycle();
    auto r = run_bounded(m, 5);
    for (std::size_t i = 0; i < r.taken.size(); ++i) {
        const auto& t = m.delta[r.taken[i]];
        const auto& a = r.trace[i];
        const auto& b = r.trace[i + 1];
        CHECK(t.src == a.state);
        CHECK(t.dst == b.state);
        if (t.op == Op::zero) CHECK(a.counter(t.counter) == 0);
        if (t.op == Op::dec) CHECK(a.counter(t.counter) > 0);
    }
}

TEST_CASE("machine validation and file format")
{
    CHECK(validate(m_halt()).empty());
    auto bad = m_halt();
    bad.delta.push_back({bad.final, Op::inc, 1, bad.initial});
    CHECK(!validate(bad).empty());
    auto nondet = m_loop();
    nondet.delta.push_back({nondet.initial, Op::inc, 2, nondet.final});
    CHECK(!validate(nondet).empty());
    auto mixed = m_halt();
    mixed.delta[2].counter = 2;
    CHECK(!validate(mixed).empty());
    CHECK_THROWS_AS(run_bounded(bad, 3), MinskyError);

    auto text = serialize_machine(m_halt());
    auto back = parse_machine(text);
    CHECK(back.states == m_halt().states);
    CHECK(back.delta.size() == 3);
    CHECK(serialize_machine(back) == text);
    CHECK_THROWS_AS(parse_machine(R"({"states":["a"],"initial":"a","final":"b","delta":[]})"), MinskyError);
    CHECK_THROWS_AS(parse_machine(R"({"states":["a","b"],"initial":"a","final":"b","delta":[["a","mul",1,"b"]]})"),
                    MinskyError);
}
