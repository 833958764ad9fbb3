#pragma once

#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "peg/belief.hpp"
#include "peg/game.hpp"
#include "peg/minsky.hpp"

namespace peg::test {

using Arc = std::tuple<std::string, std::string, std::string, std::int64_t>;

/// Game from names; no validation, so partial relations are allowed. An
/// empty observation list means blind; initial defaults to the first state.
inline Game make_game(const std::vector<std::string>& states, const std::vector<std::string>& alphabet,
                      const std::vector<Arc>& arcs, const std::vector<std::vector<std::string>>& obs = {})
{
    GameBuilder b;
    for (const auto& s : states) b.add_state(s);
    for (const auto& a : alphabet) b.add_action(a);
    auto sid = [&](const std::string& n) {
        for (StateId q = 0; q < states.size(); ++q)
            if (states[q] == n) return q;
        throw std::invalid_argument("no state " + n);
    };
    auto aid = [&](const std::string& n) {
        for (ActionId a = 0; a < alphabet.size(); ++a)
            if (alphabet[a] == n) return a;
        throw std::invalid_argument("no action " + n);
    };
    for (const auto& [p, a, q, w] : arcs) b.add_transition(sid(p), aid(a), sid(q), w);
    if (obs.empty()) {
        b.make_blind();
    } else {
        for (const auto& block : obs) {
            std::vector<StateId> ids;
            for (const auto& s : block) ids.push_back(sid(s));
            b.add_observation(ids);
        }
    }
    return b.build();
}

inline Game full_observation(const Game& g)
{
    std::vector<std::vector<StateId>> obs;
    for (StateId q = 0; q < g.num_states(); ++q) obs.push_back({q});
    return Game(g.states(), g.initial(), g.alphabet(), g.transitions(), obs);
}

inline Game blind(const Game& g)
{
    std::vector<StateId> all;
    for (StateId q = 0; q < g.num_states(); ++q) all.push_back(q);
    return Game(g.states(), g.initial(), g.alphabet(), g.transitions(), {all});
}

/// Random total game: 1..max_states states, 1..max_actions actions, each
/// (q, a) with 1 or 2 successors, weights uniform in [wlo, whi].
inline Game random_game(std::mt19937_64& rng, std::size_t max_states, std::size_t max_actions, int wlo, int whi,
                        bool full)
{
    std::uniform_int_distribution<std::size_t> ns(1, max_states), na(1, max_actions);
    std::uniform_int_distribution<int> w(wlo, whi);
    const std::size_t n = ns(rng), k = na(rng);
    GameBuilder b;
    for (std::size_t i = 0; i < n; ++i) b.add_state("q" + std::to_string(i));
    for (std::size_t i = 0; i < k; ++i) b.add_action(std::string(1, static_cast<char>('a' + i)));
    std::uniform_int_distribution<StateId> pick(0, static_cast<StateId>(n - 1));
    std::bernoulli_distribution branch(0.35);
    for (StateId q = 0; q < n; ++q)
        for (ActionId a = 0; a < k; ++a) {
            StateId d1 = pick(rng);
            b.add_transition(q, a, d1, w(rng));
            if (n > 1 && branch(rng)) {
                StateId d2 = pick(rng);
                if (d2 != d1) b.add_transition(q, a, d2, w(rng));
            }
        }
    if (full)
        b.make_full_observation();
    else
        b.make_blind();
    return b.build();
}

/// Random non-negative belief on a random support of g.
inline Belief random_belief(std::mt19937_64& rng, const Game& g, int max_value)
{
    std::uniform_int_distribution<int> v(0, max_value);
    std::bernoulli_distribution in(0.5);
    std::vector<Belief::Entry> e;
    for (StateId q = 0; q < g.num_states(); ++q)
        if (in(rng)) e.push_back({q, v(rng)});
    if (e.empty()) e.push_back({static_cast<StateId>(rng() % g.num_states()), v(rng)});
    return Belief(e);
}

inline MinskyMachine machine(std::vector<std::string> states, std::string initial, std::string final,
                             std::vector<std::tuple<std::string, Op, int, std::string>> delta)
{
    MinskyMachine m;
    m.states = std::move(states);
    auto id = [&](const std::string& n) {
        for (std::uint32_t i = 0; i < m.states.size(); ++i)
            if (m.states[i] == n) return i;
        throw std::invalid_argument("no state " + n);
    };
    m.initial = id(initial);
    m.final = id(final);
    for (auto& [s, op, c, d] : delta) m.delta.push_back({id(s), op, c, id(d)});
    return m;
}

inline MinskyMachine m_halt()
{
    return machine({"qI", "q1", "qF"}, "qI", "qF",
                   {{"qI", Op::inc, 1, "q1"}, {"q1", Op::dec, 1, "qF"}, {"q1", Op::zero, 1, "qF"}});
}

inline MinskyMachine m_loop()
{
    return machine({"qI", "qF"}, "qI", "qF", {{"qI", Op::inc, 1, "qI"}});
}

inline MinskyMachine m_cycle()
{
    return machine({"qI", "q1", "qF"}, "qI", "qF",
                   {{"qI", Op::inc, 1, "q1"}, {"q1", Op::dec, 1, "qI"}, {"q1", Op::zero, 1, "qF"}});
}

/// Single-state machine whose initial state is final.
inline MinskyMachine m_trivial()
{
    return machine({"q"}, "q", "q", {});
}

}  // namespace peg::test
