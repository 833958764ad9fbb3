#include "doctest.h"
#include "test_util.hpp"

#include "peg/reductions.hpp"
#include "peg/strategy.hpp"
#include "peg/tree_solver.hpp"

using namespace peg;
using namespace peg::test;

namespace {

MealyStrategy solve_and_extract(const Game& g, const Int& c0)
{
    auto r = build_safety_game(g, c0);
    auto win = solve_safety(r.game);
    return extract_strategy(r.game, win);
}

}  // namespace

TEST_CASE("extract examples")
{
    Game zero = make_game({"q"}, {"s"}, {{"q", "s", "q", 0}});
    auto s0 = solve_and_extract(zero, 0);
    CHECK(s0.states().size() == 1);
    CHECK(s0.action(0, 0) == 0);
    CHECK(s0.update(0, 0, 0) == std::optional<std::size_t>(0));

    Game two = make_game({"q"}, {"s1", "s2"}, {{"q", "s1", "q", 0}, {"q", "s2", "q", -1}});
    auto s1 = solve_and_extract(two, 0);
    CHECK(s1.action(s1.start(), 0) == two.action("s1"));

    Game full = make_game({"i", "a", "b"}, {"s1", "s2"},
                          {{"i", "s1", "a", 0},
                           {"i", "s1", "b", 0},
                           {"i", "s2", "a", 0},
                           {"i", "s2", "b", 0},
                           {"a", "s1", "a", 0},
                           {"a", "s2", "a", -1},
                           {"b", "s1", "b", -1},
                           {"b", "s2", "b", 0}},
                          {{"i"}, {"a"}, {"b"}});
    auto s2 = solve_and_extract(full, 0);
    std::size_t m = s2.start();
    s2.action(m, 0);
    auto in_a = s2.update(m, full.observation_of(full.state("a")), 0);
    auto in_b = s2.update(m, full.observation_of(full.state("b")), 0);
    REQUIRE(in_a);
    REQUIRE(in_b);
    CHECK(s2.action(*in_a, 1) == full.action("s1"));
    CHECK(s2.action(*in_b, 1) == full.action("s2"));

    Game lose = make_game({"q"}, {"s"}, {{"q", "s", "q", -1}});
    auto r = build_safety_game(lose, 1);
    CHECK_THROWS_AS(extract_strategy(r.game, solve_safety(r.game)), StrategyError);
}

TEST_CASE("simulate examples")
{
    Game zero = make_game({"q"}, {"s"}, {{"q", "s", "q", 0}});
    auto s0 = solve_and_extract(zero, 0);
    for (auto kind : {AdversaryKind::random, AdversaryKind::greedy, AdversaryKind::exhaustive}) {
        auto r = simulate(zero, 0, s0, {kind, 1, 0}, 1000);
        CHECK(!r.violated);
        CHECK(r.min_energy_seen == 0);
        CHECK(r.steps == 1000);
    }

    Game two = make_game({"q"}, {"s1", "s2"}, {{"q", "s1", "q", 0}, {"q", "s2", "q", -1}});
    WordStrategy wrong({}, {two.action("s2")});
    for (auto kind : {AdversaryKind::random, AdversaryKind::greedy, AdversaryKind::exhaustive}) {
        auto r = simulate(two, 2, wrong, {kind, 1, 0}, 100);
        CHECK(r.violated);
        CHECK(r.steps <= 3);
    }

    Game pump = gen_pump(1);
    auto honest = pump_strategy(pump, {Rule::n1(1), Rule::n2(), Rule::n2(), Rule::n0()});
    auto layers = explore(pump, 0, honest, 12);
    CHECK(layers.size() == 13);
    bool reached_f = false;
    for (const auto& layer : layers)
        for (const auto& c : layer) {
            CHECK(c.min_level >= 0);
            if (c.state == pump.state("f") && c.min_level == 3) reached_f = true;
        }
    CHECK(reached_f);
    CHECK(!simulate(pump, 0, honest, {AdversaryKind::exhaustive, 0, 12}, 12).violated);
}

TEST_CASE("simulation is deterministic per seed")
{
    std::mt19937_64 rng(9);
    Game g = random_game(rng, 5, 2, -2, 3, false);
    WordStrategy w({}, {0, 1 % static_cast<ActionId>(g.num_actions())});
    auto a = simulate(g, 50, w, {AdversaryKind::random, 42, 0}, 200);
    auto b = simulate(g, 50, w, {AdversaryKind::random, 42, 0}, 200);
    CHECK(a.min_energy_seen == b.min_energy_seen);
    CHECK(a.steps == b.steps);
}

TEST_CASE("exhaustive adversary is the worst case")
{
    // Greedy and random plays can only be as bad as the exhaustive bound.
    std::mt19937_64 rng(4);
    for (int i = 0; i < 30; ++i) {
        Game g = random_game(rng, 4, 2, -2, 2, false);
        WordStrategy w({}, {0, static_cast<ActionId>(g.num_actions() - 1)});
        auto ex = simulate(g, 100, w, {AdversaryKind::exhaustive, 0, 10}, 10);
        for (auto kind : {AdversaryKind::random, AdversaryKind::greedy}) {
            auto r = simulate(g, 100, w, {kind, static_cast<std::uint64_t>(i), 0}, 10);
            CHECK(r.min_energy_seen >= ex.min_energy_seen);
        }
    }
}

TEST_CASE("strategy json round trip")
{
    Game full = make_game({"i", "a", "b"}, {"s1", "s2"},
                          {{"i", "s1", "a", 0},
                           {"i", "s1", "b", 0},
                           {"i", "s2", "a", 0},
                           {"i", "s2", "b", 0},
                           {"a", "s1", "a", 0},
                           {"a", "s2", "a", -1},
                           {"b", "s1", "b", -1},
                           {"b", "s2", "b", 0}},
                          {{"i"}, {"a"}, {"b"}});
    auto s = solve_and_extract(full, 0);
    auto text = strategy_to_json(full, s);
    auto t = strategy_from_json(full, text);
    REQUIRE(t.states().size() == s.states().size());
    for (std::size_t i = 0; i < s.states().size(); ++i) {
        CHECK(t.states()[i].output == s.states()[i].output);
        CHECK(t.states()[i].step == s.states()[i].step);
        CHECK(t.states()[i].belief == s.states()[i].belief);
    }
    CHECK(strategy_to_json(full, t) == text);
    CHECK(strategy_to_dot(full, s).find("digraph") == 0);
    CHECK_THROWS_AS(strategy_from_json(full, "{\"states\": [{\"output\": \"zz\", \"step\": []}]}"), StrategyError);
    CHECK_THROWS_AS(strategy_from_json(full, "nope"), StrategyError);
}

TEST_CASE("adversary names")
{
    CHECK(parse_adversary("greedy") == AdversaryKind::greedy);
    CHECK(!parse_adversary("lazy"));
    CHECK(std::string(to_string(AdversaryKind::exhaustive)) == "exhaustive");
}
