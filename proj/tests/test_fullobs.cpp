#include "doctest.h"
#include "test_util.hpp"

#include "peg/fullobs.hpp"

using namespace peg;
using namespace peg::test;

TEST_CASE("min_credit examples")
{
    Game zero = full_observation(make_game({"q"}, {"s"}, {{"q", "s", "q", 0}}));
    CHECK(min_credit(zero).value[0] == Int(0));

    Game two = make_game({"q0", "q1"}, {"s"}, {{"q0", "s", "q1", -2}, {"q1", "s", "q1", 0}}, {{"q0"}, {"q1"}});
    auto t = min_credit(two);
    CHECK(t.value[0] == Int(2));
    CHECK(t.value[1] == Int(0));
    CHECK(decide_fullobs(two, 1) == Verdict::lose);
    CHECK(decide_fullobs(two, 2) == Verdict::win);
    CHECK(decide(two, 1).verdict == Verdict::lose);
    CHECK(decide(two, 2).verdict == Verdict::win);

    Game minus = full_observation(make_game({"q"}, {"s"}, {{"q", "s", "q", -1}}));
    CHECK(!min_credit(minus).value[0]);
    CHECK(credit_table_to_json(minus, min_credit(minus)) == R"({"q":"inf"})");
}

TEST_CASE("oracle rejects games with hidden information")
{
    Game g = make_game({"a", "b"}, {"s"}, {{"a", "s", "b", 0}, {"b", "s", "a", 0}});
    CHECK_THROWS_AS(min_credit(g), NotFullObservation);
}

TEST_CASE("finite credits respect the cutoff")
{
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        Game g = random_game(rng, 6, 3, -3, 3, true);
        auto t = min_credit(g);
        const Int cap = Int(g.num_states()) * g.w_max();
        for (const auto& v : t.value)
            if (v) CHECK(*v <= cap);
    }
}

TEST_CASE("credit table is a fixpoint")
{
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        Game g = random_game(rng, 6, 3, -3, 3, true);
        auto t = min_credit(g);
        for (StateId q = 0; q < g.num_states(); ++q) {
            std::optional<Int> best;
            bool any = false;
            for (ActionId a = 0; a < g.num_actions(); ++a) {
                std::optional<Int> worst = Int(0);
                for (const Edge& e : g.edges(q, a)) {
                    if (!t.value[e.dst]) {
                        worst.reset();
                        break;
                    }
                    Int need = *t.value[e.dst] - e.weight;
                    if (need > *worst) worst = need;
                }
                if (worst && *worst > Int(g.num_states()) * g.w_max()) worst.reset();
                if (!any || (worst && (!best || *worst < *best))) best = worst;
                any = true;
            }
            CHECK(best == t.value[q]);
        }
    }
}
