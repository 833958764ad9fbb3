#include "doctest.h"
#include "test_util.hpp"

#include <algorithm>

using namespace peg;
using namespace peg::test;

namespace {

std::vector<Int> ints(std::initializer_list<int> v)
{
    return std::vector<Int>(v.begin(), v.end());
}

}  // namespace

TEST_CASE("initial belief")
{
    Game g = make_game({"q0", "q1"}, {"a"}, {{"q0", "a", "q1", 0}, {"q1", "a", "q1", 0}});
    CHECK(initial_belief(g, 0) == Belief({{0, 0}}));
    CHECK(initial_belief(g, 5) == Belief({{0, 5}}));
    CHECK(!is_negative(initial_belief(g, 0)));
}

TEST_CASE("successor examples")
{
    Game g1 = make_game({"a", "b"}, {"s"}, {{"a", "s", "a", 1}, {"a", "s", "b", -2}}, {{"a"}, {"b"}});
    auto s1 = successors(g1, Belief({{0, 3}}), 0);
    REQUIRE(s1.size() == 2);
    CHECK(s1[0] == Belief({{0, 4}}));
    CHECK(s1[1] == Belief({{1, 1}}));

    Game g2 = make_game({"a", "b", "c"}, {"s"}, {{"a", "s", "c", -1}, {"b", "s", "c", 1}}, {{"a", "b"}, {"c"}});
    auto s2 = successors(g2, Belief({{0, 3}, {1, 0}}), 0);
    REQUIRE(s2.size() == 1);
    CHECK(s2[0] == Belief({{2, 1}}));

    Game g3 = make_game({"q"}, {"s"}, {{"q", "s", "q", 0}});
    auto s3 = successors(g3, Belief({{0, 7}}), 0);
    REQUIRE(s3.size() == 1);
    CHECK(s3[0] == Belief({{0, 7}}));
}

TEST_CASE("leq and is_negative examples")
{
    CHECK(leq(Belief({{0, 1}}), Belief({{0, 2}})));
    CHECK(!leq(Belief({{0, 1}}), Belief({{1, 5}})));
    CHECK(!leq(Belief({{0, 1}, {1, 4}}), Belief({{0, 2}, {1, 3}})));
    CHECK(!is_negative(Belief({{0, 0}})));
    CHECK(is_negative(Belief({{0, 3}, {1, -1}})));
}

TEST_CASE("encoding examples")
{
    Game g = make_game({"a", "b"}, {"s"}, {{"a", "s", "a", 0}, {"b", "s", "b", 0}});
    CHECK(encode_vector(g, Belief({{0, 5}})) == ints({2, 2, 5, 5}));
    CHECK(encode_vector(g, Belief({{0, 1}, {1, 4}})) == ints({0, 4, 4, 1}));
    CHECK_THROWS_AS(encode_vector(g, Belief({{0, -1}})), std::domain_error);
}

TEST_CASE("encoding reflects the order")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        Game g = random_game(rng, 6, 1, 0, 0, false);
        Belief f = random_belief(rng, g, 4), h = random_belief(rng, g, 4);
        if (rng() % 3 == 0) {
            // Force equal supports so that the interesting case is exercised.
            std::vector<Belief::Entry> e;
            for (const auto& x : f.entries()) e.push_back({x.state, Int(rng() % 5)});
            h = Belief(e);
        }
        auto vf = encode_vector(g, f), vh = encode_vector(g, h);
        CHECK(leq(f, h) == vector_leq(vf, vh));
        CHECK(vf[0] >= 0);
        CHECK(vf[1] >= 0);
        CHECK(vf[0] + vf[1] == (Int(1) << g.num_states()));
    }
}

TEST_CASE("successors partition post_sigma and are monotone")
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
        Game g = random_game(rng, 6, 3, -3, 3, i % 2 == 0);
        // A general partition: split states into two blocks.
        if (i % 3 == 0 && g.num_states() > 1) {
            std::vector<StateId> x, y;
            for (StateId q = 0; q < g.num_states(); ++q) (q % 2 ? x : y).push_back(q);
            g = Game(g.states(), g.initial(), g.alphabet(), g.transitions(), {y, x});
        }
        Belief f = random_belief(rng, g, 5);
        std::vector<Belief::Entry> up;
        for (const auto& e : f.entries()) up.push_back({e.state, e.value + static_cast<int>(rng() % 3)});
        Belief h(up);
        for (ActionId a = 0; a < g.num_actions(); ++a) {
            auto sf = successors(g, f, a), sh = successors(g, h, a);
            StateSet all;
            for (const auto& b : sf) {
                ObsId o = g.observation_of(b.entries().front().state);
                for (const auto& e : b.entries()) {
                    CHECK(g.observation_of(e.state) == o);
                    all.push_back(e.state);
                }
            }
            std::sort(all.begin(), all.end());
            CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
            CHECK(all == post_sigma(g, f.support(), a));
            REQUIRE(sf.size() == sh.size());
            for (std::size_t j = 0; j < sf.size(); ++j) CHECK(leq(sf[j], sh[j]));
        }
    }
}

TEST_CASE("belief json")
{
    Game g = make_game({"a", "b"}, {"s"}, {{"a", "s", "a", 0}, {"b", "s", "b", 0}});
    CHECK(belief_to_json(g, Belief({{0, 1}, {1, 4}})) == R"({"a":1,"b":4})");
}
