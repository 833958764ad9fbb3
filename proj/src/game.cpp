#include "peg/game.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <tuple>

namespace peg {

const char* to_string(GameKind kind)
{
    switch (kind) {
    case GameKind::blind: return "blind";
    case GameKind::full_observation: return "full_observation";
    case GameKind::general: return "general";
    }
    return "?";
}

Game::Game(std::vector<std::string> states, StateId initial, std::vector<std::string> alphabet,
           std::vector<Transition> transitions, std::vector<std::vector<StateId>> observations)
    : states_(std::move(states)),
      initial_(initial),
      alphabet_(std::move(alphabet)),
      transitions_(std::move(transitions)),
      observations_(std::move(observations))
{
    for (StateId q = 0; q < states_.size(); ++q) state_index_.emplace(states_[q], q);
    for (ActionId a = 0; a < alphabet_.size(); ++a) action_index_.emplace(alphabet_[a], a);

    const std::size_t n = states_.size();
    const std::size_t k = alphabet_.size();
    std::vector<std::vector<Edge>> buckets(n * k);
    for (const Transition& t : transitions_) {
        w_max_ = std::max<std::int64_t>(w_max_, t.weight < 0 ? -t.weight : t.weight);
        if (t.src >= n || t.dst >= n || t.action >= k) continue;
        buckets[t.src * k + t.action].push_back({t.dst, t.weight});
    }
    edge_begin_.assign(n * k + 1, 0);
    for (std::size_t i = 0; i < buckets.size(); ++i) {
        auto& b = buckets[i];
        std::stable_sort(b.begin(), b.end(), [](const Edge& x, const Edge& y) { return x.dst < y.dst; });
        edge_begin_[i + 1] = edge_begin_[i] + b.size();
        edges_.insert(edges_.end(), b.begin(), b.end());
    }

    obs_of_.assign(n, static_cast<ObsId>(observations_.size()));
    for (ObsId o = observations_.size(); o-- > 0;)
        for (StateId q : observations_[o])
            if (q < n) obs_of_[q] = o;
}

std::optional<StateId> Game::find_state(std::string_view name) const
{
    auto it = state_index_.find(std::string(name));
    if (it == state_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<ActionId> Game::find_action(std::string_view name) const
{
    auto it = action_index_.find(std::string(name));
    if (it == action_index_.end()) return std::nullopt;
    return it->second;
}

StateId Game::state(std::string_view name) const
{
    if (auto q = find_state(name)) return *q;
    throw GameError("unknown state '" + std::string(name) + "'");
}

ActionId Game::action(std::string_view name) const
{
    if (auto a = find_action(name)) return *a;
    throw GameError("unknown action '" + std::string(name) + "'");
}

std::span<const Edge> Game::edges(StateId q, ActionId a) const
{
    if (q >= states_.size()) throw GameError("state id " + std::to_string(q) + " out of range");
    if (a >= alphabet_.size()) throw GameError("action id " + std::to_string(a) + " out of range");
    const std::size_t i = q * alphabet_.size() + a;
    return {edges_.data() + edge_begin_[i], edges_.data() + edge_begin_[i + 1]};
}

GameKind Game::kind() const
{
    if (observations_.size() == 1) return GameKind::blind;
    if (std::all_of(observations_.begin(), observations_.end(),
                    [](const auto& block) { return block.size() == 1; }))
        return GameKind::full_observation;
    return GameKind::general;
}

StateId GameBuilder::add_state(std::string name)
{
    states_.push_back(std::move(name));
    return static_cast<StateId>(states_.size() - 1);
}

ActionId GameBuilder::add_action(std::string name)
{
    alphabet_.push_back(std::move(name));
    return static_cast<ActionId>(alphabet_.size() - 1);
}

void GameBuilder::add_transition(StateId src, ActionId a, StateId dst, std::int64_t weight)
{
    transitions_.push_back({src, a, dst, weight});
}

void GameBuilder::add_observation(std::vector<StateId> block)
{
    observations_.push_back(std::move(block));
}

void GameBuilder::make_blind()
{
    std::vector<StateId> all(states_.size());
    for (StateId q = 0; q < all.size(); ++q) all[q] = q;
    observations_ = {std::move(all)};
}

void GameBuilder::make_full_observation()
{
    observations_.clear();
    for (StateId q = 0; q < states_.size(); ++q) observations_.push_back({q});
}

Game GameBuilder::build() const
{
    return Game(states_, initial_, alphabet_, transitions_, observations_);
}

std::vector<Violation> validate(const Game& g)
{
    std::vector<Violation> out;
    auto report = [&](ViolationKind kind, std::string msg) { out.push_back({kind, std::move(msg)}); };

    const std::size_t n = g.num_states();
    const std::size_t k = g.num_actions();
    if (n == 0) report(ViolationKind::empty_state_set, "game has no states");

    std::set<std::string> seen;
    for (const auto& s : g.states())
        if (s.empty() || !seen.insert(s).second)
            report(ViolationKind::duplicate_name, "duplicate or empty state name '" + s + "'");
    seen.clear();
    for (const auto& a : g.alphabet())
        if (a.empty() || !seen.insert(a).second)
            report(ViolationKind::duplicate_name, "duplicate or empty action name '" + a + "'");

    if (g.initial() >= n)
        report(ViolationKind::unknown_initial, "initial state id " + std::to_string(g.initial()) + " is not a state");

    std::set<std::tuple<StateId, ActionId, StateId>> triples;
    for (const Transition& t : g.transitions()) {
        if (t.src >= n || t.dst >= n) {
            report(ViolationKind::unknown_state, "transition endpoint out of range");
            continue;
        }
        if (t.action >= k) {
            report(ViolationKind::unknown_action, "transition action out of range");
            continue;
        }
        if (!triples.insert({t.src, t.action, t.dst}).second)
            report(ViolationKind::duplicate_transition,
                   "duplicate transition (" + g.state_name(t.src) + "," + g.action_name(t.action) + "," +
                       g.state_name(t.dst) + ")");
    }

    for (StateId q = 0; q < n; ++q)
        for (ActionId a = 0; a < k; ++a)
            if (g.edges(q, a).empty())
                report(ViolationKind::not_total,
                       "relation not total at (" + g.state_name(q) + "," + g.action_name(a) + ")");

    std::vector<int> owner(n, -1);
    for (std::size_t o = 0; o < g.observations().size(); ++o) {
        const auto& block = g.observations()[o];
        if (block.empty()) report(ViolationKind::empty_observation, "observation " + std::to_string(o) + " is empty");
        for (StateId q : block) {
            if (q >= n) {
                report(ViolationKind::unknown_state, "observation " + std::to_string(o) + " lists an unknown state");
                continue;
            }
            if (owner[q] != -1)
                report(ViolationKind::observation_overlap,
                       "partition violated: state " + g.state_name(q) + " is in observations " +
                           std::to_string(owner[q]) + " and " + std::to_string(o));
            else
                owner[q] = static_cast<int>(o);
        }
    }
    for (StateId q = 0; q < n; ++q)
        if (owner[q] == -1)
            report(ViolationKind::observation_missing, "partition violated: state " + g.state_name(q) +
                                                           " is in no observation");
    return out;
}

StateSet post_sigma(const Game& g, const StateSet& s, ActionId a)
{
    std::vector<char> mark(g.num_states(), 0);
    for (StateId q : s)
        for (const Edge& e : g.edges(q, a)) mark[e.dst] = 1;
    StateSet out;
    for (StateId q = 0; q < mark.size(); ++q)
        if (mark[q]) out.push_back(q);
    return out;
}

Game make_total(const Game& g, std::int64_t sink_weight)
{
    std::vector<std::pair<StateId, ActionId>> missing;
    for (StateId q = 0; q < g.num_states(); ++q)
        for (ActionId a = 0; a < g.num_actions(); ++a)
            if (g.edges(q, a).empty()) missing.emplace_back(q, a);
    if (missing.empty()) return g;

    std::string name = "bot";
    while (g.find_state(name)) name += "'";

    auto states = g.states();
    const auto sink = static_cast<StateId>(states.size());
    states.push_back(name);

    auto transitions = g.transitions();
    for (auto [q, a] : missing) transitions.push_back({q, a, sink, sink_weight});
    for (ActionId a = 0; a < g.num_actions(); ++a) transitions.push_back({sink, a, sink, sink_weight});

    auto observations = g.observations();
    if (observations.size() == 1)
        observations.front().push_back(sink);
    else
        observations.push_back({sink});

    return Game(std::move(states), g.initial(), g.alphabet(), std::move(transitions), std::move(observations));
}

}  // namespace peg
