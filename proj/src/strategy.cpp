#include "peg/strategy.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace peg {

using nlohmann::json;
using nlohmann::ordered_json;

std::optional<std::size_t> MealyStrategy::update(std::size_t memory, ObsId o, std::size_t) const
{
    for (const auto& [obs, next] : states_.at(memory).step)
        if (obs == o) return next;
    return std::nullopt;
}

MealyStrategy extract_strategy(const SafetyGame& h, const std::vector<bool>& winning)
{
    if (h.nodes.empty() || winning.size() != h.nodes.size()) throw StrategyError("winning set does not match the game");
    if (!winning[0]) throw StrategyError("root is not winning");
    const auto ranks = compute_ranks(h);

    auto resolve = [&](NodeId c) {
        const TreeNode& n = h.nodes[c];
        if (n.status == NodeStatus::subsumed_leaf || n.status == NodeStatus::reused_leaf) return n.link;
        return c;
    };
    auto choose = [&](const TreeNode& n) {
        std::optional<ActionId> best;
        Rank best_rank = rank_losing;
        for (ActionId a = 0; a < h.num_actions; ++a) {
            auto kids = n.children_of(a);
            if (!std::all_of(kids.begin(), kids.end(), [&](NodeId c) { return winning[c]; })) continue;
            Rank worst = rank_certified;
            for (NodeId c : kids) worst = std::min(worst, ranks[c]);
            if (!best || worst > best_rank) {
                best = a;
                best_rank = worst;
            }
        }
        if (!best) throw StrategyError("winning node " + std::to_string(n.id) + " has no winning action");
        return *best;
    };

    std::vector<MealyStrategy::State> states;
    std::unordered_map<NodeId, std::size_t> index;
    std::deque<NodeId> queue;
    auto visit = [&](NodeId id) {
        auto [it, fresh] = index.emplace(id, states.size());
        if (fresh) {
            if (h.nodes[id].status != NodeStatus::interior || !winning[id])
                throw StrategyError("controller would enter non-winning node " + std::to_string(id));
            states.push_back({id, 0, {}, h.nodes[id].belief});
            queue.push_back(id);
        }
        return it->second;
    };

    visit(0);
    while (!queue.empty()) {
        NodeId id = queue.front();
        queue.pop_front();
        const TreeNode& n = h.nodes[id];
        ActionId a = choose(n);
        std::vector<std::pair<ObsId, std::size_t>> step;
        for (NodeId c : n.children_of(a)) step.emplace_back(h.nodes[c].observation, visit(resolve(c)));
        auto& s = states[index.at(id)];
        s.output = a;
        s.step = std::move(step);
    }
    return MealyStrategy(std::move(states));
}

WordStrategy::WordStrategy(std::vector<ActionId> prefix, std::vector<ActionId> cycle)
    : prefix_(std::move(prefix)), cycle_(std::move(cycle))
{
}

WordStrategy::WordStrategy(Generator next) : next_(std::move(next)) {}

ActionId WordStrategy::letter(std::size_t i) const
{
    if (next_) {
        while (cache_.size() <= i) cache_.push_back(next_());
        return cache_[i];
    }
    if (i < prefix_.size()) return prefix_[i];
    if (cycle_.empty()) throw StrategyError("word strategy exhausted after " + std::to_string(prefix_.size()) + " letters");
    return cycle_[(i - prefix_.size()) % cycle_.size()];
}

const char* to_string(AdversaryKind k)
{
    switch (k) {
    case AdversaryKind::random: return "random";
    case AdversaryKind::greedy: return "greedy";
    case AdversaryKind::exhaustive: return "exhaustive";
    }
    return "?";
}

std::optional<AdversaryKind> parse_adversary(std::string_view name)
{
    if (name == "random") return AdversaryKind::random;
    if (name == "greedy") return AdversaryKind::greedy;
    if (name == "exhaustive") return AdversaryKind::exhaustive;
    return std::nullopt;
}

namespace {

std::size_t next_memory(const Game& g, const EveController& ctrl, std::size_t memory, StateId q, std::size_t round)
{
    ObsId o = g.observation_of(q);
    auto m = ctrl.update(memory, o, round);
    if (!m) throw StrategyError("controller has no move after observation " + std::to_string(o) + " in round " +
                                std::to_string(round));
    return *m;
}

SimulationResult play_once(const Game& g, const Int& c0, const EveController& ctrl, const Adversary& adam,
                           std::size_t max_steps)
{
    SimulationResult r;
    std::mt19937_64 rng(adam.seed);
    StateId q = g.initial();
    std::size_t memory = ctrl.start();
    Int level = 0;
    Belief belief = initial_belief(g, c0);

    for (std::size_t round = 0; round < max_steps; ++round) {
        ActionId a = ctrl.action(memory, round);
        auto edges = g.edges(q, a);
        if (edges.empty()) throw StrategyError("no transition from " + g.state_name(q) + " on " + g.action_name(a));

        std::size_t pick = 0;
        if (adam.kind == AdversaryKind::random) {
            pick = std::uniform_int_distribution<std::size_t>(0, edges.size() - 1)(rng);
        } else {
            auto succ = successors(g, belief, a);
            auto belief_for = [&](StateId dst) -> const Belief& {
                for (const Belief& b : succ)
                    if (g.observation_of(b.entries().front().state) == g.observation_of(dst)) return b;
                throw StrategyError("transition target outside the successor beliefs");
            };
            for (std::size_t i = 1; i < edges.size(); ++i) {
                const Int& mi = belief_for(edges[i].dst).min_value();
                const Int& mp = belief_for(edges[pick].dst).min_value();
                if (mi < mp || (mi == mp && edges[i].weight < edges[pick].weight)) pick = i;
            }
            belief = belief_for(edges[pick].dst);
        }

        const Edge& e = edges[pick];
        level += e.weight;
        q = e.dst;
        r.steps = round + 1;
        if (level < r.min_energy_seen) r.min_energy_seen = level;
        if (c0 + level < 0) {
            r.violated = true;
            break;
        }
        memory = next_memory(g, ctrl, memory, q, round);
    }
    return r;
}

}  // namespace

std::vector<Layer> explore(const Game& g, const Int& c0, const EveController& ctrl, std::size_t depth)
{
    std::vector<Layer> layers;
    layers.push_back({{ctrl.start(), g.initial(), 0, 0}});
    for (std::size_t round = 0; round < depth; ++round) {
        std::map<std::pair<std::size_t, StateId>, std::pair<Int, Int>> next;
        bool violated = false;
        for (const Configuration& c : layers.back()) {
            ActionId a = ctrl.action(c.memory, round);
            for (const Edge& e : g.edges(c.state, a)) {
                Int lo = c.min_level + e.weight;
                Int hi = c.max_level + e.weight;
                if (c0 + lo < 0) violated = true;
                std::size_t m = next_memory(g, ctrl, c.memory, e.dst, round);
                auto [it, fresh] = next.try_emplace({m, e.dst}, lo, hi);
                if (!fresh) {
                    if (lo < it->second.first) it->second.first = lo;
                    if (hi > it->second.second) it->second.second = hi;
                }
            }
        }
        Layer layer;
        layer.reserve(next.size());
        for (auto& [key, range] : next) layer.push_back({key.first, key.second, range.first, range.second});
        layers.push_back(std::move(layer));
        if (violated) break;
    }
    return layers;
}

SimulationResult simulate(const Game& g, const Int& c0, const EveController& ctrl, const Adversary& adam,
                          std::size_t max_steps)
{
    if (adam.kind != AdversaryKind::exhaustive) return play_once(g, c0, ctrl, adam, max_steps);

    const std::size_t depth = adam.depth ? adam.depth : max_steps;
    auto layers = explore(g, c0, ctrl, depth);
    SimulationResult r;
    r.steps = layers.size() - 1;
    for (const Layer& layer : layers)
        for (const Configuration& c : layer)
            if (c.min_level < r.min_energy_seen) r.min_energy_seen = c.min_level;
    r.violated = c0 + r.min_energy_seen < 0;
    return r;
}

namespace {

ordered_json int_json(const Int& v)
{
    if (fits_int64(v)) return static_cast<std::int64_t>(v);
    return v.str();
}

Int json_int(const json& v)
{
    if (v.is_number_integer()) return Int(v.get<std::int64_t>());
    if (v.is_string()) return parse_int(v.get<std::string>());
    throw StrategyError("expected an integer");
}

}  // namespace

std::string strategy_to_json(const Game& g, const MealyStrategy& s)
{
    ordered_json j;
    j["start"] = 0;
    ordered_json states = ordered_json::array();
    for (std::size_t i = 0; i < s.states().size(); ++i) {
        const auto& st = s.states()[i];
        ordered_json e;
        e["index"] = i;
        e["node"] = st.node;
        e["output"] = g.action_name(st.output);
        if (st.belief) {
            ordered_json b = ordered_json::object();
            for (const auto& entry : st.belief->entries()) b[g.state_name(entry.state)] = int_json(entry.value);
            e["belief"] = b;
        }
        ordered_json step = ordered_json::array();
        for (const auto& [o, next] : st.step) step.push_back({{"observation", o}, {"next", next}});
        e["step"] = step;
        states.push_back(e);
    }
    j["states"] = states;
    return j.dump(2) + "\n";
}

MealyStrategy strategy_from_json(const Game& g, std::string_view text)
{
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw StrategyError("strategy syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    try {
        if (j.value("start", 0) != 0) throw StrategyError("strategy must start in state 0");
        std::vector<MealyStrategy::State> states;
        const auto& arr = j.at("states");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const auto& e = arr[i];
            if (e.contains("index") && e["index"].get<std::size_t>() != i)
                throw StrategyError("strategy states must be listed in index order");
            MealyStrategy::State st;
            st.node = e.value("node", static_cast<NodeId>(i));
            st.output = g.action(e.at("output").get<std::string>());
            if (e.contains("belief")) {
                std::vector<Belief::Entry> entries;
                for (auto& [name, v] : e["belief"].items()) entries.push_back({g.state(name), json_int(v)});
                st.belief = Belief(std::move(entries));
            }
            for (const auto& step : e.at("step")) {
                auto o = step.at("observation").get<ObsId>();
                auto next = step.at("next").get<std::size_t>();
                if (o >= g.num_observations()) throw StrategyError("unknown observation " + std::to_string(o));
                if (next >= arr.size()) throw StrategyError("step target " + std::to_string(next) + " out of range");
                st.step.emplace_back(o, next);
            }
            states.push_back(std::move(st));
        }
        if (states.empty()) throw StrategyError("strategy has no states");
        return MealyStrategy(std::move(states));
    } catch (const json::exception& e) {
        throw StrategyError(std::string("malformed strategy: ") + e.what());
    } catch (const GameError& e) {
        throw StrategyError(std::string("strategy does not match the game: ") + e.what());
    }
}

std::string strategy_to_dot(const Game& g, const MealyStrategy& s)
{
    auto quote = [](const std::string& x) { return json(x).dump(); };
    std::ostringstream os;
    os << "digraph strategy {\n  node [shape=ellipse, fontname=\"monospace\"];\n";
    for (std::size_t i = 0; i < s.states().size(); ++i) {
        const auto& st = s.states()[i];
        std::string label = "n" + std::to_string(st.node) + " / " + g.action_name(st.output);
        os << "  s" << i << " [label=" << quote(label) << (i == 0 ? ", peripheries=2" : "") << "];\n";
        for (const auto& [o, next] : st.step)
            os << "  s" << i << " -> s" << next << " [label=" << quote("obs " + std::to_string(o)) << "];\n";
    }
    os << "}\n";
    return os.str();
}

std::string simulation_to_json(const SimulationResult& r, const Int& c0)
{
    ordered_json j;
    j["violated"] = r.violated;
    j["steps"] = r.steps;
    j["min_energy_seen"] = int_json(r.min_energy_seen);
    j["min_credit_level"] = int_json(c0 + r.min_energy_seen);
    return j.dump();
}

}  // namespace peg
