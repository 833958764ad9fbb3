#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "peg/belief.hpp"
#include "peg/game.hpp"
#include "peg/tree_solver.hpp"

namespace peg {

/// Observation-based controller for Eve. It sees only the round number and
/// the observations revealed so far, summarized in an opaque memory value.
class EveController {
public:
    virtual ~EveController() = default;
    virtual std::size_t start() const = 0;
    virtual ActionId action(std::size_t memory, std::size_t round) const = 0;
    /// Next memory after observing o; nullopt if the controller has no
    /// plan for that observation.
    virtual std::optional<std::size_t> update(std::size_t memory, ObsId o, std::size_t round) const = 0;
};

/// Finite-state controller read off a solved safety game. Leaves are folded
/// into the interior node they delegate to (the subsuming ancestor, or the
/// source of a reused verdict), so every state is an interior tree node.
class MealyStrategy final : public EveController {
public:
    struct State {
        NodeId node;
        ActionId output;
        std::vector<std::pair<ObsId, std::size_t>> step;  // observation -> state index
        std::optional<Belief> belief;
    };

    MealyStrategy() = default;
    explicit MealyStrategy(std::vector<State> states) : states_(std::move(states)) {}

    const std::vector<State>& states() const { return states_; }

    std::size_t start() const override { return 0; }
    ActionId action(std::size_t memory, std::size_t) const override { return states_.at(memory).output; }
    std::optional<std::size_t> update(std::size_t memory, ObsId o, std::size_t) const override;

private:
    std::vector<State> states_;
};

class StrategyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Controller from a solved safety game. At every node the chosen action
/// maximizes the worst child rank (ties: alphabet order), which keeps the
/// controller inside winning nodes even after jumping into a reused subtree.
MealyStrategy extract_strategy(const SafetyGame& h, const std::vector<bool>& winning);

/// Blind controller playing a fixed (possibly infinite) word.
class WordStrategy final : public EveController {
public:
    using Generator = std::function<ActionId()>;

    /// prefix followed by cycle repeated forever (cycle may be empty if the
    /// word is only ever read up to |prefix| letters).
    WordStrategy(std::vector<ActionId> prefix, std::vector<ActionId> cycle);
    /// Lazily generated word; letters are cached as they are produced.
    explicit WordStrategy(Generator next);

    ActionId letter(std::size_t i) const;

    std::size_t start() const override { return 0; }
    ActionId action(std::size_t, std::size_t round) const override { return letter(round); }
    std::optional<std::size_t> update(std::size_t, ObsId, std::size_t) const override { return 0; }

private:
    std::vector<ActionId> prefix_;
    std::vector<ActionId> cycle_;
    Generator next_;
    mutable std::vector<ActionId> cache_;
};

enum class AdversaryKind { random, greedy, exhaustive };

const char* to_string(AdversaryKind k);
std::optional<AdversaryKind> parse_adversary(std::string_view name);

struct Adversary {
    AdversaryKind kind = AdversaryKind::random;
    std::uint64_t seed = 0;
    std::size_t depth = 0;  // exhaustive only; 0 = use max_steps
};

struct SimulationResult {
    Int min_energy_seen = 0;  // least energy level EL over all explored prefixes
    std::size_t steps = 0;
    bool violated = false;
};

/// Plays ctrl against the adversary for max_steps rounds (or the exhaustive
/// depth) from credit c0. Exhaustive exploration keeps, for each
/// (controller memory, state), the least energy level reaching it, which is
/// exactly the worst case over all adversary choices.
SimulationResult simulate(const Game& g, const Int& c0, const EveController& ctrl, const Adversary& adam,
                          std::size_t max_steps);

/// One layer of the exhaustive exploration: after `round` rounds, the least
/// and greatest energy level of plays in each (memory, state).
struct Configuration {
    std::size_t memory;
    StateId state;
    Int min_level;
    Int max_level;
};
using Layer = std::vector<Configuration>;

/// Exhaustive forward exploration; layer 0 is the initial configuration.
/// Exploration stops early after a layer containing a configuration with
/// c0 + min_level < 0.
std::vector<Layer> explore(const Game& g, const Int& c0, const EveController& ctrl, std::size_t depth);

std::string strategy_to_json(const Game& g, const MealyStrategy& s);
MealyStrategy strategy_from_json(const Game& g, std::string_view text);
std::string strategy_to_dot(const Game& g, const MealyStrategy& s);
std::string simulation_to_json(const SimulationResult& r, const Int& c0);

}  // namespace peg
