#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace peg {

using StateId = std::uint32_t;
using ActionId = std::uint32_t;
using ObsId = std::uint32_t;

/// Sorted, duplicate-free set of state ids.
using StateSet = std::vector<StateId>;

struct Transition {
    StateId src;
    ActionId action;
    StateId dst;
    std::int64_t weight;

    bool operator==(const Transition&) const = default;
};

/// Outgoing edge of a (state, action) pair.
struct Edge {
    StateId dst;
    std::int64_t weight;
};

enum class GameKind { blind, full_observation, general };

const char* to_string(GameKind kind);

/// Raised for malformed game documents and unknown identifiers.
class GameError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Weighted automaton with a partition of its states into observations.
///
/// Immutable once built. Declaration order of states, actions and
/// observation blocks is the canonical order used everywhere else
/// (belief encodings, successor ordering, tree construction).
///
/// A Game may be constructed from data that violates the structural
/// invariants (missing successors, overlapping observations, ...); such a
/// game is reported by validate() and is only accepted by make_total().
class Game {
public:
    Game() = default;
    Game(std::vector<std::string> states, StateId initial, std::vector<std::string> alphabet,
         std::vector<Transition> transitions, std::vector<std::vector<StateId>> observations);

    std::size_t num_states() const { return states_.size(); }
    std::size_t num_actions() const { return alphabet_.size(); }
    std::size_t num_observations() const { return observations_.size(); }

    StateId initial() const { return initial_; }
    const std::vector<std::string>& states() const { return states_; }
    const std::vector<std::string>& alphabet() const { return alphabet_; }
    const std::vector<Transition>& transitions() const { return transitions_; }
    const std::vector<std::vector<StateId>>& observations() const { return observations_; }

    const std::string& state_name(StateId q) const { return states_.at(q); }
    const std::string& action_name(ActionId a) const { return alphabet_.at(a); }

    std::optional<StateId> find_state(std::string_view name) const;
    std::optional<ActionId> find_action(std::string_view name) const;
    StateId state(std::string_view name) const;    // throws GameError
    ActionId action(std::string_view name) const;  // throws GameError

    /// Outgoing edges of (q, a), sorted by target state.
    std::span<const Edge> edges(StateId q, ActionId a) const;

    /// Observation block containing q (first block if q is listed twice).
    ObsId observation_of(StateId q) const { return obs_of_.at(q); }

    /// Maximum absolute transition weight.
    std::int64_t w_max() const { return w_max_; }

    GameKind kind() const;

private:
    std::vector<std::string> states_;
    StateId initial_ = 0;
    std::vector<std::string> alphabet_;
    std::vector<Transition> transitions_;
    std::vector<std::vector<StateId>> observations_;

    std::unordered_map<std::string, StateId> state_index_;
    std::unordered_map<std::string, ActionId> action_index_;
    std::vector<std::size_t> edge_begin_;  // (q * |Sigma| + a) -> offset into edges_
    std::vector<Edge> edges_;
    std::vector<ObsId> obs_of_;
    std::int64_t w_max_ = 0;
};

/// Incremental, name-based construction of games. Used by the parser and
/// by the generators.
class GameBuilder {
public:
    StateId add_state(std::string name);
    ActionId add_action(std::string name);
    void set_initial(StateId q) { initial_ = q; }
    void add_transition(StateId src, ActionId a, StateId dst, std::int64_t weight);
    void add_observation(std::vector<StateId> block);

    /// Single block with every state declared so far (blind game).
    void make_blind();
    /// One singleton block per state.
    void make_full_observation();

    std::size_t num_states() const { return states_.size(); }
    std::size_t num_actions() const { return alphabet_.size(); }

    Game build() const;

private:
    std::vector<std::string> states_;
    std::vector<std::string> alphabet_;
    std::vector<Transition> transitions_;
    std::vector<std::vector<StateId>> observations_;
    StateId initial_ = 0;
};

enum class ViolationKind {
    empty_state_set,
    duplicate_name,
    unknown_initial,
    unknown_state,
    unknown_action,
    duplicate_transition,
    not_total,
    empty_observation,
    observation_overlap,
    observation_missing,
};

struct Violation {
    ViolationKind kind;
    std::string message;
};

/// Checks every structural invariant of g; an empty result means valid.
std::vector<Violation> validate(const Game& g);

/// States reachable from some state of s by one a-transition.
StateSet post_sigma(const Game& g, const StateSet& s, ActionId a);

/// Routes every missing (state, action) pair to a fresh sink state that
/// loops on all actions with sink_weight. The routing edges carry
/// sink_weight as well. Total games are returned unchanged.
Game make_total(const Game& g, std::int64_t sink_weight);

// Game file format (JSON).
Game parse_game(std::string_view text);
std::string serialize_game(const Game& g);

}  // namespace peg
