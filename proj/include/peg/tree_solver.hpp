#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "peg/belief.hpp"
#include "peg/game.hpp"

namespace peg {

using NodeId = std::uint32_t;

enum class NodeStatus {
    interior,
    negative_leaf,
    subsumed_leaf,  // link = nearest proper ancestor whose belief is below this one
    reused_leaf,    // link = earlier finished node with an identical belief and a certified verdict
    frontier,       // not expanded because a resource limit was hit
};

const char* to_string(NodeStatus s);

struct TreeNode {
    NodeId id = 0;
    std::optional<NodeId> parent;
    std::optional<ActionId> action;
    ObsId observation = 0;
    std::size_t depth = 0;
    Belief belief;
    NodeStatus status = NodeStatus::frontier;
    NodeId link = 0;
    bool reused_win = false;  // verdict carried by a reused leaf

    /// Children grouped by action: children of action a are
    /// children[child_begin[a] .. child_begin[a+1]).
    std::vector<NodeId> children;
    std::vector<std::uint32_t> child_begin;

    std::span<const NodeId> children_of(ActionId a) const
    {
        return {children.data() + child_begin[a], children.data() + child_begin[a + 1]};
    }
    bool is_leaf() const { return status != NodeStatus::interior; }
};

/// Anchor rank of a node: the node wins when every back-edge into an
/// ancestor at depth >= rank counts as winning. -1 = loses regardless,
/// rank_certified = wins using only back-edges inside its own subtree.
using Rank = std::int64_t;
inline constexpr Rank rank_losing = -1;
inline constexpr Rank rank_certified = INT64_MAX;

/// Finite full-observation safety game over function-action sequences.
/// Node 0 is the root; children always have larger ids than their parent.
struct SafetyGame {
    std::size_t num_actions = 0;
    std::vector<TreeNode> nodes;
    std::vector<Rank> ranks;  // filled for every node once the build completes
    bool complete = false;

    const TreeNode& root() const { return nodes.front(); }
    bool safe(NodeId n) const { return nodes[n].status != NodeStatus::negative_leaf; }
};

enum class Verdict { win, lose, resource_limit };

const char* to_string(Verdict v);

struct Limits {
    std::optional<std::size_t> max_nodes = 1'000'000;
    std::optional<std::chrono::milliseconds> max_time = std::chrono::seconds(60);

    static Limits none() { return {std::nullopt, std::nullopt}; }
};

struct BuildOptions {
    Limits limits;
    bool reuse_equal_beliefs = true;
};

struct SolveReport {
    Verdict verdict = Verdict::resource_limit;
    std::size_t nodes_built = 0;
    std::size_t max_depth = 0;
    Int control_parameter = 0;  // c0 + w_max + |Q|
    std::chrono::nanoseconds elapsed{0};
};

struct BuildResult {
    SafetyGame game;
    SolveReport report;
};

/// Depth-first construction of the safety game from the initial belief
/// with credit c0. Actions are expanded in alphabet order and observations
/// in declaration order. The report's verdict is the root's verdict when
/// the construction completes, resource_limit otherwise.
BuildResult build_safety_game(const Game& g, const Int& c0, const BuildOptions& options = {});

/// Greatest fixpoint: a node wins iff it is safe and it is a winning leaf or
/// some action leads only to winning children. Frontier nodes count as
/// losing.
std::vector<bool> solve_safety(const SafetyGame& h);

/// Anchor ranks computed bottom-up (see Rank).
std::vector<Rank> compute_ranks(const SafetyGame& h);

SolveReport decide(const Game& g, const Int& c0, const BuildOptions& options = {});

/// Every non-negative node at depth i has an encoding whose infinity norm
/// is below k(t + i), where k(x) = 2^x + x^2 and t = c0 + w_max + |Q|.
bool check_control_invariant(const SafetyGame& h, const Game& g, const Int& c0);

Int control_function(const Int& x);

std::string report_to_json(const SolveReport& r, bool with_timing);
std::string safety_game_to_dot(const SafetyGame& h, const Game& g);

}  // namespace peg
