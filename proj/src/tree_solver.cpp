#include "peg/tree_solver.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace peg {

const char* to_string(NodeStatus s)
{
    switch (s) {
    case NodeStatus::interior: return "interior";
    case NodeStatus::negative_leaf: return "negative_leaf";
    case NodeStatus::subsumed_leaf: return "subsumed_leaf";
    case NodeStatus::reused_leaf: return "reused_leaf";
    case NodeStatus::frontier: return "frontier";
    }
    return "?";
}

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::win: return "Win";
    case Verdict::lose: return "Lose";
    case Verdict::resource_limit: return "ResourceLimit";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

Rank leaf_rank(const SafetyGame& h, const TreeNode& n)
{
    switch (n.status) {
    case NodeStatus::negative_leaf: return rank_losing;
    case NodeStatus::subsumed_leaf: return static_cast<Rank>(h.nodes[n.link].depth);
    case NodeStatus::reused_leaf: return n.reused_win ? rank_certified : rank_losing;
    default: return rank_losing;
    }
}

Rank interior_rank(const TreeNode& n, std::size_t num_actions, const std::vector<Rank>& ranks)
{
    Rank best = rank_losing;
    for (ActionId a = 0; a < num_actions; ++a) {
        Rank worst = rank_certified;
        for (NodeId c : n.children_of(a)) worst = std::min(worst, ranks[c]);
        best = std::max(best, worst);
    }
    if (best >= static_cast<Rank>(n.depth)) best = rank_certified;
    return best;
}

class Builder {
public:
    Builder(const Game& g, const BuildOptions& options) : g_(g), options_(options) {}

    BuildResult run(const Int& c0)
    {
        const auto start = Clock::now();
        BuildResult out;
        h_.num_actions = g_.num_actions();

        TreeNode root;
        root.belief = initial_belief(g_, c0);
        root.observation = g_.observation_of(g_.initial());
        h_.nodes.push_back(std::move(root));
        ranks_.push_back(rank_losing);

        bool aborted = false;
        if (is_negative(h_.nodes[0].belief)) {
            h_.nodes[0].status = NodeStatus::negative_leaf;
        } else {
            expand(0);
            std::size_t expansions = 0;
            while (!stack_.empty()) {
                Frame& top = stack_.back();
                const TreeNode& n = h_.nodes[top.node];
                if (top.next < n.children.size()) {
                    NodeId c = n.children[top.next++];
                    if (classify(c)) {
                        if (over_limits(start, ++expansions)) {
                            aborted = true;
                            break;
                        }
                        expand(c);
                    }
                    continue;
                }
                finish(top.node);
            }
        }

        h_.complete = !aborted;
        if (h_.complete) {
            ranks_[0] = h_.nodes[0].is_leaf() ? leaf_rank(h_, h_.nodes[0]) : ranks_[0];
            h_.ranks = std::move(ranks_);
        }

        SolveReport& r = out.report;
        r.nodes_built = h_.nodes.size();
        for (const auto& n : h_.nodes) r.max_depth = std::max(r.max_depth, n.depth);
        r.control_parameter = c0 + g_.w_max() + g_.num_states();
        if (aborted)
            r.verdict = Verdict::resource_limit;
        else
            r.verdict = h_.ranks[0] >= 0 ? Verdict::win : Verdict::lose;
        r.elapsed = Clock::now() - start;
        out.game = std::move(h_);
        return out;
    }

private:
    struct Frame {
        NodeId node;
        std::size_t next = 0;
    };

    bool over_limits(Clock::time_point start, std::size_t expansions) const
    {
        const auto& lim = options_.limits;
        if (lim.max_nodes && h_.nodes.size() >= *lim.max_nodes) return true;
        if (lim.max_time && (expansions & 255) == 0 && Clock::now() - start > *lim.max_time) return true;
        return false;
    }

    // Decides the status of a freshly reached child; true if it must be expanded.
    bool classify(NodeId c)
    {
        TreeNode& n = h_.nodes[c];
        if (is_negative(n.belief)) {
            n.status = NodeStatus::negative_leaf;
            ranks_[c] = rank_losing;
            return false;
        }
        auto it = path_.find(n.belief.support());
        if (it != path_.end()) {
            for (auto a = it->second.rbegin(); a != it->second.rend(); ++a) {
                if (leq(h_.nodes[*a].belief, n.belief)) {
                    n.status = NodeStatus::subsumed_leaf;
                    n.link = *a;
                    ranks_[c] = static_cast<Rank>(h_.nodes[*a].depth);
                    return false;
                }
            }
        }
        if (options_.reuse_equal_beliefs) {
            auto m = memo_.find(n.belief);
            if (m != memo_.end()) {
                n.status = NodeStatus::reused_leaf;
                n.link = m->second;
                n.reused_win = ranks_[m->second] == rank_certified;
                ranks_[c] = n.reused_win ? rank_certified : rank_losing;
                return false;
            }
        }
        return true;
    }

    void expand(NodeId id)
    {
        h_.nodes[id].status = NodeStatus::interior;
        std::vector<NodeId> children;
        std::vector<std::uint32_t> begin{0};
        for (ActionId a = 0; a < g_.num_actions(); ++a) {
            for (Belief& b : successors(g_, h_.nodes[id].belief, a)) {
                TreeNode c;
                c.id = static_cast<NodeId>(h_.nodes.size());
                c.parent = id;
                c.action = a;
                c.depth = h_.nodes[id].depth + 1;
                c.observation = g_.observation_of(b.entries().front().state);
                c.belief = std::move(b);
                children.push_back(c.id);
                h_.nodes.push_back(std::move(c));
                ranks_.push_back(rank_losing);
            }
            begin.push_back(static_cast<std::uint32_t>(children.size()));
        }
        TreeNode& n = h_.nodes[id];
        n.children = std::move(children);
        n.child_begin = std::move(begin);
        path_[n.belief.support()].push_back(id);
        stack_.push_back({id});
    }

    void finish(NodeId id)
    {
        const TreeNode& n = h_.nodes[id];
        Rank r = interior_rank(n, g_.num_actions(), ranks_);
        ranks_[id] = r;
        auto it = path_.find(n.belief.support());
        it->second.pop_back();
        if (it->second.empty()) path_.erase(it);
        stack_.pop_back();
        if (options_.reuse_equal_beliefs && (r == rank_certified || r == rank_losing)) memo_.emplace(n.belief, id);
    }

    const Game& g_;
    const BuildOptions& options_;
    SafetyGame h_;
    std::vector<Rank> ranks_;
    std::vector<Frame> stack_;
    std::unordered_map<StateSet, std::vector<NodeId>, SupportHash> path_;
    std::unordered_map<Belief, NodeId, BeliefHash> memo_;
};

}  // namespace

BuildResult build_safety_game(const Game& g, const Int& c0, const BuildOptions& options)
{
    if (c0 < 0) throw std::invalid_argument("initial credit must be non-negative");
    return Builder(g, options).run(c0);
}

std::vector<bool> solve_safety(const SafetyGame& h)
{
    std::vector<bool> win(h.nodes.size(), false);
    for (std::size_t i = h.nodes.size(); i-- > 0;) {
        const TreeNode& n = h.nodes[i];
        switch (n.status) {
        case NodeStatus::negative_leaf:
        case NodeStatus::frontier: win[i] = false; break;
        case NodeStatus::subsumed_leaf: win[i] = true; break;
        case NodeStatus::reused_leaf: win[i] = n.reused_win; break;
        case NodeStatus::interior:
            for (ActionId a = 0; a < h.num_actions && !win[i]; ++a) {
                auto kids = n.children_of(a);
                win[i] = std::all_of(kids.begin(), kids.end(), [&](NodeId c) { return win[c]; });
            }
            break;
        }
    }
    return win;
}

std::vector<Rank> compute_ranks(const SafetyGame& h)
{
    std::vector<Rank> ranks(h.nodes.size(), rank_losing);
    for (std::size_t i = h.nodes.size(); i-- > 0;) {
        const TreeNode& n = h.nodes[i];
        ranks[i] = n.status == NodeStatus::interior ? interior_rank(n, h.num_actions, ranks) : leaf_rank(h, n);
    }
    return ranks;
}

SolveReport decide(const Game& g, const Int& c0, const BuildOptions& options)
{
    if (c0 < 0) throw std::invalid_argument("initial credit must be non-negative");
    if (g.w_max() == 0) {
        SolveReport r;
        r.verdict = Verdict::win;
        r.control_parameter = c0 + g.num_states();
        return r;
    }
    auto result = build_safety_game(g, c0, options);
    if (result.report.verdict != Verdict::resource_limit) {
        auto win = solve_safety(result.game);
        result.report.verdict = win[0] ? Verdict::win : Verdict::lose;
    }
    return result.report;
}

Int control_function(const Int& x)
{
    if (x < 0) throw std::domain_error("control function argument must be non-negative");
    if (x > 1'000'000) throw std::overflow_error("control function argument too large");
    return (Int(1) << static_cast<unsigned>(x)) + x * x;
}

bool check_control_invariant(const SafetyGame& h, const Game& g, const Int& c0)
{
    const Int t = c0 + g.w_max() + g.num_states();
    std::unordered_map<std::size_t, Int> bound;
    for (const TreeNode& n : h.nodes) {
        if (is_negative(n.belief)) continue;
        auto it = bound.find(n.depth);
        if (it == bound.end()) it = bound.emplace(n.depth, control_function(t + n.depth)).first;
        auto v = encode_vector(g, n.belief);
        if (*std::max_element(v.begin(), v.end()) >= it->second) return false;
    }
    return true;
}

std::string report_to_json(const SolveReport& r, bool with_timing)
{
    nlohmann::ordered_json j;
    j["verdict"] = to_string(r.verdict);
    j["nodes_built"] = r.nodes_built;
    j["max_depth"] = r.max_depth;
    if (fits_int64(r.control_parameter))
        j["control_parameter"] = static_cast<std::int64_t>(r.control_parameter);
    else
        j["control_parameter"] = r.control_parameter.str();
    if (with_timing)
        j["elapsed_ms"] = std::chrono::duration<double, std::milli>(r.elapsed).count();
    return j.dump();
}

std::string safety_game_to_dot(const SafetyGame& h, const Game& g)
{
    auto quote = [](const std::string& s) { return nlohmann::json(s).dump(); };
    std::ostringstream os;
    os << "digraph safety_game {\n  node [shape=box, style=filled, fontname=\"monospace\"];\n";
    for (const TreeNode& n : h.nodes) {
        const char* color = "white";
        switch (n.status) {
        case NodeStatus::interior: color = "white"; break;
        case NodeStatus::negative_leaf: color = "salmon"; break;
        case NodeStatus::subsumed_leaf: color = "palegreen"; break;
        case NodeStatus::reused_leaf: color = n.reused_win ? "lightblue" : "plum"; break;
        case NodeStatus::frontier: color = "lightgray"; break;
        }
        os << "  n" << n.id << " [label=" << quote(std::to_string(n.id) + ": " + belief_to_text(g, n.belief))
           << ", fillcolor=" << color << "];\n";
        if (n.parent)
            os << "  n" << *n.parent << " -> n" << n.id << " [label=" << quote(g.action_name(*n.action)) << "];\n";
        if (n.status == NodeStatus::subsumed_leaf || n.status == NodeStatus::reused_leaf)
            os << "  n" << n.id << " -> n" << n.link << " [style=dashed, constraint=false];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace peg
