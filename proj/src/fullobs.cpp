#include "peg/fullobs.hpp"

#include <algorithm>

#include "json.hpp"

namespace peg {

bool is_full_observation(const Game& g)
{
    if (g.num_observations() != g.num_states()) return false;
    return std::all_of(g.observations().begin(), g.observations().end(),
                       [](const auto& block) { return block.size() == 1; });
}

CreditTable min_credit(const Game& g)
{
    if (!is_full_observation(g)) throw NotFullObservation("game is not full-observation");
    const std::size_t n = g.num_states();
    const Int cap = Int(n) * g.w_max();

    // nullopt = infinity throughout.
    std::vector<std::optional<Int>> v(n, Int(0));
    for (bool changed = true; changed;) {
        changed = false;
        for (StateId q = 0; q < n; ++q) {
            if (!v[q]) continue;
            std::optional<Int> best;
            bool have_best = false;
            for (ActionId a = 0; a < g.num_actions(); ++a) {
                auto edges = g.edges(q, a);
                if (edges.empty()) continue;
                std::optional<Int> worst = Int(0);
                for (const Edge& e : edges) {
                    if (!v[e.dst]) {
                        worst.reset();
                        break;
                    }
                    Int need = *v[e.dst] - e.weight;
                    if (need > *worst) worst = need;
                }
                if (worst && *worst > cap) worst.reset();
                if (!have_best || (worst && (!best || *worst < *best))) best = worst;
                have_best = true;
            }
            if (!have_best) best.reset();
            if (best != v[q]) {
                v[q] = best;
                changed = true;
            }
        }
    }
    return {std::move(v)};
}

Verdict decide_fullobs(const Game& g, const Int& c0)
{
    return min_credit(g).wins(g.initial(), c0) ? Verdict::win : Verdict::lose;
}

std::string credit_table_to_json(const Game& g, const CreditTable& t)
{
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (StateId q = 0; q < t.value.size(); ++q) {
        const auto& v = t.value[q];
        if (!v)
            j[g.state_name(q)] = "inf";
        else if (fits_int64(*v))
            j[g.state_name(q)] = static_cast<std::int64_t>(*v);
        else
            j[g.state_name(q)] = v->str();
    }
    return j.dump();
}

}  // namespace peg
