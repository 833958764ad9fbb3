#include "peg/belief.hpp"

#include <algorithm>
#include <stdexcept>

#include <boost/container_hash/hash.hpp>

#include "json.hpp"

namespace peg {

Belief::Belief(std::vector<Entry> entries) : entries_(std::move(entries))
{
    std::sort(entries_.begin(), entries_.end(), [](const Entry& x, const Entry& y) { return x.state < y.state; });
    for (std::size_t i = 1; i < entries_.size(); ++i)
        if (entries_[i - 1].state == entries_[i].state)
            throw std::invalid_argument("belief lists state " + std::to_string(entries_[i].state) + " twice");
}

StateSet Belief::support() const
{
    StateSet s;
    s.reserve(entries_.size());
    for (const auto& e : entries_) s.push_back(e.state);
    return s;
}

std::optional<Int> Belief::value(StateId q) const
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), q,
                               [](const Entry& e, StateId s) { return e.state < s; });
    if (it == entries_.end() || it->state != q) return std::nullopt;
    return it->value;
}

const Int& Belief::min_value() const
{
    if (entries_.empty()) throw std::logic_error("min_value of an empty belief");
    return std::min_element(entries_.begin(), entries_.end(),
                            [](const Entry& x, const Entry& y) { return x.value < y.value; })
        ->value;
}

std::size_t BeliefHash::operator()(const Belief& f) const
{
    std::size_t h = 0;
    for (const auto& e : f.entries()) {
        boost::hash_combine(h, e.state);
        boost::hash_combine(h, boost::multiprecision::hash_value(e.value));
    }
    return h;
}

std::size_t SupportHash::operator()(const StateSet& s) const
{
    return boost::hash_range(s.begin(), s.end());
}

Belief initial_belief(const Game& g, const Int& credit)
{
    return Belief({{g.initial(), credit}});
}

std::vector<Belief> successors(const Game& g, const Belief& f, ActionId a)
{
    // Min-composition over all incoming a-edges from the support.
    std::vector<std::pair<StateId, Int>> best;
    for (const auto& [p, v] : f.entries()) {
        for (const Edge& e : g.edges(p, a)) {
            Int candidate = v + e.weight;
            auto it = std::find_if(best.begin(), best.end(), [&](const auto& b) { return b.first == e.dst; });
            if (it == best.end())
                best.emplace_back(e.dst, std::move(candidate));
            else if (candidate < it->second)
                it->second = std::move(candidate);
        }
    }
    std::sort(best.begin(), best.end(), [&](const auto& x, const auto& y) {
        ObsId ox = g.observation_of(x.first), oy = g.observation_of(y.first);
        return ox != oy ? ox < oy : x.first < y.first;
    });

    std::vector<Belief> out;
    std::vector<Belief::Entry> block;
    for (std::size_t i = 0; i < best.size(); ++i) {
        block.push_back({best[i].first, std::move(best[i].second)});
        if (i + 1 == best.size() || g.observation_of(best[i + 1].first) != g.observation_of(best[i].first)) {
            out.emplace_back(std::move(block));
            block.clear();
        }
    }
    return out;
}

bool leq(const Belief& f, const Belief& h)
{
    const auto& x = f.entries();
    const auto& y = h.entries();
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i].state != y[i].state || x[i].value > y[i].value) return false;
    return true;
}

bool is_negative(const Belief& f)
{
    return std::any_of(f.entries().begin(), f.entries().end(), [](const auto& e) { return e.value < 0; });
}

std::vector<Int> encode_vector(const Game& g, const Belief& f)
{
    if (f.size() == 0) throw std::domain_error("cannot encode a belief with empty support");
    if (is_negative(f)) throw std::domain_error("cannot encode a negative belief");
    const std::size_t n = g.num_states();
    const Int full = Int(1) << n;
    Int code = 1;
    for (const auto& e : f.entries()) code += Int(1) << e.state;

    std::vector<Int> v;
    v.reserve(n + 2);
    v.push_back(full - code);
    v.push_back(code);
    const Int& placeholder = f.min_value();
    for (std::size_t i = n; i-- > 0;) {
        auto val = f.value(static_cast<StateId>(i));
        v.push_back(val ? *val : placeholder);
    }
    return v;
}

bool vector_leq(const std::vector<Int>& x, const std::vector<Int>& y)
{
    if (x.size() != y.size()) throw std::invalid_argument("vector_leq on vectors of different length");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] > y[i]) return false;
    return true;
}

std::string belief_to_json(const Game& g, const Belief& f)
{
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& e : f.entries()) {
        if (fits_int64(e.value))
            j[g.state_name(e.state)] = static_cast<std::int64_t>(e.value);
        else
            j[g.state_name(e.state)] = e.value.str();
    }
    return j.dump();
}

std::string belief_to_text(const Game& g, const Belief& f)
{
    std::string out = "{";
    for (std::size_t i = 0; i < f.entries().size(); ++i) {
        const auto& e = f.entries()[i];
        out += (i ? ", " : "") + g.state_name(e.state) + "↦" + e.value.str();
    }
    return out + "}";
}

}  // namespace peg
