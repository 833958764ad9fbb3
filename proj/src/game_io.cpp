#include <sstream>

#include "json.hpp"
#include "peg/game.hpp"

namespace peg {

using nlohmann::json;

namespace {

const json& require(const json& doc, const char* field)
{
    auto it = doc.find(field);
    if (it == doc.end()) throw GameError(std::string("missing field '") + field + "'");
    return *it;
}

std::string require_string(const json& v, const std::string& what)
{
    if (!v.is_string()) throw GameError(what + " must be a string");
    auto s = v.get<std::string>();
    if (s.empty()) throw GameError(what + " must be nonempty");
    return s;
}

std::vector<std::string> name_list(const json& doc, const char* field)
{
    const json& arr = require(doc, field);
    if (!arr.is_array()) throw GameError(std::string("'") + field + "' must be an array");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < arr.size(); ++i)
        out.push_back(require_string(arr[i], std::string(field) + "[" + std::to_string(i) + "]"));
    return out;
}

}  // namespace

Game parse_game(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw GameError("syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) throw GameError("game document must be a JSON object");

    GameBuilder b;
    std::unordered_map<std::string, StateId> states;
    std::unordered_map<std::string, ActionId> actions;
    for (auto& s : name_list(doc, "states")) {
        if (states.count(s)) throw GameError("state '" + s + "' declared twice");
        states.emplace(s, b.add_state(s));
    }
    for (auto& a : name_list(doc, "alphabet")) {
        if (actions.count(a)) throw GameError("action '" + a + "' declared twice");
        actions.emplace(a, b.add_action(a));
    }
    auto lookup_state = [&](const std::string& name, const std::string& where) {
        auto it = states.find(name);
        if (it == states.end()) throw GameError(where + ": undeclared state '" + name + "'");
        return it->second;
    };

    b.set_initial(lookup_state(require_string(require(doc, "initial"), "'initial'"), "initial"));

    const json& trans = require(doc, "transitions");
    if (!trans.is_array()) throw GameError("'transitions' must be an array");
    for (std::size_t i = 0; i < trans.size(); ++i) {
        const std::string where = "transitions[" + std::to_string(i) + "]";
        const json& t = trans[i];
        if (!t.is_array() || t.size() != 4) throw GameError(where + " must be [src, action, dst, weight]");
        StateId src = lookup_state(require_string(t[0], where + " source"), where);
        std::string act = require_string(t[1], where + " action");
        auto a = actions.find(act);
        if (a == actions.end()) throw GameError(where + ": undeclared action '" + act + "'");
        StateId dst = lookup_state(require_string(t[2], where + " target"), where);
        if (!t[3].is_number_integer()) throw GameError(where + " weight must be an integer");
        if (t[3].is_number_unsigned() && t[3].get<std::uint64_t>() > std::uint64_t(INT64_MAX))
            throw GameError(where + " weight out of 64-bit range");
        b.add_transition(src, a->second, dst, t[3].get<std::int64_t>());
    }

    const json& obs = require(doc, "observations");
    if (obs.is_string()) {
        if (obs.get<std::string>() != "blind") throw GameError("'observations' must be an array or \"blind\"");
        b.make_blind();
    } else if (obs.is_array()) {
        std::unordered_map<StateId, std::size_t> owner;
        for (std::size_t o = 0; o < obs.size(); ++o) {
            const std::string where = "observations[" + std::to_string(o) + "]";
            if (!obs[o].is_array()) throw GameError(where + " must be an array");
            std::vector<StateId> block;
            for (const json& s : obs[o]) {
                StateId q = lookup_state(require_string(s, where + " member"), where);
                auto [it, fresh] = owner.emplace(q, o);
                if (!fresh)
                    throw GameError("state '" + b.build().state_name(q) + "' is in observations " +
                                    std::to_string(it->second) + " and " + std::to_string(o));
                block.push_back(q);
            }
            b.add_observation(std::move(block));
        }
    } else {
        throw GameError("'observations' must be an array or \"blind\"");
    }

    Game g = b.build();
    auto violations = validate(g);
    if (!violations.empty()) {
        std::string msg = violations.front().message;
        if (violations.size() > 1) msg += " (and " + std::to_string(violations.size() - 1) + " more)";
        throw GameError(msg);
    }
    return g;
}

std::string serialize_game(const Game& g)
{
    auto q = [](const std::string& s) { return json(s).dump(); };
    auto list = [&](const std::vector<std::string>& names) {
        std::string out = "[";
        for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + q(names[i]);
        return out + "]";
    };

    std::ostringstream os;
    os << "{\n";
    os << "  \"states\": " << list(g.states()) << ",\n";
    os << "  \"initial\": " << q(g.state_name(g.initial())) << ",\n";
    os << "  \"alphabet\": " << list(g.alphabet()) << ",\n";
    os << "  \"transitions\": [";
    for (std::size_t i = 0; i < g.transitions().size(); ++i) {
        const Transition& t = g.transitions()[i];
        os << (i ? ",\n    " : "\n    ") << "[" << q(g.state_name(t.src)) << ", " << q(g.action_name(t.action))
           << ", " << q(g.state_name(t.dst)) << ", " << t.weight << "]";
    }
    os << (g.transitions().empty() ? "],\n" : "\n  ],\n");
    os << "  \"observations\": ";
    if (g.kind() == GameKind::blind && g.observations().front().size() == g.num_states()) {
        os << "\"blind\"";
    } else {
        os << "[";
        for (std::size_t o = 0; o < g.observations().size(); ++o) {
            std::vector<std::string> names;
            for (StateId s : g.observations()[o]) names.push_back(g.state_name(s));
            os << (o ? ", " : "") << list(names);
        }
        os << "]";
    }
    os << "\n}\n";
    return os.str();
}

}  // namespace peg
