#pragma once

#include <optional>
#include <string>
#include <vector>

#include "peg/bigint.hpp"
#include "peg/game.hpp"

namespace peg {

/// Eve's knowledge after an observation history: for each state she
/// considers possible, the least energy level of a consistent prefix
/// ending there. States outside the support are undefined (bottom).
class Belief {
public:
    struct Entry {
        StateId state;
        Int value;

        bool operator==(const Entry&) const = default;
    };

    Belief() = default;
    /// Entries are sorted by state; duplicate states are rejected.
    explicit Belief(std::vector<Entry> entries);

    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    StateSet support() const;
    std::optional<Int> value(StateId q) const;
    const Int& min_value() const;

    bool operator==(const Belief&) const = default;

private:
    std::vector<Entry> entries_;
};

struct BeliefHash {
    std::size_t operator()(const Belief& f) const;
};

struct SupportHash {
    std::size_t operator()(const StateSet& s) const;
};

Belief initial_belief(const Game& g, const Int& credit);

/// One successor per observation block hit by post_a(supp f), in
/// declaration order of the blocks.
std::vector<Belief> successors(const Game& g, const Belief& f, ActionId a);

/// f below h: same support and pointwise <=.
bool leq(const Belief& f, const Belief& h);

bool is_negative(const Belief& f);

/// Vector encoding: (2^n - code(supp), code(supp), v(q_n), ..., v(q_1)) with
/// code(S) = 1 + sum_{q_i in S} 2^(i-1) and v(q) = f(q) on the support,
/// min f elsewhere. Requires a non-negative belief (throws std::domain_error).
std::vector<Int> encode_vector(const Game& g, const Belief& f);

/// Componentwise order on equal-length vectors.
bool vector_leq(const std::vector<Int>& x, const std::vector<Int>& y);

/// {"state": value, ...}
std::string belief_to_json(const Game& g, const Belief& f);
/// {state↦value, ...} for labels and logs.
std::string belief_to_text(const Game& g, const Belief& f);

}  // namespace peg
