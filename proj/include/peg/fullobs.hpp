#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "peg/bigint.hpp"
#include "peg/game.hpp"
#include "peg/tree_solver.hpp"

namespace peg {

/// Least initial credit per state for a full-observation game; nullopt
/// stands for infinity (no credit suffices).
struct CreditTable {
    std::vector<std::optional<Int>> value;

    bool wins(StateId q, const Int& c0) const { return value.at(q) && *value[q] <= c0; }
};

class NotFullObservation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// True when every observation block is a singleton.
bool is_full_observation(const Game& g);

/// Value iteration from the all-zero table, Gauss-Seidel over states.
/// Values above |Q| * w_max are infinite.
CreditTable min_credit(const Game& g);

Verdict decide_fullobs(const Game& g, const Int& c0);

std::string credit_table_to_json(const Game& g, const CreditTable& t);

}  // namespace peg
