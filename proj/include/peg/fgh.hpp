#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "peg/bigint.hpp"

namespace peg {

/// Caps on the work done by the evaluators: bit-length of any intermediate
/// value, and number of rules in a generated schedule.
struct Budget {
    std::size_t max_bits = std::size_t(1) << 20;
    std::size_t max_steps = 10'000'000;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// F_0(x) = x+1, F_{i+1}(x) = F_i^{x+1}(x).
Int F_eval(std::size_t i, const Int& x, const Budget& budget = {});
/// F_x(x).
Int F_omega(const Int& x, const Budget& budget = {});

/// Vector a (a[0] innermost) and argument x.
struct RewriteState {
    std::vector<Int> a;
    Int x;

    bool operator==(const RewriteState&) const = default;
};

/// F_k^{a_k}( ... F_1^{a_1}(F_0^{a_0}(x))).
Int phi_eval(const RewriteState& s, const Budget& budget = {});

struct Rule {
    enum class Kind { N0, N1, N2 };
    Kind kind = Kind::N0;
    std::size_t j = 0;  // N1 only, 1 <= j <= k

    static Rule n0() { return {Kind::N0, 0}; }
    static Rule n1(std::size_t j) { return {Kind::N1, j}; }
    static Rule n2() { return {Kind::N2, 0}; }

    bool operator==(const Rule&) const = default;
};

std::string to_string(const Rule& r);
/// "N0", "N2" or "N1_j".
std::optional<Rule> parse_rule(std::string_view text);

class RewriteError : public std::invalid_argument {
public:
    RewriteError(const std::string& what, std::optional<std::size_t> step = std::nullopt)
        : std::invalid_argument(what), step_(step)
    {
    }
    std::optional<std::size_t> step() const { return step_; }

private:
    std::optional<std::size_t> step_;
};

bool applicable(const RewriteState& s, const Rule& r);

/// N0 yields x; N1_j and N2 yield the rewritten state. Throws RewriteError
/// if the rule does not apply.
std::variant<RewriteState, Int> apply_rule(const RewriteState& s, const Rule& r);

/// N1_j is proper iff every lower dimension is zero; N0 and N2 always are.
bool is_proper(const RewriteState& s, const Rule& r);

/// Canonical proper choice: N2 while a_0 > 0, else N1_j for the least
/// non-zero j, else N0.
Rule next_proper_rule(const RewriteState& s);

/// Canonical proper schedule from (a0; x0), ending with N0. a0 must have
/// k+1 entries.
std::vector<Rule> proper_sequence(std::size_t k, const Int& x0, const std::vector<Int>& a0,
                                  const Budget& budget = {});

/// Lazy form of proper_sequence, for schedules too long to materialize.
class ProperScheduler {
public:
    explicit ProperScheduler(RewriteState s) : state_(std::move(s)) {}

    /// Next rule, or nullopt once N0 has been produced.
    std::optional<Rule> next();
    const RewriteState& state() const { return state_; }

private:
    RewriteState state_;
    bool done_ = false;
};

struct Trace {
    std::vector<RewriteState> states;  // states[0] is the start
    std::optional<Int> value;          // set once N0 is applied
};

/// Applies rules in order. Throws RewriteError with the failing step index
/// if a rule is inapplicable or follows N0.
Trace replay(const RewriteState& s0, const std::vector<Rule>& rules);

/// Lexicographic comparison of equally long vectors, highest index first.
bool lex_less(const std::vector<Int>& x, const std::vector<Int>& y);

/// "(a_k,...,a_0; x)".
std::string to_string(const RewriteState& s);
/// Parses "a_k,...,a_0" (highest dimension first).
std::vector<Int> parse_vector(std::string_view text);

}  // namespace peg
