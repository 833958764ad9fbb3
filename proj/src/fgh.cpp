#include "peg/fgh.hpp"

#include <algorithm>
#include <sstream>

namespace peg {

namespace {

constexpr std::size_t max_index_depth = 100'000;

void check_bits(std::size_t bits, const Budget& budget, const std::string& what)
{
    if (bits > budget.max_bits)
        throw BudgetExceeded(what + " needs about " + std::to_string(bits) + " bits, budget is " +
                             std::to_string(budget.max_bits) + " bits");
}

Int F2(const Int& x, const Budget& budget)
{
    const Int e = x + 1;
    if (e > budget.max_bits)
        throw BudgetExceeded("F_2(" + (bit_length(x) <= 64 ? x.str() : std::string("x")) +
                             ") = 2^(x+1)(x+1)-1 needs more than " + std::to_string(budget.max_bits) +
                             " bits");
    check_bits(static_cast<std::size_t>(e) + bit_length(e), budget, "F_2");
    return (e << static_cast<unsigned>(e)) - 1;
}

Int F_rec(std::size_t i, const Int& x, const Budget& budget, std::size_t depth)
{
    if (x == 0) return 1;  // F_i(0) = 1 for every i
    switch (i) {
    case 0: return x + 1;
    case 1: {
        Int r = 2 * x + 1;
        check_bits(bit_length(r), budget, "F_1");
        return r;
    }
    case 2: return F2(x, budget);
    default: break;
    }
    if (depth > max_index_depth) throw BudgetExceeded("F_i recursion deeper than " + std::to_string(max_index_depth));
    Int r = x;
    for (Int n = 0; n <= x; ++n) r = F_rec(i - 1, r, budget, depth + 1);
    return r;
}

// F_1^n(x) = 2^n (x+1) - 1.
Int F1_iter(const Int& n, const Int& x, const Budget& budget)
{
    if (n > budget.max_bits) throw BudgetExceeded("F_1 iterated " + n.str() + " times exceeds the bit budget");
    const std::size_t bits = static_cast<std::size_t>(n) + bit_length(x + 1);
    check_bits(bits, budget, "F_1 iteration");
    return ((x + 1) << static_cast<unsigned>(n)) - 1;
}

}  // namespace

Int F_eval(std::size_t i, const Int& x, const Budget& budget)
{
    if (x < 0) throw std::invalid_argument("F_i is defined on naturals");
    return F_rec(i, x, budget, 0);
}

Int F_omega(const Int& x, const Budget& budget)
{
    if (x < 0) throw std::invalid_argument("F_omega is defined on naturals");
    if (x > max_index_depth)
        throw BudgetExceeded("F_omega(" + x.str() + ") index exceeds " + std::to_string(max_index_depth));
    try {
        return F_eval(static_cast<std::size_t>(x), x, budget);
    } catch (const BudgetExceeded& e) {
        throw BudgetExceeded("F_omega(" + x.str() + ") = F_" + x.str() + "(" + x.str() +
                             ") unfolds into iterated F_2, a tower of exponentials: " + e.what());
    }
}

Int phi_eval(const RewriteState& s, const Budget& budget)
{
    if (s.x < 0) throw std::invalid_argument("negative argument in rewrite state");
    Int x = s.x;
    for (std::size_t j = 0; j < s.a.size(); ++j) {
        const Int& n = s.a[j];
        if (n < 0) throw std::invalid_argument("negative entry in rewrite state");
        if (n == 0) continue;
        if (j == 0) {
            x += n;
        } else if (j == 1) {
            x = F1_iter(n, x, budget);
        } else {
            for (Int c = 0; c < n; ++c) x = F_eval(j, x, budget);
        }
    }
    return x;
}

std::string to_string(const Rule& r)
{
    switch (r.kind) {
    case Rule::Kind::N0: return "N0";
    case Rule::Kind::N2: return "N2";
    case Rule::Kind::N1: return "N1_" + std::to_string(r.j);
    }
    return "?";
}

std::optional<Rule> parse_rule(std::string_view text)
{
    if (text == "N0") return Rule::n0();
    if (text == "N2") return Rule::n2();
    if (text.size() > 3 && text.substr(0, 3) == "N1_") {
        std::size_t j = 0;
        for (char c : text.substr(3)) {
            if (c < '0' || c > '9') return std::nullopt;
            j = j * 10 + static_cast<std::size_t>(c - '0');
            if (j > 1'000'000) return std::nullopt;
        }
        if (j >= 1) return Rule::n1(j);
    }
    return std::nullopt;
}

bool applicable(const RewriteState& s, const Rule& r)
{
    switch (r.kind) {
    case Rule::Kind::N0: return true;
    case Rule::Kind::N2: return !s.a.empty() && s.a[0] >= 1;
    case Rule::Kind::N1: return r.j >= 1 && r.j < s.a.size() && s.a[r.j] >= 1;
    }
    return false;
}

std::variant<RewriteState, Int> apply_rule(const RewriteState& s, const Rule& r)
{
    if (!applicable(s, r)) throw RewriteError(to_string(r) + " does not apply to " + to_string(s));
    if (r.kind == Rule::Kind::N0) return s.x;
    RewriteState t = s;
    if (r.kind == Rule::Kind::N2) {
        t.a[0] -= 1;
        t.x += 1;
    } else {
        t.a[r.j] -= 1;
        t.a[r.j - 1] = s.x + 1;
    }
    return t;
}

bool is_proper(const RewriteState& s, const Rule& r)
{
    if (!applicable(s, r)) throw RewriteError(to_string(r) + " does not apply to " + to_string(s));
    if (r.kind != Rule::Kind::N1) return true;
    for (std::size_t l = 0; l < r.j; ++l)
        if (s.a[l] != 0) return false;
    return true;
}

Rule next_proper_rule(const RewriteState& s)
{
    if (!s.a.empty() && s.a[0] > 0) return Rule::n2();
    for (std::size_t j = 1; j < s.a.size(); ++j)
        if (s.a[j] > 0) return Rule::n1(j);
    return Rule::n0();
}

std::optional<Rule> ProperScheduler::next()
{
    if (done_) return std::nullopt;
    Rule r = next_proper_rule(state_);
    if (r.kind == Rule::Kind::N0)
        done_ = true;
    else
        state_ = std::get<RewriteState>(apply_rule(state_, r));
    return r;
}

std::vector<Rule> proper_sequence(std::size_t k, const Int& x0, const std::vector<Int>& a0, const Budget& budget)
{
    if (a0.size() != k + 1)
        throw std::invalid_argument("vector has " + std::to_string(a0.size()) + " entries, expected " +
                                    std::to_string(k + 1));
    for (const Int& v : a0)
        if (v < 0) throw std::invalid_argument("negative entry in rewrite state");
    if (x0 < 0) throw std::invalid_argument("negative argument in rewrite state");

    ProperScheduler sched({a0, x0});
    std::vector<Rule> out;
    while (auto r = sched.next()) {
        if (out.size() >= budget.max_steps)
            throw BudgetExceeded("proper schedule longer than " + std::to_string(budget.max_steps) + " steps");
        out.push_back(*r);
    }
    return out;
}

Trace replay(const RewriteState& s0, const std::vector<Rule>& rules)
{
    Trace t;
    t.states.push_back(s0);
    for (std::size_t i = 0; i < rules.size(); ++i) {
        if (t.value) throw RewriteError("rule " + to_string(rules[i]) + " after N0 at step " + std::to_string(i), i);
        const RewriteState& cur = t.states.back();
        if (!applicable(cur, rules[i]))
            throw RewriteError(to_string(rules[i]) + " does not apply to " + to_string(cur) + " at step " +
                                   std::to_string(i),
                               i);
        auto next = apply_rule(cur, rules[i]);
        if (auto* v = std::get_if<Int>(&next))
            t.value = *v;
        else
            t.states.push_back(std::move(std::get<RewriteState>(next)));
    }
    return t;
}

bool lex_less(const std::vector<Int>& x, const std::vector<Int>& y)
{
    if (x.size() != y.size()) throw std::invalid_argument("lex_less on vectors of different length");
    for (std::size_t i = x.size(); i-- > 0;)
        if (x[i] != y[i]) return x[i] < y[i];
    return false;
}

std::string to_string(const RewriteState& s)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = s.a.size(); i-- > 0;) os << s.a[i] << (i ? "," : "");
    os << "; " << s.x << ')';
    return os.str();
}

std::vector<Int> parse_vector(std::string_view text)
{
    std::vector<Int> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = text.find(',', pos);
        std::string_view item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        Int v = parse_int(item);
        if (v < 0) throw std::invalid_argument("vector entries must be non-negative");
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace peg
