#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace peg {

enum class Op { inc, dec, zero };

const char* to_string(Op op);  // "inc", "dec", "0?"

struct Instruction {
    std::uint32_t src;
    Op op;
    int counter;  // 1 or 2
    std::uint32_t dst;
};

class MinskyError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Deterministic two-counter machine. |M| is the number of states.
struct MinskyMachine {
    std::vector<std::string> states;
    std::uint32_t initial = 0;
    std::uint32_t final = 0;
    std::vector<Instruction> delta;

    std::size_t size() const { return states.size(); }
};

/// Problems with m; empty means valid.
std::vector<std::string> validate(const MinskyMachine& m);

/// JSON: {"states": [...], "initial": s, "final": s,
///        "delta": [[src, "inc"|"dec"|"0?", counter, dst], ...]}.
/// Throws MinskyError on malformed or invalid machines.
MinskyMachine parse_machine(std::string_view text);
std::string serialize_machine(const MinskyMachine& m);

struct MachineConfig {
    std::uint32_t state;
    std::uint64_t c1;
    std::uint64_t c2;

    bool operator==(const MachineConfig&) const = default;
    std::uint64_t counter(int k) const { return k == 1 ? c1 : c2; }
};

struct MachineRun {
    enum class Outcome { halted, bound_exceeded, cycle_detected, step_limit };

    std::vector<MachineConfig> trace;  // trace[0] = (initial, 0, 0)
    std::vector<std::size_t> taken;     // index into delta of each step
    Outcome outcome = Outcome::step_limit;
    int counter = 0;        // bound_exceeded only
    std::size_t step = 0;   // steps taken when the run stopped
};

const char* to_string(MachineRun::Outcome o);

/// Deterministic run from (initial, 0, 0). Stops on the final state, a
/// counter above bound, a repeated configuration, or after step_limit
/// steps (default |M| * bound^2).
MachineRun run_bounded(const MinskyMachine& m, std::uint64_t bound,
                       std::optional<std::uint64_t> step_limit = std::nullopt);

bool decide_bounded_halting(const MinskyMachine& m, std::uint64_t bound);

std::string run_to_json(const MinskyMachine& m, const MachineRun& r);

}  // namespace peg
