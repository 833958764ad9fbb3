#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "peg/fgh.hpp"
#include "peg/game.hpp"
#include "peg/minsky.hpp"
#include "peg/strategy.hpp"

namespace peg {

/// Letter opening every generated game: from the initial state it enters
/// the gadgets (each with its entry weight); anywhere else it is a losing
/// move.
inline constexpr std::string_view start_letter = "start";
inline constexpr std::string_view restart_letter = "#";

/// Name of the letter simulating transition t, e.g. "qI-inc1->q1",
/// "q1-dec1->qF", "q1-zero1->qF".
std::string letter_name(const MinskyMachine& m, const Instruction& t);

/// Letters that may legally follow sigma1 ("#" or a transition letter) in
/// an honest simulation.
std::vector<std::string> allowed_successors(const MinskyMachine& m, std::string_view sigma1);

// Standalone gadgets over the alphabet start, #, delta. Each has an
// initial state entering the gadget on the start letter with the gadget's
// entry weight, a shared good sink "top" and the losing sink "bot".
Game gen_gadget1(const MinskyMachine& m);
Game gen_gadget2(const MinskyMachine& m, std::string_view sigma1);
Game gen_gadget3(const MinskyMachine& m);
Game gen_gadget4(const MinskyMachine& m, int counter);
Game gen_gadget5(const MinskyMachine& m, int counter);

/// Blind game G_M: all gadgets behind one start letter.
Game gen_G_M(const MinskyMachine& m);

/// Blind pumping game I_m with exactly m+5 states: q0, chi, alpha0..alpham,
/// top, f. Alphabet: start, N0, N2, N1_1..N1_m.
Game gen_pump(std::size_t m);

/// Two pumping copies with m = |M|, the states s0 and s1, and the G_M
/// gadgets; everything not drawn goes to "bot".
Game gen_full(const MinskyMachine& m);

/// Letters of the |M|-bounded halting run. Throws MinskyError when there
/// is none.
std::vector<std::string> halting_word(const MinskyMachine& m);

/// start (# rho)^omega for G_M or any standalone gadget.
WordStrategy honest_gm_strategy(const Game& g, const MinskyMachine& m);
/// start followed by the given letters (and nothing after).
WordStrategy word_strategy(const Game& g, const std::vector<std::string>& letters);
/// start, then the given rules, then N0 forever, for gen_pump(m).
WordStrategy pump_strategy(const Game& g, const std::vector<Rule>& rules);
/// start, then the canonical proper schedule computing F_omega(m), then N0
/// forever.
WordStrategy honest_pump_strategy(const Game& g, std::size_t m);
/// Honest word for gen_full(M): start, the proper schedule of the first
/// copy, N0, the proper schedule of the second copy from
/// ((m'+1, m', ..., m'); m'+m) with m' = F_omega(m), N0, then (# rho)^omega.
/// Letters are produced lazily; the second schedule is only set up when
/// the first one ends.
WordStrategy honest_full_strategy(const Game& g, const MinskyMachine& m);

}  // namespace peg
