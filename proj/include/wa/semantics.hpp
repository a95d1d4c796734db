#pragma once

#include <optional>
#include <vector>

#include "wa/automaton.hpp"

namespace wa {

/// A run of an automaton, as the list of transition indices it takes from
/// the initial state. Runs are never empty.
struct Run {
  std::vector<std::size_t> transitions;

  friend bool operator==(const Run&, const Run&) = default;
};

/// Throws InputError unless `run` is a nonempty path from the initial state.
void validate_run(const WeightedAutomaton& a, const Run& run);

Word run_word(const WeightedAutomaton& a, const Run& run);
StateId run_target(const WeightedAutomaton& a, const Run& run);
bool is_accepting(const WeightedAutomaton& a, const Run& run);

/// Measure value of the run's weight sequence, accepting or not.
Rational path_value(const WeightedAutomaton& a, std::span<const std::size_t> transitions);

/// Value of an accepting run; nullopt when the run ends outside F.
std::optional<Rational> evaluate_run(const WeightedAutomaton& a, const Run& run);

/// L_A(w): maximum value over all accepting runs on `word`, nullopt when
/// there is none. The empty word is rejected.
std::optional<Rational> evaluate_word(const WeightedAutomaton& a, const Word& word);

/// A witness: a word with one or two accepting runs and their values.
/// Functionality witnesses carry two runs of the same automaton with
/// distinct values; inclusion witnesses carry a run of A and (unless the
/// word is outside dom(B)) a run of B with a smaller value.
struct Witness {
  Word word;
  Run run_a;
  std::optional<Run> run_b;
  Rational value_a;
  std::optional<Rational> value_b;
};

}  // namespace wa
