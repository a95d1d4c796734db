#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wa/measure.hpp"

namespace wa {

using StateId = std::size_t;
using LetterId = std::size_t;
using Word = std::vector<LetterId>;

struct Transition {
  StateId src;
  LetterId letter;
  StateId dst;
  Weight weight;
};

/// Weighted automaton A = (Q, q_I, F, delta, gamma) with a measure tag.
///
/// Immutable once built. States are numbered in lexicographic order of their
/// names and letters in lexicographic order of theirs, so every algorithm
/// that iterates "in order" is reproducible from the textual form alone.
/// Transitions are sorted by (src, letter, dst, weight) and indexed; runs
/// refer to transitions by index.
class WeightedAutomaton {
 public:
  const Measure& measure() const { return measure_; }

  std::size_t num_states() const { return states_.size(); }
  const std::string& state_name(StateId s) const { return states_.at(s); }
  std::optional<StateId> find_state(std::string_view name) const;

  std::size_t num_letters() const { return alphabet_.size(); }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::string& letter_name(LetterId a) const { return alphabet_.at(a); }
  std::optional<LetterId> find_letter(std::string_view name) const;

  StateId initial() const { return initial_; }
  bool is_final(StateId s) const { return final_.at(s); }
  std::vector<StateId> finals() const;

  std::size_t num_transitions() const { return transitions_.size(); }
  std::span<const Transition> transitions() const { return transitions_; }
  const Transition& transition(std::size_t index) const { return transitions_.at(index); }
  /// Indices of the transitions leaving s, in (letter, dst, weight) order.
  std::span<const std::size_t> outgoing(StateId s) const { return outgoing_.at(s); }

  /// Ending symbol used by determinization and games, if declared.
  const std::optional<std::string>& end_symbol() const { return end_symbol_; }

  /// At most one transition per (state, letter).
  bool is_deterministic() const;

  /// Letters joined without separator when every letter is a single
  /// character, otherwise separated by single spaces.
  std::string format_word(const Word& word) const;
  /// Inverse of format_word; unknown letters raise InputError.
  Word parse_word(std::string_view text) const;

 private:
  friend class AutomatonBuilder;
  WeightedAutomaton(Measure m) : measure_(std::move(m)) {}

  Measure measure_;
  std::vector<std::string> states_;
  std::vector<std::string> alphabet_;
  StateId initial_ = 0;
  std::vector<bool> final_;
  std::vector<Transition> transitions_;
  std::vector<std::vector<std::size_t>> outgoing_;
  std::optional<std::string> end_symbol_;
};

/// Name-based construction of automata. Validation happens in build().
class AutomatonBuilder {
 public:
  explicit AutomatonBuilder(Measure measure) : measure_(std::move(measure)) {}

  AutomatonBuilder& add_state(const std::string& name);
  AutomatonBuilder& add_letter(const std::string& name);
  AutomatonBuilder& set_initial(const std::string& name);
  AutomatonBuilder& add_final(const std::string& name);
  AutomatonBuilder& add_transition(const std::string& src, const std::string& letter,
                                   const std::string& dst, Weight weight);
  AutomatonBuilder& set_end_symbol(const std::string& letter);

  /// Throws InputError on: missing initial state, weight kind mismatching the
  /// measure, or an exact duplicate transition (same src, letter, dst and
  /// weight). Parallel transitions with distinct weights are kept.
  WeightedAutomaton build() const;

 private:
  struct PendingTransition {
    std::string src, letter, dst;
    Weight weight;
  };
  Measure measure_;
  std::vector<std::string> states_;
  std::vector<std::string> letters_;
  std::optional<std::string> initial_;
  std::vector<std::string> finals_;
  std::vector<PendingTransition> transitions_;
  std::optional<std::string> end_symbol_;
};

/// Copy of `a` with a different measure tag. Weights are reinterpreted
/// as-is, so the weight kinds must be compatible with `m`.
WeightedAutomaton with_measure(const WeightedAutomaton& a, const Measure& m);

/// Both automata rebuilt over the union of their alphabets so that their
/// LetterIds coincide.
std::pair<WeightedAutomaton, WeightedAutomaton> align_alphabets(const WeightedAutomaton& a,
                                                                const WeightedAutomaton& b);

/// Rebuilds `a` with `extra` letters added to its alphabet.
WeightedAutomaton extend_alphabet(const WeightedAutomaton& a, const std::vector<std::string>& extra);

}  // namespace wa
