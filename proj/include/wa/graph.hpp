#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wa/automaton.hpp"

namespace wa {

/// States reachable from the initial state.
std::vector<bool> accessible(const WeightedAutomaton& a);
/// States from which some final state is reachable (finals included).
std::vector<bool> coaccessible(const WeightedAutomaton& a);

struct TrimResult {
  WeightedAutomaton automaton;
  /// No final state is both accessible and co-accessible.
  bool empty_language = false;
  /// origin[i] is the index in the input of the trimmed automaton's
  /// transition i.
  std::vector<std::size_t> transition_origin;
};

/// Keeps accessible and co-accessible states. The initial state is always
/// kept, even when it is not co-accessible.
TrimResult trim(const WeightedAutomaton& a);

/// Synchronized product of two automata over the same alphabet. Pair
/// (p, q) has id p * b_states + q.
struct PairProduct {
  struct Edge {
    std::size_t src;
    std::size_t dst;
    LetterId letter;
    std::size_t trans_a;
    std::size_t trans_b;
  };

  std::size_t a_states = 0;
  std::size_t b_states = 0;
  std::size_t initial = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> final_pair;
  /// Reachable from the initial pair.
  std::vector<bool> reachable;
  /// Can reach a pair of final states by a common word.
  std::vector<bool> coaccessible;

  std::size_t num_pairs() const { return a_states * b_states; }
  std::size_t pair_id(StateId p, StateId q) const { return p * b_states + q; }
  StateId first(std::size_t pair) const { return pair / b_states; }
  StateId second(std::size_t pair) const { return pair % b_states; }

  /// Shortest edge path from `from` to a final pair (letter-order tie-break);
  /// nullopt when the pair is not co-accessible. Empty when `from` is final.
  std::optional<std::vector<std::size_t>> path_to_final(std::size_t from) const;
  /// Shortest edge path from `from` to `to` using edges accepted by `allowed`.
  std::optional<std::vector<std::size_t>> path_between(std::size_t from, std::size_t to,
                                                       const std::vector<bool>& allowed_pairs) const;

 private:
  friend PairProduct product(const WeightedAutomaton&, const WeightedAutomaton&);
  std::vector<std::size_t> next_to_final;  // edge index, or npos
};

/// Requires equal measures and identical alphabets (see align_alphabets).
PairProduct product(const WeightedAutomaton& a, const WeightedAutomaton& b);

struct DomainCheck {
  bool holds = true;
  /// Shortest counterexample, ties broken lexicographically by letter order.
  std::optional<Word> counterexample;
};

constexpr std::size_t kDefaultSubsetCap = std::size_t{1} << 16;

/// dom(A) ⊆ dom(B) by on-the-fly subset construction of B. Alphabets must be
/// aligned. Throws ResourceLimitError when more than `subset_cap` subsets of
/// B are generated.
DomainCheck domain_included(const WeightedAutomaton& a, const WeightedAutomaton& b,
                            std::size_t subset_cap = kDefaultSubsetCap);
DomainCheck domain_equal(const WeightedAutomaton& a, const WeightedAutomaton& b,
                         std::size_t subset_cap = kDefaultSubsetCap);

/// Automaton over the alphabet of `a` accepting exactly (Sigma \ {end})* end,
/// with zero weights; used for the ending-symbol convention.
WeightedAutomaton end_marked_language(const WeightedAutomaton& a, LetterId end);

/// Strongly connected components (Tarjan). comp[v] numbers components in
/// reverse topological order of the condensation.
struct Components {
  std::vector<std::size_t> comp;
  std::size_t count = 0;
};
Components strongly_connected(std::size_t n, const std::vector<std::vector<std::size_t>>& succ);

}  // namespace wa
