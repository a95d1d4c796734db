#pragma once

#include <optional>

#include "wa/automaton.hpp"
#include "wa/graph.hpp"
#include "wa/semantics.hpp"

namespace wa {

enum class Comparison { Greater, GreaterEqual };

/// L_A(w) ~ threshold with ~ in {>, >=}.
struct ThresholdQuery {
  Rational threshold;
  Comparison comparison = Comparison::Greater;

  bool strict() const { return comparison == Comparison::Greater; }
};

/// Outcome of emptiness and universality: `holds` is true for EMPTY /
/// UNIVERSAL. Otherwise `witness` is a word and an accepting run whose value
/// satisfies (emptiness) or violates (universality) the query.
struct ThresholdResult {
  bool holds = true;
  std::optional<Witness> witness;
};

/// Is there no w with L_A(w) ~ threshold? Dsum supports only '>'.
ThresholdResult emptiness(const WeightedAutomaton& a, const ThresholdQuery& query);

/// Does every w in dom(A) satisfy L_A(w) ~ threshold? Requires A functional
/// (PreconditionError otherwise). Dsum supports only '>='.
ThresholdResult universality(const WeightedAutomaton& a, const ThresholdQuery& query);

/// L_A <= L_B on dom(A) and dom(A) ⊆ dom(B). Requires B functional; Ratio is
/// unsupported. A counterexample carries A's value and, unless the word is
/// outside dom(B), B's run with a strictly smaller value.
struct InclusionResult {
  bool holds = true;
  std::optional<Witness> witness;
};
InclusionResult inclusion(const WeightedAutomaton& a, const WeightedAutomaton& b,
                          std::size_t subset_cap = kDefaultSubsetCap);

/// dom(A) = dom(B) and A ∪ B functional. Requires both inputs functional.
/// A counterexample word is in exactly one domain, or both automata accept
/// it with distinct values (run_a in A, run_b in B).
struct EquivalenceResult {
  bool holds = true;
  std::optional<Witness> witness;
  /// Set when the word is accepted by only one of the two automata.
  bool domain_mismatch = false;
  bool only_in_a = false;
};
EquivalenceResult equivalence(const WeightedAutomaton& a, const WeightedAutomaton& b,
                              std::size_t subset_cap = kDefaultSubsetCap);

/// Union with a fresh initial state copying both initial states' outgoing
/// transitions; A's states are prefixed "a.", B's "b.". Same measure and
/// alphabet required.
WeightedAutomaton disjoint_union(const WeightedAutomaton& a, const WeightedAutomaton& b);

}  // namespace wa
