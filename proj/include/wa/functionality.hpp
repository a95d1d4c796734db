#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <utility>

#include "wa/automaton.hpp"
#include "wa/semantics.hpp"

namespace wa {

struct FunctionalityResult {
  bool functional = true;
  /// Two accepting runs on one word with distinct values.
  std::optional<Witness> witness;
  /// Every delay observed per (p, q) pair during the exploration, for the
  /// delay-based procedures (Sum/Avg/Dsum). Empty for Ratio.
  std::map<std::pair<StateId, StateId>, std::set<Rational>> observed_delays;
};

constexpr std::size_t kDefaultRatioConfigCap = std::size_t{1} << 21;

/// Sum-delay propagation over the co-accessible pairs of A x A.
/// Avg is decided exactly as Sum.
FunctionalityResult functional_sum_avg(const WeightedAutomaton& a);

/// Depth-first Dsum-delay propagation, d' = (d + g1 - g2) / lambda.
FunctionalityResult functional_dsum(const WeightedAutomaton& a);

/// Ratio functionality. Decided on the span of moment vectors
/// (1, R1, C1, R2, C2, R1*C2, R2*C1) of run pairs; a refutation is then
/// shortened by a breadth-first search over (p, q, R1, C1, R2, C2)
/// configurations, giving the shortest witness unless more than `cap`
/// configurations are needed.
FunctionalityResult functional_ratio(const WeightedAutomaton& a, std::size_t cap = kDefaultRatioConfigCap);

/// Dispatch on the measure.
FunctionalityResult check_functional(const WeightedAutomaton& a, std::size_t ratio_cap = kDefaultRatioConfigCap);

/// Throws PreconditionError carrying the witness unless `a` is functional.
/// `role` names the argument in the message ("A", "B", ...).
void require_functional(const WeightedAutomaton& a, const std::string& role);

}  // namespace wa
