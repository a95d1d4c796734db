#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wa/automaton.hpp"
#include "wa/error.hpp"

namespace wa {

/// Evidence that the twinning property fails: after reading `access` the
/// runs sit in states (p, q) with delay `delay_before`; the synchronized loop
/// `loop` on (p, q) moves the delay to `delay_after` != `delay_before`.
/// State names refer to the input automaton.
struct TwinningWitness {
  std::string p;
  std::string q;
  Word access;
  Word loop;
  Rational delay_before;
  Rational delay_after;
};

struct TwinningResult {
  bool holds = true;
  std::optional<TwinningWitness> witness;
};

/// Sum/Avg twinning: every synchronized loop on a reachable pair of the
/// trimmed A x A has difference weight 0. Checked with per-SCC potentials.
/// Requires A functional.
TwinningResult twinning_sum(const WeightedAutomaton& a);

/// Dsum twinning. A loop of length l and local difference D maps a delay d
/// to (d + D) / lambda^l, whose only fixed point is D / (lambda^l - 1), so
/// twinning holds iff every pair on a cycle of the reachable pair graph has a
/// single access delay, consistent along its component. Requires A
/// functional.
TwinningResult twinning_dsum(const WeightedAutomaton& a, std::size_t delay_cap = std::size_t{1} << 16);

TwinningResult check_twinning(const WeightedAutomaton& a);

/// Thrown by determinize when twinning fails (a verdict, not an input error).
class NotDeterminizableError : public Error {
 public:
  NotDeterminizableError(TwinningWitness w, const std::string& msg) : Error(msg), witness_(std::move(w)) {}
  int exit_code() const override { return 1; }
  const TwinningWitness& witness() const { return witness_; }

 private:
  TwinningWitness witness_;
};

struct DeterminizeOptions {
  std::size_t state_cap = std::size_t{1} << 16;
  /// Ending symbol; defaults to the automaton's endsym, else "#".
  std::optional<std::string> end_symbol;
};

/// A deterministic equivalent of A together with the delay function behind
/// every output state (input state name -> delay, sorted by name).
struct Determinization {
  WeightedAutomaton automaton;
  std::vector<std::vector<std::pair<std::string, Rational>>> delays;  // by output StateId
};

/// Subset construction with delays. Checks, in order: measure (Ratio is
/// unsupported), functionality (PreconditionError), twinning
/// (NotDeterminizableError), then dom(A) ⊆ (Sigma \ {#})* # (InputError).
/// ResourceLimitError past `state_cap` subset states.
Determinization determinize(const WeightedAutomaton& a, const DeterminizeOptions& options = {});

/// Unambiguous equivalent of a functional automaton: states (q, P) where P
/// collects the states of the runs greater than the current one in the
/// transition order; only a run with no accepting greater run accepts.
WeightedAutomaton unambiguize(const WeightedAutomaton& a, std::size_t state_cap = std::size_t{1} << 20);

}  // namespace wa
