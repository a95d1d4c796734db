#pragma once

// Naive reference implementations for tests. Nothing in the decision
// procedures calls into this header.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "wa/automaton.hpp"
#include "wa/games.hpp"

namespace wa::oracle {

constexpr std::size_t kDefaultBudget = 10'000'000;

/// Values of every accepting run, per word, for words of length 1..max_len.
/// One entry per accepting run, so run multiplicities are visible.
struct ValueTable {
  std::map<Word, std::vector<Rational>> values;

  std::optional<Rational> max_value(const Word& w) const;
  std::size_t accepting_runs(const Word& w) const;
};

/// Depth-first enumeration of all runs up to max_len. Throws
/// ResourceLimitError when more than `budget` runs would be visited.
ValueTable enumerate_values(const WeightedAutomaton& a, std::size_t max_len, std::size_t budget = kDefaultBudget);

/// The shortest-first word with two distinct values in the table.
struct BruteVerdict {
  bool functional = true;
  std::optional<Word> word;
};
BruteVerdict bruteforce_functional(const WeightedAutomaton& a, std::size_t max_len,
                                   std::size_t budget = kDefaultBudget);

/// Words of length <= max_len bound used for functionality cross-checks:
/// 4n^2 for Ratio, 3n^2 otherwise.
std::size_t functionality_bound(const WeightedAutomaton& a);

/// Run-pair exploration over (p, q, accumulated difference) configurations
/// for pairs of runs on words of length <= max_len. Equivalent to scanning
/// every word up to max_len, without enumerating words.
///
/// For Dsum the difference is kept as the normalized delay; a delay larger
/// than 2W/(1 - lambda) on a co-accessible pair can never be recovered, so
/// it counts as a refutation (and keeps the state space finite).
struct PairwiseVerdict {
  bool functional = true;
  /// Set when the refutation is a concrete word.
  std::optional<Word> word;
  /// Delays reached on pairs that can still reach a final pair (Sum and
  /// Dsum only).
  std::map<std::pair<StateId, StateId>, std::set<Rational>> delays;
};
PairwiseVerdict pairwise_functional(const WeightedAutomaton& a, std::size_t max_len,
                                    std::size_t budget = kDefaultBudget);

// --- games ---------------------------------------------------------------

/// Horizon at which bounded minimax agrees with the full game for Sum, Avg
/// and Ratio: n * (2nW + 2) + n + 1, with W the largest absolute payoff.
std::size_t minimax_horizon(const GameArena& arena);

/// O can force, within `horizon` letters, an accepting end with total payoff
/// > 0 (payoff = weight, or reward for Ratio).
bool game_minimax(const GameArena& arena, std::size_t horizon);

/// max over O, min over I, of the discounted value at the initial state,
/// enumerating every pair of memoryless strategies on the attractor
/// restriction (0-weight loop once the play is accepted). nullopt when the
/// initial state is outside the attractor.
std::optional<Rational> dsum_memoryless_value(const GameArena& arena);

}  // namespace wa::oracle
