#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wa/automaton.hpp"
#include "wa/text_format.hpp"

namespace wa {

/// A deterministic weighted automaton whose states are split between the
/// two players. Player O owns the initial state and the end letter; the
/// players alternate, so O-transitions lead to I-states and vice versa.
struct GameArena {
  WeightedAutomaton automaton;
  std::vector<Owner> owner;  // indexed by StateId
  LetterId end;
  std::vector<bool> o_letter;  // indexed by LetterId
  std::vector<bool> i_letter;

  bool owned_by_o(StateId s) const { return owner[s] == Owner::O; }
  /// Every I-letter has a transition from s. Player I may emit any I-letter,
  /// and one without a transition leaves the domain (O loses).
  bool complete(StateId s) const;
  /// The integer payoff driving the Sum tree: the weight (Sum/Avg) or the
  /// reward (Ratio, where value > 0 iff total reward > 0).
  const Rational& payoff(std::size_t transition) const;
  /// Transition t ends the play in an accepting state.
  bool accepting_end(std::size_t transition) const;
};

/// Checks the arena invariants. Owners missing from `owners` are inferred by
/// alternation from the initial state. The end letter is `end_symbol`, else
/// the automaton's declared endsym, else "#".
/// Throws UnsupportedError when the automaton is nondeterministic
/// (realizability is undecidable or open there) and InputError on owner,
/// alternation or domain violations.
GameArena validate_arena(const WeightedAutomaton& a, const std::map<std::string, Owner>& owners,
                         const std::optional<std::string>& end_symbol = std::nullopt);

/// O-attractor of the accepting end moves; rank[s] is the number of letters
/// O needs to force acceptance from s (nullopt outside the attractor).
struct Attractor {
  std::vector<std::optional<std::size_t>> rank;
  /// For O-states in the attractor, the transition reducing the rank.
  std::vector<std::optional<std::size_t>> move;

  bool contains(StateId s) const { return rank[s].has_value(); }
};
Attractor attractor(const GameArena& arena);

/// Finite unfolding of the arena restricted to the attractor. A branch stops
/// at an accepting end move (C1 when the sum is positive, lost otherwise),
/// at a state already on the branch (C2 when the sum strictly increased
/// since that ancestor, lost otherwise), or when it leaves the attractor.
struct StrategyTree {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  enum class Kind { Inner, Win, Back, Lose };
  struct Node {
    StateId state = 0;
    Rational sum;
    std::size_t parent = npos;  // npos for the root
    std::size_t via = npos;     // transition from the parent
    Kind kind = Kind::Inner;
    std::size_t ancestor = npos;  // for Back leaves
    std::vector<std::size_t> children{};
    bool winning = false;
    std::optional<std::size_t> choice{};  // winning child of a winning O-node
  };
  std::vector<Node> nodes;
};

struct SumStrategy {
  StrategyTree tree;
  Attractor attract;
  /// Once the accumulated payoff exceeds this, the attractor strategy is
  /// safe: it reaches acceptance within |Q| letters.
  Rational cash_out;
};

struct DsumStrategy {
  /// Optimal memoryless discounted choice (transition index) per O-state in
  /// the attractor.
  std::vector<std::optional<std::size_t>> policy;
  /// Number of letters played with `policy` before switching to the
  /// attractor strategy.
  std::size_t switch_after = 0;
  Attractor attract;
};

struct RealizabilityResult {
  bool realizable = false;
  /// Value of the discounted game at the initial state (Dsum only, when the
  /// initial state is in the attractor).
  std::optional<Rational> game_value;
  std::optional<SumStrategy> sum_strategy;
  std::optional<DsumStrategy> dsum_strategy;
};

RealizabilityResult solve_realizability(const GameArena& arena);

/// Text form of a winning strategy: "node", "backedge", "attract" lines for
/// Sum/Avg/Ratio; "value", "policy", "switch", "attract" lines for Dsum.
std::string dump_strategy(const GameArena& arena, const RealizabilityResult& result);

/// Plays the emitted strategy against every behaviour of player I. Holds
/// when every play ends with the end letter in an accepting state with
/// value > 0; `detail` explains the first failure.
struct ReplayReport {
  bool ok = true;
  std::string detail;
  std::size_t configurations = 0;
};
ReplayReport replay_strategy(const GameArena& arena, const RealizabilityResult& result);

}  // namespace wa
