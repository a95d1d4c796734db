#include "wa/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <tuple>

#include "wa/error.hpp"

namespace wa::oracle {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

bool shorter_first(const Word& x, const Word& y) { return x.size() != y.size() ? x.size() < y.size() : x < y; }

}  // namespace

std::optional<Rational> ValueTable::max_value(const Word& w) const {
  auto it = values.find(w);
  if (it == values.end() || it->second.empty()) return std::nullopt;
  return *std::max_element(it->second.begin(), it->second.end());
}

std::size_t ValueTable::accepting_runs(const Word& w) const {
  auto it = values.find(w);
  return it == values.end() ? 0 : it->second.size();
}

ValueTable enumerate_values(const WeightedAutomaton& a, std::size_t max_len, std::size_t budget) {
  ValueTable table;
  std::size_t visited = 0;
  Word word;
  std::vector<Weight> weights;
  std::function<void(StateId)> dfs = [&](StateId s) {
    for (std::size_t idx : a.outgoing(s)) {
      if (++visited > budget) throw ResourceLimitError("oracle enumeration budget exceeded");
      const Transition& t = a.transition(idx);
      word.push_back(t.letter);
      weights.push_back(t.weight);
      if (a.is_final(t.dst)) table.values[word].push_back(measure_value(a.measure(), weights));
      if (word.size() < max_len) dfs(t.dst);
      word.pop_back();
      weights.pop_back();
    }
  };
  if (max_len >= 1) dfs(a.initial());
  return table;
}

BruteVerdict bruteforce_functional(const WeightedAutomaton& a, std::size_t max_len, std::size_t budget) {
  const ValueTable table = enumerate_values(a, max_len, budget);
  BruteVerdict v;
  for (const auto& [w, vals] : table.values) {
    const bool distinct = std::any_of(vals.begin(), vals.end(), [&](const Rational& x) { return x != vals[0]; });
    if (distinct && (!v.word || shorter_first(w, *v.word))) {
      v.functional = false;
      v.word = w;
    }
  }
  return v;
}

std::size_t functionality_bound(const WeightedAutomaton& a) {
  const std::size_t n = a.num_states();
  return (a.measure().is_ratio() ? 4 : 3) * n * n;
}

PairwiseVerdict pairwise_functional(const WeightedAutomaton& a, std::size_t max_len, std::size_t budget) {
  const std::size_t n = a.num_states();
  // Pairs that can reach (final, final) on a common word, by plain fixpoint.
  std::vector<std::vector<bool>> live(n, std::vector<bool>(n, false));
  for (StateId p = 0; p < n; ++p) {
    for (StateId q = 0; q < n; ++q) live[p][q] = a.is_final(p) && a.is_final(q);
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& t1 : a.transitions()) {
      for (const auto& t2 : a.transitions()) {
        if (t1.letter == t2.letter && live[t1.dst][t2.dst] && !live[t1.src][t2.src]) {
          live[t1.src][t2.src] = true;
          changed = true;
        }
      }
    }
  }

  PairwiseVerdict verdict;
  const Measure& m = a.measure();
  if (!live[a.initial()][a.initial()]) return verdict;
  const bool dsum = m.kind() == MeasureKind::Dsum;
  Rational bound;
  if (dsum) {
    Rational w_max;
    for (const auto& t : a.transitions()) w_max = std::max(w_max, t.weight.value().abs());
    bound = Rational(2) * w_max / (Rational(1) - m.lambda());
  }

  // Configuration: pair plus either one difference (Sum/Avg/Dsum) or four
  // accumulators (Ratio).
  using Key = std::tuple<StateId, StateId, Rational, Rational, Rational, Rational>;
  struct Node {
    Key key;
    std::size_t parent;
    LetterId letter;
  };
  std::vector<Node> nodes{{Key{a.initial(), a.initial(), 0, 0, 0, 0}, npos, 0}};
  std::set<Key> seen{nodes[0].key};
  auto word_of = [&](std::size_t i) {
    Word w;
    for (; nodes[i].parent != npos; i = nodes[i].parent) w.push_back(nodes[i].letter);
    std::reverse(w.begin(), w.end());
    return w;
  };
  verdict.delays[{a.initial(), a.initial()}].insert(Rational(0));

  std::size_t layer_end = 1, length = 0;
  for (std::size_t head = 0; head < nodes.size() && length < max_len; ++head) {
    if (head == layer_end) {
      ++length;
      layer_end = nodes.size();
      if (length >= max_len) break;
    }
    const auto [p, q, x1, x2, x3, x4] = nodes[head].key;
    for (std::size_t i1 : a.outgoing(p)) {
      for (std::size_t i2 : a.outgoing(q)) {
        const Transition& t1 = a.transition(i1);
        const Transition& t2 = a.transition(i2);
        if (t1.letter != t2.letter || !live[t1.dst][t2.dst]) continue;
        Key next;
        bool differ;
        if (m.is_ratio()) {
          const Rational r1 = x1 + t1.weight.reward(), c1 = x2 + t1.weight.cost();
          const Rational r2 = x3 + t2.weight.reward(), c2 = x4 + t2.weight.cost();
          next = Key{t1.dst, t2.dst, r1, c1, r2, c2};
          differ = r1 * c2 != r2 * c1;
        } else {
          Rational d = x1 + t1.weight.value() - t2.weight.value();
          if (dsum) d /= m.lambda();
          differ = d != 0;
          verdict.delays[{t1.dst, t2.dst}].insert(d);
          if (dsum && d.abs() > bound) {
            verdict.functional = false;
            return verdict;
          }
          next = Key{t1.dst, t2.dst, d, 0, 0, 0};
        }
        if (!seen.insert(next).second) continue;
        if (seen.size() > budget) throw ResourceLimitError("oracle pair exploration budget exceeded");
        nodes.push_back({next, head, t1.letter});
        if (differ && a.is_final(t1.dst) && a.is_final(t2.dst)) {
          verdict.functional = false;
          verdict.word = word_of(nodes.size() - 1);
          return verdict;
        }
      }
    }
  }
  return verdict;
}

// --- games -----------------------------------------------------------------

namespace {

Rational payoff_of(const GameArena& g, const Transition& t) {
  return g.automaton.measure().is_ratio() ? t.weight.reward() : t.weight.value();
}

bool ends_accepting(const GameArena& g, const Transition& t) {
  return t.letter == g.end && g.automaton.is_final(t.dst);
}

bool has_every_i_letter(const GameArena& g, StateId s) {
  std::vector<bool> present(g.automaton.num_letters(), false);
  for (std::size_t idx : g.automaton.outgoing(s)) present[g.automaton.transition(idx).letter] = true;
  for (LetterId l = 0; l < g.automaton.num_letters(); ++l) {
    if (g.i_letter[l] && !present[l]) return false;
  }
  return true;
}

}  // namespace

std::size_t minimax_horizon(const GameArena& arena) {
  const std::size_t n = arena.automaton.num_states();
  Rational w;
  for (const auto& t : arena.automaton.transitions()) w = std::max(w, payoff_of(arena, t).abs());
  // Payoffs are integers in arenas; round up defensively.
  const Integer wi = floor_div(w, Rational(1)) + (w.is_integer() ? 0 : 1);
  return n * (2 * n * wi.get_ui() + 2) + n + 1;
}

bool game_minimax(const GameArena& arena, std::size_t horizon) {
  const WeightedAutomaton& a = arena.automaton;
  // need[s]: O wins from s with accumulated payoff x iff x > need[s]
  // (nullopt: never within the remaining letters).
  std::vector<std::optional<Rational>> need(a.num_states());
  for (std::size_t k = 1; k <= horizon; ++k) {
    std::vector<std::optional<Rational>> next(a.num_states());
    for (StateId s = 0; s < a.num_states(); ++s) {
      if (arena.owner[s] == Owner::O) {
        for (std::size_t idx : a.outgoing(s)) {
          const Transition& t = a.transition(idx);
          std::optional<Rational> cand;
          if (ends_accepting(arena, t)) {
            cand = -payoff_of(arena, t);
          } else if (t.letter != arena.end && need[t.dst]) {
            cand = *need[t.dst] - payoff_of(arena, t);
          }
          if (cand && (!next[s] || *cand < *next[s])) next[s] = cand;
        }
      } else {
        if (!has_every_i_letter(arena, s) || a.outgoing(s).empty()) continue;
        bool all = true;
        Rational worst;
        bool first = true;
        for (std::size_t idx : a.outgoing(s)) {
          const Transition& t = a.transition(idx);
          if (!need[t.dst]) {
            all = false;
            break;
          }
          Rational cand = *need[t.dst] - payoff_of(arena, t);
          if (first || cand > worst) worst = cand;
          first = false;
        }
        if (all) next[s] = worst;
      }
    }
    need = std::move(next);
  }
  const auto& root = need[a.initial()];
  return root && Rational(0) > *root;
}

std::optional<Rational> dsum_memoryless_value(const GameArena& arena) {
  const WeightedAutomaton& a = arena.automaton;
  const std::size_t n = a.num_states();
  std::vector<bool> in(n, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (StateId s = 0; s < n; ++s) {
      if (in[s]) continue;
      bool join = false;
      if (arena.owner[s] == Owner::O) {
        for (std::size_t idx : a.outgoing(s)) {
          const Transition& t = a.transition(idx);
          join = join || ends_accepting(arena, t) || (t.letter != arena.end && in[t.dst]);
        }
      } else {
        join = has_every_i_letter(arena, s) && !a.outgoing(s).empty();
        for (std::size_t idx : a.outgoing(s)) join = join && in[a.transition(idx).dst];
      }
      if (join) {
        in[s] = true;
        changed = true;
      }
    }
  }
  if (!in[a.initial()]) return std::nullopt;

  std::vector<std::vector<std::size_t>> options(n);
  std::vector<StateId> o_states, i_states;
  for (StateId s = 0; s < n; ++s) {
    if (!in[s]) continue;
    for (std::size_t idx : a.outgoing(s)) {
      const Transition& t = a.transition(idx);
      if (arena.owner[s] == Owner::I || ends_accepting(arena, t) || (t.letter != arena.end && in[t.dst])) {
        options[s].push_back(idx);
      }
    }
    (arena.owner[s] == Owner::O ? o_states : i_states).push_back(s);
  }

  const Rational lambda = a.measure().lambda();
  std::vector<std::size_t> pick(n, 0);
  auto play_value = [&]() {
    std::vector<std::size_t> first_seen(n, npos);
    std::vector<Rational> weights;
    StateId s = a.initial();
    while (true) {
      if (first_seen[s] != npos) {
        const std::size_t j = first_seen[s];
        Rational stem, cycle, f(1);
        for (std::size_t i = 0; i < weights.size(); ++i) {
          (i < j ? stem : cycle) += f * weights[i];
          f *= lambda;
        }
        return stem + cycle / (Rational(1) - lambda.pow(static_cast<unsigned>(weights.size() - j)));
      }
      first_seen[s] = weights.size();
      const Transition& t = a.transition(options[s][pick[s]]);
      weights.push_back(t.weight.value());
      if (ends_accepting(arena, t)) {
        Rational v, f(1);
        for (const auto& w : weights) {
          v += f * w;
          f *= lambda;
        }
        return v;
      }
      s = t.dst;
    }
  };
  // Odometer over the choices of one player's states.
  auto advance = [&](const std::vector<StateId>& states) {
    for (StateId s : states) {
      if (++pick[s] < options[s].size()) return true;
      pick[s] = 0;
    }
    return false;
  };

  std::optional<Rational> best;
  do {
    std::optional<Rational> worst;
    for (StateId s : i_states) pick[s] = 0;
    do {
      Rational v = play_value();
      if (!worst || v < *worst) worst = v;
    } while (advance(i_states));
    if (!best || *worst > *best) best = worst;
  } while (advance(o_states));
  return best;
}

}  // namespace wa::oracle
