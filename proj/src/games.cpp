#include "wa/games.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "wa/error.hpp"
#include "wa/graph.hpp"
#include "wa/paths.hpp"

namespace wa {

namespace {

constexpr std::size_t npos = StrategyTree::npos;

}  // namespace

bool GameArena::complete(StateId s) const {
  std::vector<bool> present(automaton.num_letters(), false);
  for (std::size_t idx : automaton.outgoing(s)) present[automaton.transition(idx).letter] = true;
  for (LetterId l = 0; l < automaton.num_letters(); ++l) {
    if (i_letter[l] && !present[l]) return false;
  }
  return !automaton.outgoing(s).empty();
}

const Rational& GameArena::payoff(std::size_t transition) const {
  const Weight& w = automaton.transition(transition).weight;
  return w.is_pair() ? w.reward() : w.value();
}

bool GameArena::accepting_end(std::size_t transition) const {
  const Transition& t = automaton.transition(transition);
  return t.letter == end && automaton.is_final(t.dst);
}

GameArena validate_arena(const WeightedAutomaton& a, const std::map<std::string, Owner>& owners,
                         const std::optional<std::string>& end_symbol) {
  const std::string end_name = end_symbol ? *end_symbol : a.end_symbol().value_or("#");
  const auto end = a.find_letter(end_name);
  if (!end) throw InputError("end letter '" + end_name + "' is not in the arena's alphabet");
  if (!a.is_deterministic()) {
    const bool dsum = a.measure().kind() == MeasureKind::Dsum;
    throw UnsupportedError(std::string(a.measure().name()) + " realizability on a nondeterministic arena (" +
                           (dsum ? "open problem" : "undecidable") + ")");
  }

  const std::size_t n = a.num_states();
  std::vector<std::optional<Owner>> owner(n);
  for (const auto& [name, o] : owners) {
    const auto s = a.find_state(name);
    if (!s) throw InputError("owner declared for unknown state '" + name + "'");
    owner[*s] = o;
  }
  if (owner[a.initial()] == Owner::I) throw InputError("the initial state must be owned by O");
  owner[a.initial()] = Owner::O;
  auto other = [](Owner o) { return o == Owner::O ? Owner::I : Owner::O; };
  // Alternation fixes the owner of every state connected to a known one.
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& t : a.transitions()) {
      if (owner[t.src] && !owner[t.dst]) {
        owner[t.dst] = other(*owner[t.src]);
        changed = true;
      } else if (owner[t.dst] && !owner[t.src]) {
        owner[t.src] = other(*owner[t.dst]);
        changed = true;
      }
    }
  }

  GameArena g{a, std::vector<Owner>(n, Owner::O), *end, std::vector<bool>(a.num_letters(), false),
              std::vector<bool>(a.num_letters(), false)};
  for (StateId s = 0; s < n; ++s) g.owner[s] = owner[s].value_or(Owner::O);
  g.o_letter[*end] = true;
  for (const auto& t : a.transitions()) {
    const std::string where = a.state_name(t.src) + " " + a.letter_name(t.letter) + " " + a.state_name(t.dst);
    if (g.owner[t.src] == g.owner[t.dst]) {
      throw InputError("transition " + where + " does not alternate between the players");
    }
    (g.owner[t.src] == Owner::O ? g.o_letter : g.i_letter)[t.letter] = true;
  }
  for (LetterId l = 0; l < a.num_letters(); ++l) {
    if (g.o_letter[l] && g.i_letter[l]) {
      throw InputError("letter '" + a.letter_name(l) + "' is used by both players" +
                       (l == *end ? " (the end letter belongs to O)" : ""));
    }
  }
  const DomainCheck dom = domain_included(a, end_marked_language(a, *end));
  if (!dom.holds) {
    throw InputError("accepted word " + a.format_word(*dom.counterexample) + " is not of the form (Sigma \\ " +
                     end_name + ")* " + end_name);
  }
  return g;
}

Attractor attractor(const GameArena& arena) {
  const WeightedAutomaton& a = arena.automaton;
  const std::size_t n = a.num_states();
  Attractor attr{std::vector<std::optional<std::size_t>>(n), std::vector<std::optional<std::size_t>>(n)};
  for (std::size_t k = 1;; ++k) {
    std::vector<std::pair<StateId, std::optional<std::size_t>>> layer;
    for (StateId s = 0; s < n; ++s) {
      if (attr.rank[s]) continue;
      if (arena.owned_by_o(s)) {
        for (std::size_t idx : a.outgoing(s)) {
          const Transition& t = a.transition(idx);
          const bool direct = k == 1 && arena.accepting_end(idx);
          const bool via = t.letter != arena.end && attr.rank[t.dst] && *attr.rank[t.dst] + 1 == k;
          if (direct || via) {
            layer.push_back({s, idx});
            break;
          }
        }
      } else if (arena.complete(s)) {
        bool all = true;
        std::size_t worst = 0;
        for (std::size_t idx : a.outgoing(s)) {
          const auto& r = attr.rank[a.transition(idx).dst];
          all = all && r.has_value();
          if (r) worst = std::max(worst, *r);
        }
        if (all && worst + 1 == k) layer.push_back({s, std::nullopt});
      }
    }
    if (layer.empty()) break;
    for (const auto& [s, move] : layer) {
      attr.rank[s] = k;
      attr.move[s] = move;
    }
  }
  return attr;
}

namespace {

StrategyTree build_tree(const GameArena& arena, const Attractor& attr) {
  const WeightedAutomaton& a = arena.automaton;
  StrategyTree tree;
  tree.nodes.push_back({.state = a.initial(), .sum = Rational(0)});
  std::function<void(std::size_t)> expand = [&](std::size_t id) {
    const StateId s = tree.nodes[id].state;
    for (std::size_t idx : a.outgoing(s)) {
      const Transition& t = a.transition(idx);
      StrategyTree::Node child{.state = t.dst, .sum = tree.nodes[id].sum + arena.payoff(idx), .parent = id, .via = idx};
      child.ancestor = npos;
      if (t.letter == arena.end) {
        child.kind = arena.accepting_end(idx) && child.sum > 0 ? StrategyTree::Kind::Win : StrategyTree::Kind::Lose;
      } else if (!attr.contains(t.dst)) {
        child.kind = StrategyTree::Kind::Lose;
      } else {
        for (std::size_t up = id; up != npos; up = tree.nodes[up].parent) {
          if (tree.nodes[up].state == t.dst) {
            child.ancestor = up;
            break;
          }
        }
        if (child.ancestor != npos) {
          child.kind =
              child.sum > tree.nodes[child.ancestor].sum ? StrategyTree::Kind::Back : StrategyTree::Kind::Lose;
        }
      }
      child.winning = child.kind == StrategyTree::Kind::Win || child.kind == StrategyTree::Kind::Back;
      const std::size_t cid = tree.nodes.size();
      tree.nodes.push_back(std::move(child));
      tree.nodes[id].children.push_back(cid);
      if (tree.nodes[cid].kind == StrategyTree::Kind::Inner) expand(cid);
    }
    // Backward induction, children first.
    auto& node = tree.nodes[id];
    if (arena.owned_by_o(s)) {
      for (std::size_t c : node.children) {
        if (tree.nodes[c].winning) {
          node.winning = true;
          node.choice = c;
          break;
        }
      }
    } else {
      node.winning = arena.complete(s);
      for (std::size_t c : node.children) node.winning = node.winning && tree.nodes[c].winning;
    }
  };
  expand(0);
  return tree;
}

}  // namespace

RealizabilityResult solve_realizability(const GameArena& arena) {
  const WeightedAutomaton& a = arena.automaton;
  RealizabilityResult result;
  Attractor attr = attractor(arena);
  if (!attr.contains(a.initial())) return result;

  if (a.measure().kind() != MeasureKind::Dsum) {
    StrategyTree tree = build_tree(arena, attr);
    result.realizable = tree.nodes[0].winning;
    if (result.realizable) {
      Rational loss;
      for (std::size_t i = 0; i < a.num_transitions(); ++i) loss = std::max(loss, -arena.payoff(i));
      result.sum_strategy = SumStrategy{std::move(tree), std::move(attr), Rational(a.num_states()) * loss};
    }
    return result;
  }

  // Dsum: discounted game on the attractor, accepted plays idle in a sink.
  const std::size_t n = a.num_states();
  const std::size_t sink = n;
  DiscountedGame game;
  game.num_vertices = n + 1;
  game.lambda = a.measure().lambda();
  game.max_owned.assign(n + 1, true);
  std::vector<std::size_t> origin;
  for (StateId s = 0; s < n; ++s) {
    game.max_owned[s] = arena.owned_by_o(s);
    if (!attr.contains(s)) {
      game.edges.push_back({s, s, Rational(0)});
      origin.push_back(npos);
      continue;
    }
    for (std::size_t idx : a.outgoing(s)) {
      const Transition& t = a.transition(idx);
      if (arena.accepting_end(idx)) {
        game.edges.push_back({s, sink, t.weight.value()});
      } else if (t.letter != arena.end && attr.contains(t.dst)) {
        game.edges.push_back({s, t.dst, t.weight.value()});
      } else {
        continue;
      }
      origin.push_back(idx);
    }
  }
  game.edges.push_back({sink, sink, Rational(0)});
  origin.push_back(npos);
  const DiscountedSolution sol = solve_discounted(game);
  const Rational& v = sol.values[a.initial()];
  result.game_value = v;
  if (v <= 0) return result;
  result.realizable = true;

  DsumStrategy strat;
  strat.policy.assign(n, std::nullopt);
  for (StateId s = 0; s < n; ++s) {
    if (attr.contains(s) && arena.owned_by_o(s)) strat.policy[s] = origin[sol.choice[s]];
  }
  // After i policy letters the prefix is within lambda^i W/(1-lambda) of v,
  // and the attractor costs at most lambda^i W (1-lambda^n)/(1-lambda) more.
  Rational w;
  for (const auto& t : a.transitions()) w = std::max(w, t.weight.value().abs());
  const Rational& lambda = game.lambda;
  const Rational slack = w * (Rational(2) - lambda.pow(static_cast<unsigned>(n))) / (Rational(1) - lambda);
  Rational factor(1);
  while (factor * slack >= v) {
    factor *= lambda;
    ++strat.switch_after;
  }
  strat.attract = std::move(attr);
  result.dsum_strategy = std::move(strat);
  return result;
}

std::string dump_strategy(const GameArena& arena, const RealizabilityResult& result) {
  const WeightedAutomaton& a = arena.automaton;
  std::ostringstream out;
  const Attractor* attr = nullptr;
  if (result.sum_strategy) {
    const SumStrategy& s = *result.sum_strategy;
    attr = &s.attract;
    std::vector<std::size_t> stack{0};
    std::vector<std::pair<std::size_t, std::size_t>> back;
    std::vector<std::size_t> order;
    while (!stack.empty()) {
      const std::size_t id = stack.back();
      stack.pop_back();
      const auto& node = s.tree.nodes[id];
      if (node.kind == StrategyTree::Kind::Back) {
        back.push_back({id, node.ancestor});
        continue;
      }
      if (node.kind != StrategyTree::Kind::Inner) continue;
      order.push_back(id);
      if (node.choice) {
        stack.push_back(*node.choice);
      } else {
        for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) stack.push_back(*it);
      }
    }
    std::sort(order.begin(), order.end());
    std::sort(back.begin(), back.end());
    for (std::size_t id : order) {
      const auto& node = s.tree.nodes[id];
      out << "node " << id << " state " << a.state_name(node.state) << " sum " << node.sum.str();
      if (node.choice) out << " choose " << a.letter_name(a.transition(s.tree.nodes[*node.choice].via).letter);
      out << "\n";
    }
    for (const auto& [leaf, anc] : back) out << "backedge " << leaf << " " << anc << "\n";
    out << "cashout " << s.cash_out.str() << "\n";
  } else if (result.dsum_strategy) {
    const DsumStrategy& d = *result.dsum_strategy;
    attr = &d.attract;
    out << "value " << result.game_value->str() << "\n";
    for (StateId st = 0; st < a.num_states(); ++st) {
      if (d.policy[st]) out << "policy " << a.state_name(st) << " " << a.letter_name(a.transition(*d.policy[st]).letter) << "\n";
    }
    out << "switch " << d.switch_after << "\n";
  }
  if (attr) {
    for (StateId st = 0; st < a.num_states(); ++st) {
      if (attr->move[st]) {
        out << "attract " << a.state_name(st) << " " << a.letter_name(a.transition(*attr->move[st]).letter) << "\n";
      }
    }
  }
  return out.str();
}

namespace {

constexpr std::size_t kReplayCap = 2'000'000;

/// Sum/Avg/Ratio: every measure is positive exactly when the payoff sum is
/// (Avg divides by a positive length, Ratio by a positive cost).
ReplayReport replay_sum(const GameArena& arena, const SumStrategy& s) {
  const WeightedAutomaton& a = arena.automaton;
  ReplayReport report;
  using Config = std::tuple<StateId, std::size_t, Rational, bool>;
  std::set<Config> done, active;
  auto fail = [&](const std::string& why) {
    if (report.ok) {
      report.ok = false;
      report.detail = why;
    }
    return false;
  };
  // Returns true when every continuation from the configuration wins.
  std::function<bool(StateId, std::size_t, Rational, bool)> play = [&](StateId st, std::size_t node, Rational sum,
                                                                      bool attracting) -> bool {
    if (!attracting && sum > s.cash_out && s.attract.contains(st)) attracting = true;
    Config key{st, attracting ? npos : node, sum, attracting};
    if (done.count(key)) return true;
    if (active.count(key)) return fail("play revisits state " + a.state_name(st) + " with the same memory");
    if (++report.configurations > kReplayCap) return fail("replay exceeded its configuration cap");
    active.insert(key);

    auto step = [&](std::size_t idx) -> bool {
      const Transition& t = a.transition(idx);
      const Rational next_sum = sum + arena.payoff(idx);
      if (t.letter == arena.end) {
        if (!arena.accepting_end(idx)) return fail("end letter played into a rejecting state");
        if (next_sum <= 0) return fail("play accepted with payoff " + next_sum.str());
        return true;
      }
      if (attracting) return play(t.dst, npos, next_sum, true);
      std::size_t child = npos;
      for (std::size_t c : s.tree.nodes[node].children) {
        if (s.tree.nodes[c].via == idx) child = c;
      }
      if (child == npos) return fail("move outside the strategy tree");
      const auto& cn = s.tree.nodes[child];
      switch (cn.kind) {
        case StrategyTree::Kind::Back:
          return play(t.dst, cn.ancestor, next_sum, false);
        case StrategyTree::Kind::Inner:
          return play(t.dst, child, next_sum, false);
        default:
          return fail("strategy reached a losing leaf at state " + a.state_name(t.dst));
      }
    };

    bool ok = true;
    if (arena.owned_by_o(st)) {
      std::optional<std::size_t> move;
      if (attracting) {
        move = s.attract.move[st];
      } else if (s.tree.nodes[node].choice) {
        move = s.tree.nodes[*s.tree.nodes[node].choice].via;
      }
      ok = move ? step(*move) : fail("no move prescribed at state " + a.state_name(st));
    } else {
      if (!arena.complete(st)) {
        ok = fail("player I can leave the domain at state " + a.state_name(st));
      } else {
        for (std::size_t idx : a.outgoing(st)) ok = step(idx) && ok;
      }
    }
    active.erase(key);
    if (ok) done.insert(key);
    return ok;
  };
  play(a.initial(), 0, Rational(0), false);
  return report;
}

ReplayReport replay_dsum(const GameArena& arena, const DsumStrategy& d) {
  const WeightedAutomaton& a = arena.automaton;
  const Rational& lambda = a.measure().lambda();
  ReplayReport report;
  // Worst-case (over player I) discounted value still to come from a state
  // after k policy letters; k == switch_after means attractor mode.
  std::map<std::pair<StateId, std::size_t>, std::optional<Rational>> memo;
  std::function<std::optional<Rational>(StateId, std::size_t, std::size_t)> worst =
      [&](StateId st, std::size_t k, std::size_t depth) -> std::optional<Rational> {
    const auto key = std::make_pair(st, k);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    ++report.configurations;
    if (depth > d.switch_after + 2 * a.num_states() + 2) {
      report.ok = false;
      report.detail = "play does not terminate";
      return std::nullopt;
    }
    const std::size_t next_k = std::min(k + 1, d.switch_after);
    auto step = [&](std::size_t idx) -> std::optional<Rational> {
      const Transition& t = a.transition(idx);
      if (t.letter == arena.end) {
        if (!arena.accepting_end(idx)) return std::nullopt;
        return t.weight.value();
      }
      auto rest = worst(t.dst, next_k, depth + 1);
      if (!rest) return std::nullopt;
      return t.weight.value() + lambda * *rest;
    };
    std::optional<Rational> value;
    if (arena.owned_by_o(st)) {
      const auto& move = k < d.switch_after ? d.policy[st] : d.attract.move[st];
      if (move) value = step(*move);
    } else if (arena.complete(st)) {
      bool all = true;
      for (std::size_t idx : a.outgoing(st)) {
        auto v = step(idx);
        if (!v) {
          all = false;
          break;
        }
        if (!value || *v < *value) value = v;
      }
      if (!all) value.reset();
    }
    memo[key] = value;
    return value;
  };
  const auto v = worst(a.initial(), 0, 0);
  if (!v) {
    if (report.ok) {
      report.ok = false;
      report.detail = "some play is not accepted";
    }
  } else if (*v <= 0) {
    report.ok = false;
    report.detail = "worst accepted play has value " + v->str();
  }
  return report;
}

}  // namespace

ReplayReport replay_strategy(const GameArena& arena, const RealizabilityResult& result) {
  if (result.sum_strategy) return replay_sum(arena, *result.sum_strategy);
  if (result.dsum_strategy) return replay_dsum(arena, *result.dsum_strategy);
  return ReplayReport{false, "no strategy to replay", 0};
}

}  // namespace wa
