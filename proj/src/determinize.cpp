#include "wa/determinize.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <stdexcept>

#include "wa/functionality.hpp"
#include "wa/graph.hpp"

namespace wa {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

Rational difference(const WeightedAutomaton& t, const PairProduct::Edge& e) {
  return t.transition(e.trans_a).weight.value() - t.transition(e.trans_b).weight.value();
}

/// Shortest path (possibly empty) between pairs, through `allowed` pairs.
std::vector<std::size_t> shortest(const PairProduct& p, std::size_t from, std::size_t to,
                                  const std::vector<bool>& allowed) {
  if (from == to) return {};
  return *p.path_between(from, to, allowed);
}

Word word_of(const PairProduct& p, const std::vector<std::size_t>& path) {
  Word w;
  for (std::size_t e : path) w.push_back(p.edges[e].letter);
  return w;
}

/// Delay reached from `start` along `path` (Sum: d + D; Dsum: (d + D)/lambda).
Rational delay_along(const WeightedAutomaton& t, const PairProduct& p, const std::vector<std::size_t>& path,
                     Rational start) {
  const bool dsum = t.measure().kind() == MeasureKind::Dsum;
  for (std::size_t e : path) {
    start += difference(t, p.edges[e]);
    if (dsum) start /= t.measure().lambda();
  }
  return start;
}

struct PairGraph {
  WeightedAutomaton trimmed;
  PairProduct product;
  Components comps;
  std::vector<bool> nontrivial;  // by component
};

PairGraph pair_graph(const WeightedAutomaton& a) {
  TrimResult tr = trim(a);
  PairProduct p = product(tr.automaton, tr.automaton);
  std::vector<std::vector<std::size_t>> succ(p.num_pairs());
  for (const auto& e : p.edges) {
    if (p.reachable[e.src]) succ[e.src].push_back(e.dst);
  }
  Components c = strongly_connected(p.num_pairs(), succ);
  std::vector<std::size_t> size(c.count, 0);
  std::vector<bool> nontrivial(c.count, false);
  for (std::size_t v = 0; v < p.num_pairs(); ++v) ++size[c.comp[v]];
  for (const auto& e : p.edges) {
    if (p.reachable[e.src] && c.comp[e.src] == c.comp[e.dst]) nontrivial[c.comp[e.src]] = true;
  }
  return PairGraph{std::move(tr.automaton), std::move(p), std::move(c), std::move(nontrivial)};
}

TwinningWitness make_witness(const PairGraph& g, std::size_t pair, const std::vector<std::size_t>& access,
                             const std::vector<std::size_t>& loop) {
  const Rational before = delay_along(g.trimmed, g.product, access, Rational(0));
  const Rational after = delay_along(g.trimmed, g.product, loop, before);
  if (before == after) throw std::logic_error("twinning witness does not move the delay");
  StateId p = g.product.first(pair), q = g.product.second(pair);
  // (q, p) carries the negated delays; report the pair in state order.
  if (p > q) {
    std::swap(p, q);
    return TwinningWitness{g.trimmed.state_name(p), g.trimmed.state_name(q), word_of(g.product, access),
                           word_of(g.product, loop), -before, -after};
  }
  return TwinningWitness{g.trimmed.state_name(p), g.trimmed.state_name(q), word_of(g.product, access),
                         word_of(g.product, loop), before, after};
}

void require_delay_measure(const WeightedAutomaton& a, bool dsum) {
  const auto k = a.measure().kind();
  const bool ok = dsum ? k == MeasureKind::Dsum : (k == MeasureKind::Sum || k == MeasureKind::Avg);
  if (!ok) throw InputError("twinning check does not apply to a " + a.measure().name() + " automaton");
}

}  // namespace

TwinningResult twinning_sum(const WeightedAutomaton& a) {
  require_delay_measure(a, false);
  require_functional(a, "the automaton");
  const PairGraph g = pair_graph(a);
  const PairProduct& p = g.product;
  std::vector<bool> done(g.comps.count, false);
  for (std::size_t root = 0; root < p.num_pairs(); ++root) {
    const std::size_t c = g.comps.comp[root];
    if (!p.reachable[root] || done[c]) continue;
    done[c] = true;
    if (!g.nontrivial[c]) continue;
    std::vector<bool> member(p.num_pairs(), false);
    for (std::size_t v = 0; v < p.num_pairs(); ++v) member[v] = g.comps.comp[v] == c;

    // Potentials along a BFS tree from the root.
    std::vector<std::optional<Rational>> pot(p.num_pairs());
    std::vector<std::size_t> tree(p.num_pairs(), npos);
    pot[root] = Rational(0);
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t e : p.out[v]) {
        const std::size_t u = p.edges[e].dst;
        if (!member[u] || pot[u]) continue;
        pot[u] = *pot[v] + difference(g.trimmed, p.edges[e]);
        tree[u] = e;
        queue.push_back(u);
      }
    }
    auto tree_path = [&](std::size_t v) {
      std::vector<std::size_t> path;
      for (; v != root; v = p.edges[tree[v]].src) path.push_back(tree[v]);
      std::reverse(path.begin(), path.end());
      return path;
    };
    for (std::size_t e = 0; e < p.edges.size(); ++e) {
      const auto& edge = p.edges[e];
      if (!member[edge.src] || !member[edge.dst]) continue;
      if (*pot[edge.src] + difference(g.trimmed, edge) == *pot[edge.dst]) continue;
      // Root -> src -> dst -> root and root -> dst -> root differ by the
      // inconsistency, so one of them is a nonzero loop.
      const auto back = shortest(p, edge.dst, root, member);
      auto with_edge = tree_path(edge.src);
      with_edge.push_back(e);
      with_edge.insert(with_edge.end(), back.begin(), back.end());
      auto without = tree_path(edge.dst);
      without.insert(without.end(), back.begin(), back.end());
      const auto access = shortest(p, p.initial, root, p.reachable);
      const auto& loop = delay_along(g.trimmed, p, with_edge, Rational(0)) != 0 ? with_edge : without;
      return TwinningResult{false, make_witness(g, root, access, loop)};
    }
  }
  return TwinningResult{};
}

TwinningResult twinning_dsum(const WeightedAutomaton& a, std::size_t delay_cap) {
  require_delay_measure(a, true);
  require_functional(a, "the automaton");
  const PairGraph g = pair_graph(a);
  const PairProduct& p = g.product;
  const Rational lambda = a.measure().lambda();
  auto step = [&](const Rational& d, std::size_t e) { return (d + difference(g.trimmed, p.edges[e])) / lambda; };

  // Access delays per pair, each with the last edge and previous delay of a
  // path realizing it.
  struct Parent {
    std::size_t edge;
    Rational prev;
  };
  std::vector<std::map<Rational, Parent>> delays(p.num_pairs());
  std::size_t total = 1;
  delays[p.initial].emplace(Rational(0), Parent{npos, Rational(0)});
  auto path_to = [&](std::size_t pair, Rational d) {
    std::vector<std::size_t> path;
    while (true) {
      const Parent& par = delays[pair].at(d);
      if (par.edge == npos) break;
      path.push_back(par.edge);
      pair = p.edges[par.edge].src;
      d = par.prev;
    }
    std::reverse(path.begin(), path.end());
    return path;
  };
  auto add = [&](std::size_t pair, const Rational& d, std::size_t edge, const Rational& prev) {
    if (delays[pair].emplace(d, Parent{edge, prev}).second && ++total > delay_cap) {
      throw ResourceLimitError("twinning check: more than " + std::to_string(delay_cap) + " access delays");
    }
  };

  std::vector<std::vector<std::size_t>> members(g.comps.count);
  for (std::size_t v = 0; v < p.num_pairs(); ++v) {
    if (p.reachable[v]) members[g.comps.comp[v]].push_back(v);
  }
  // Tarjan numbers components sinks first; walk them from the sources.
  for (std::size_t c = g.comps.count; c-- > 0;) {
    if (members[c].empty()) continue;
    if (g.nontrivial[c]) {
      std::vector<bool> member(p.num_pairs(), false);
      for (std::size_t v : members[c]) member[v] = true;
      std::size_t entry = npos;
      for (std::size_t v : members[c]) {
        if (!delays[v].empty()) {
          entry = v;
          break;
        }
      }
      const Rational d0 = delays[entry].begin()->first;
      std::vector<std::optional<Rational>> val(p.num_pairs());
      std::vector<std::size_t> tree(p.num_pairs(), npos);
      val[entry] = d0;
      std::deque<std::size_t> queue{entry};
      while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t e : p.out[v]) {
          const std::size_t u = p.edges[e].dst;
          if (!member[u] || val[u]) continue;
          val[u] = step(*val[v], e);
          tree[u] = e;
          queue.push_back(u);
        }
      }
      auto assigned_path = [&](std::size_t v) {
        std::vector<std::size_t> tail;
        for (; v != entry; v = p.edges[tree[v]].src) tail.push_back(tree[v]);
        std::reverse(tail.begin(), tail.end());
        auto path = path_to(entry, d0);
        path.insert(path.end(), tail.begin(), tail.end());
        return path;
      };
      // Two access paths to `pair` with distinct delays: the loop fixes at
      // most one of them.
      auto fail = [&](std::size_t pair, std::vector<std::size_t> first, std::vector<std::size_t> second) {
        const auto loop = *p.path_between(pair, pair, member);
        for (const auto* access : {&first, &second}) {
          const Rational before = delay_along(g.trimmed, p, *access, Rational(0));
          if (delay_along(g.trimmed, p, loop, before) != before) {
            return TwinningResult{false, make_witness(g, pair, *access, loop)};
          }
        }
        throw std::logic_error("a loop fixes two distinct delays");
      };
      for (std::size_t e = 0; e < p.edges.size(); ++e) {
        const auto& edge = p.edges[e];
        if (!member[edge.src] || !member[edge.dst]) continue;
        if (step(*val[edge.src], e) == *val[edge.dst]) continue;
        auto via = assigned_path(edge.src);
        via.push_back(e);
        return fail(edge.dst, assigned_path(edge.dst), via);
      }
      for (std::size_t v : members[c]) {
        for (const auto& [d, par] : delays[v]) {
          if (d != *val[v]) return fail(v, path_to(v, d), assigned_path(v));
        }
      }
      for (std::size_t v : members[c]) {
        if (delays[v].empty()) add(v, *val[v], tree[v], *val[p.edges[tree[v]].src]);
      }
    }
    for (std::size_t v : members[c]) {
      for (const auto& [d, par] : delays[v]) {
        for (std::size_t e : p.out[v]) {
          const std::size_t u = p.edges[e].dst;
          if (g.comps.comp[u] != c) add(u, step(d, e), e, d);
        }
      }
    }
  }
  return TwinningResult{};
}

TwinningResult check_twinning(const WeightedAutomaton& a) {
  return a.measure().kind() == MeasureKind::Dsum ? twinning_dsum(a) : twinning_sum(a);
}

Determinization determinize(const WeightedAutomaton& a, const DeterminizeOptions& options) {
  const Measure& m = a.measure();
  if (m.is_ratio()) throw UnsupportedError("ratio determinization (open problem)");
  TrimResult tr = trim(a);
  const WeightedAutomaton& t = tr.automaton;
  require_functional(t, "the automaton");
  const TwinningResult tw = check_twinning(t);
  if (!tw.holds) {
    const TwinningWitness& w = *tw.witness;
    throw NotDeterminizableError(w, "twinning fails on pair (" + w.p + ", " + w.q + ")");
  }
  const std::string end_name = options.end_symbol ? *options.end_symbol : a.end_symbol().value_or("#");
  if (!tr.empty_language) {
    const auto end = t.find_letter(end_name);
    if (!end) throw InputError("determinization needs words ending in '" + end_name + "', which is not a letter");
    const DomainCheck dom = domain_included(t, end_marked_language(t, *end));
    if (!dom.holds) {
      throw InputError("accepted word " + t.format_word(*dom.counterexample) + " does not end with a single '" +
                       end_name + "'");
    }
  }

  using Subset = std::vector<std::pair<StateId, Rational>>;  // sorted by state
  auto name_of = [&](const Subset& s) {
    std::string n = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) n += ",";
      n += t.state_name(s[i].first) + "=" + s[i].second.str();
    }
    return n + "}";
  };
  const bool dsum = m.kind() == MeasureKind::Dsum;
  std::map<Subset, std::size_t> ids;
  std::vector<Subset> subsets{{{t.initial(), Rational(0)}}};
  ids[subsets[0]] = 0;

  AutomatonBuilder b(m);
  for (const auto& l : t.alphabet()) b.add_letter(l);
  if (a.end_symbol()) b.set_end_symbol(*a.end_symbol());
  b.set_initial(name_of(subsets[0]));
  for (std::size_t head = 0; head < subsets.size(); ++head) {
    const Subset f = subsets[head];
    const std::string src = name_of(f);
    b.add_state(src);
    for (const auto& [q, d] : f) {
      if (t.is_final(q)) {
        b.add_final(src);
        break;
      }
    }
    for (LetterId l = 0; l < t.num_letters(); ++l) {
      std::vector<std::pair<StateId, Rational>> cand;
      for (const auto& [q, d] : f) {
        for (std::size_t idx : t.outgoing(q)) {
          const Transition& tr2 = t.transition(idx);
          if (tr2.letter == l) cand.push_back({tr2.dst, d + tr2.weight.value()});
        }
      }
      if (cand.empty()) continue;
      Rational gamma = cand[0].second;
      for (const auto& [q, v] : cand) gamma = std::min(gamma, v);
      std::map<StateId, Rational> next;
      for (const auto& [q, v] : cand) {
        Rational nd = v - gamma;
        if (dsum) nd /= m.lambda();
        auto [it, inserted] = next.emplace(q, nd);
        // Distinct delays on one co-accessible state would refute
        // functionality, which was checked above.
        if (!inserted && it->second != nd) throw std::logic_error("conflicting delays in determinization");
      }
      Subset s(next.begin(), next.end());
      auto [it, inserted] = ids.emplace(s, subsets.size());
      if (inserted) {
        if (subsets.size() >= options.state_cap) {
          throw ResourceLimitError("determinization exceeded " + std::to_string(options.state_cap) + " states");
        }
        subsets.push_back(s);
      }
      b.add_transition(src, t.letter_name(l), name_of(s), Weight::scalar(gamma));
    }
  }
  // Lemma bound |Sigma|^(|Q|^3) on the number of delay functions, with base at
  // least 2 so a unary alphabet does not collapse it to 1.
  const Integer bound = [&] {
    Integer r;
    const unsigned long q = t.num_states();
    mpz_ui_pow_ui(r.get_mpz_t(), std::max<unsigned long>(t.num_letters(), 2), q * q * q);
    return r;
  }();
  if (Integer(static_cast<unsigned long>(subsets.size())) > bound) {
    throw std::logic_error("determinization exceeded the |Sigma|^(|Q|^3) bound");
  }

  Determinization out{b.build(), {}};
  std::map<std::string, const Subset*> by_name;
  for (const auto& s : subsets) by_name[name_of(s)] = &s;
  for (StateId s = 0; s < out.automaton.num_states(); ++s) {
    std::vector<std::pair<std::string, Rational>> row;
    for (const auto& [q, d] : *by_name.at(out.automaton.state_name(s))) row.push_back({t.state_name(q), d});
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    out.delays.push_back(std::move(row));
  }
  return out;
}

WeightedAutomaton unambiguize(const WeightedAutomaton& a, std::size_t state_cap) {
  require_functional(a, "the automaton");
  using Config = std::pair<StateId, std::vector<bool>>;
  auto name_of = [&](const Config& c) {
    std::string n = "(" + a.state_name(c.first) + ",{";
    bool first = true;
    for (StateId s = 0; s < a.num_states(); ++s) {
      if (!c.second[s]) continue;
      if (!first) n += ",";
      n += a.state_name(s);
      first = false;
    }
    return n + "})";
  };
  std::map<Config, std::size_t> ids;
  std::vector<Config> configs{{a.initial(), std::vector<bool>(a.num_states(), false)}};
  ids[configs[0]] = 0;
  AutomatonBuilder b(a.measure());
  for (const auto& l : a.alphabet()) b.add_letter(l);
  if (a.end_symbol()) b.set_end_symbol(*a.end_symbol());
  b.set_initial(name_of(configs[0]));
  for (std::size_t head = 0; head < configs.size(); ++head) {
    const Config c = configs[head];
    const std::string src = name_of(c);
    b.add_state(src);
    bool greater_accepts = false;
    for (StateId s = 0; s < a.num_states(); ++s) greater_accepts = greater_accepts || (c.second[s] && a.is_final(s));
    if (a.is_final(c.first) && !greater_accepts) b.add_final(src);
    const auto out = a.outgoing(c.first);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const Transition& t = a.transition(out[i]);
      std::vector<bool> next(a.num_states(), false);
      for (StateId s = 0; s < a.num_states(); ++s) {
        if (!c.second[s]) continue;
        for (std::size_t idx : a.outgoing(s)) {
          if (a.transition(idx).letter == t.letter) next[a.transition(idx).dst] = true;
        }
      }
      // Siblings later in the transition order belong to greater runs.
      for (std::size_t j = i + 1; j < out.size(); ++j) {
        if (a.transition(out[j]).letter == t.letter) next[a.transition(out[j]).dst] = true;
      }
      Config n{t.dst, std::move(next)};
      auto [it, inserted] = ids.emplace(n, configs.size());
      if (inserted) {
        if (configs.size() >= state_cap) {
          throw ResourceLimitError("unambiguization exceeded " + std::to_string(state_cap) + " states");
        }
        configs.push_back(n);
      }
      b.add_transition(src, a.letter_name(t.letter), name_of(n), t.weight);
    }
  }
  return trim(b.build()).automaton;
}

}  // namespace wa
