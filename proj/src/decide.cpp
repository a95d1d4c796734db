#include "wa/decide.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "wa/error.hpp"
#include "wa/functionality.hpp"
#include "wa/paths.hpp"

namespace wa {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

/// The automaton as a graph on its states, edge i = transition i.
template <typename Reweight>
WeightedGraph state_graph(const WeightedAutomaton& a, Reweight reweight) {
  WeightedGraph g;
  g.num_vertices = a.num_states();
  g.source = a.initial();
  g.target.assign(a.num_states(), false);
  for (StateId f : a.finals()) g.target[f] = true;
  for (const auto& t : a.transitions()) g.edges.push_back({t.src, t.dst, reweight(t.weight)});
  return g;
}

/// Path search problem: a path in `g` to a target whose weight sum (or
/// discounted sum when `lambda` is set) is > or >= `bound`.
struct PathQuery {
  WeightedGraph g;
  Rational bound;
  std::optional<Rational> lambda;
  bool strict = true;
};

/// The threshold query as a path query, after optionally negating the
/// weights (used by universality with `sign` = -1: value < nu becomes
/// -value > -nu).
PathQuery path_query(const WeightedAutomaton& a, const Rational& nu, bool strict, int sign) {
  const Measure& m = a.measure();
  const Rational n(nu.denominator());
  const Rational num(nu.numerator());
  switch (m.kind()) {
    case MeasureKind::Sum:
      return {state_graph(a, [&](const Weight& w) { return Rational(sign) * w.value(); }), Rational(sign) * nu,
              std::nullopt, strict};
    case MeasureKind::Avg:
      // Avg(p) ~ m/n iff sum of (n*w - m) ~ 0, paths being nonempty.
      return {state_graph(a, [&](const Weight& w) { return Rational(sign) * (n * w.value() - num); }), Rational(0),
              std::nullopt, strict};
    case MeasureKind::Ratio:
      // sum r / sum c ~ m/n iff sum of (n*r - m*c) ~ 0, costs being positive.
      return {state_graph(a, [&](const Weight& w) { return Rational(sign) * (n * w.reward() - num * w.cost()); }),
              Rational(0), std::nullopt, strict};
    case MeasureKind::Dsum:
      if (!strict) throw std::logic_error("non-strict discounted search");
      return {state_graph(a, [&](const Weight& w) { return Rational(sign) * w.value(); }), Rational(sign) * nu,
              m.lambda(), strict};
  }
  throw std::logic_error("unknown measure");
}

std::optional<std::vector<std::size_t>> solve(const PathQuery& q) {
  if (q.lambda) return find_dsum_path(q.g, *q.lambda, q.bound);
  return find_sum_path(q.g, q.bound, q.strict);
}

/// Breadth-first search over (vertex, accumulated value) for the shortest,
/// then lexicographically least, witness of at most `max_len` letters. For
/// Dsum the value is normalized as (D - bound) / lambda^k so that equal
/// configurations have equal futures. Gives up (nullopt) past `cap`
/// configurations; the caller then keeps the path it has.
std::optional<std::vector<std::size_t>> shortest_path(const PathQuery& q, const std::vector<LetterId>& letter,
                                                      std::size_t max_len, std::size_t cap = 200000) {
  using Config = std::pair<std::size_t, Rational>;
  struct Entry {
    Word word;
    std::vector<std::size_t> path;
  };
  std::optional<Rational> slack;  // Dsum: sup of the discounted future
  if (q.lambda) {
    Rational top(0);
    for (const auto& e : q.g.edges) top = std::max(top, e.weight);
    slack = top / (Rational(1) - *q.lambda);
  }
  auto accepts = [&](const Config& c) {
    if (!q.g.target[c.first]) return false;
    if (q.lambda) return c.second > Rational(0);
    return q.strict ? c.second > q.bound : c.second >= q.bound;
  };
  std::map<Config, Entry> layer;
  layer.emplace(Config{q.g.source, q.lambda ? -q.bound : Rational(0)}, Entry{});
  std::set<Config> seen;
  seen.insert(layer.begin()->first);
  std::vector<std::vector<std::size_t>> out(q.g.num_vertices);
  for (std::size_t e = 0; e < q.g.edges.size(); ++e) out[q.g.edges[e].src].push_back(e);
  for (std::size_t len = 1; len <= max_len && !layer.empty(); ++len) {
    std::map<Config, Entry> next;
    for (const auto& [c, entry] : layer) {
      for (std::size_t e : out[c.first]) {
        const auto& edge = q.g.edges[e];
        Rational v = q.lambda ? (c.second + edge.weight) / *q.lambda : c.second + edge.weight;
        if (slack && v + *slack <= Rational(0)) continue;
        Config d{edge.dst, std::move(v)};
        if (seen.count(d)) continue;
        Word w = entry.word;
        w.push_back(letter[e]);
        auto it = next.find(d);
        if (it != next.end() && !(w < it->second.word)) continue;
        std::vector<std::size_t> path = entry.path;
        path.push_back(e);
        next.insert_or_assign(std::move(d), Entry{std::move(w), std::move(path)});
      }
    }
    const Entry* best = nullptr;
    for (const auto& [c, entry] : next) {
      seen.insert(c);
      if (accepts(c) && (!best || entry.word < best->word)) best = &entry;
    }
    if (best) return best->path;
    if (seen.size() > cap) return std::nullopt;
    layer = std::move(next);
  }
  return std::nullopt;
}

/// Solves `q` and then tries to replace the path by the shortest,
/// lexicographically least one.
std::optional<std::vector<std::size_t>> search(const PathQuery& q, const std::vector<LetterId>& letter) {
  auto path = solve(q);
  if (!path) return path;
  if (auto s = shortest_path(q, letter, path->size())) return s;
  return path;
}

std::vector<LetterId> transition_letters(const WeightedAutomaton& a) {
  std::vector<LetterId> out;
  for (const auto& t : a.transitions()) out.push_back(t.letter);
  return out;
}

Witness run_witness(const WeightedAutomaton& a, std::vector<std::size_t> path) {
  Witness w;
  w.run_a.transitions = std::move(path);
  w.word = run_word(a, w.run_a);
  const auto v = evaluate_run(a, w.run_a);
  if (!v) throw std::logic_error("threshold witness is not accepting");
  w.value_a = *v;
  return w;
}

bool satisfies(const Rational& v, const ThresholdQuery& q) { return q.strict() ? v > q.threshold : v >= q.threshold; }

/// An accepting run on `word` of maximal value (any accepting run for Ratio,
/// where callers only use functional automata).
std::optional<Run> best_run(const WeightedAutomaton& a, const Word& word) {
  const Measure& m = a.measure();
  struct Cell {
    Rational value;
    std::size_t via = npos;
    std::size_t prev = npos;
  };
  std::vector<std::vector<std::optional<Cell>>> table(word.size() + 1,
                                                      std::vector<std::optional<Cell>>(a.num_states()));
  table[0][a.initial()] = Cell{};
  Rational factor(1);
  for (std::size_t i = 0; i < word.size(); ++i) {
    for (StateId s = 0; s < a.num_states(); ++s) {
      if (!table[i][s]) continue;
      for (std::size_t idx : a.outgoing(s)) {
        const Transition& t = a.transition(idx);
        if (t.letter != word[i]) continue;
        Rational v = table[i][s]->value;
        if (!m.is_ratio()) v += (m.kind() == MeasureKind::Dsum ? factor : Rational(1)) * t.weight.value();
        auto& cell = table[i + 1][t.dst];
        if (!cell || v > cell->value) cell = Cell{v, idx, s};
      }
    }
    if (m.kind() == MeasureKind::Dsum) factor *= m.lambda();
  }
  std::optional<StateId> end;
  for (StateId f : a.finals()) {
    if (table[word.size()][f] && (!end || table[word.size()][f]->value > table[word.size()][*end]->value)) end = f;
  }
  if (!end || word.empty()) return std::nullopt;
  Run run;
  StateId s = *end;
  for (std::size_t i = word.size(); i > 0; --i) {
    const Cell& c = *table[i][s];
    run.transitions.push_back(c.via);
    s = c.prev;
  }
  std::reverse(run.transitions.begin(), run.transitions.end());
  return run;
}

void require_same_measure(const WeightedAutomaton& a, const WeightedAutomaton& b) {
  if (!(a.measure() == b.measure())) {
    throw InputError("automata have different measures (" + a.measure().name() + " vs " + b.measure().name() + ")");
  }
}

}  // namespace

ThresholdResult emptiness(const WeightedAutomaton& a, const ThresholdQuery& query) {
  if (a.measure().kind() == MeasureKind::Dsum && !query.strict()) {
    throw UnsupportedError("dsum emptiness with a non-strict threshold (open problem)");
  }
  ThresholdResult r;
  auto path = search(path_query(a, query.threshold, query.strict(), 1), transition_letters(a));
  if (!path) return r;
  r.holds = false;
  r.witness = run_witness(a, std::move(*path));
  if (!satisfies(r.witness->value_a, query)) throw std::logic_error("emptiness witness misses the threshold");
  return r;
}

ThresholdResult universality(const WeightedAutomaton& a, const ThresholdQuery& query) {
  if (a.measure().kind() == MeasureKind::Dsum && query.strict()) {
    throw UnsupportedError("dsum universality with a strict threshold (open problem)");
  }
  require_functional(a, "the automaton");
  ThresholdResult r;
  // A violation of '>=' is a run with value < nu, i.e. -value > -nu; a
  // violation of '>' is -value >= -nu.
  auto path = search(path_query(a, query.threshold, !query.strict(), -1), transition_letters(a));
  if (!path) return r;
  r.holds = false;
  r.witness = run_witness(a, std::move(*path));
  if (satisfies(r.witness->value_a, query)) throw std::logic_error("universality witness satisfies the threshold");
  return r;
}

InclusionResult inclusion(const WeightedAutomaton& a_in, const WeightedAutomaton& b_in, std::size_t subset_cap) {
  require_same_measure(a_in, b_in);
  if (a_in.measure().is_ratio()) {
    throw UnsupportedError("ratio inclusion (quadratic Diophantine route out of scope)");
  }
  const auto [a, b] = align_alphabets(a_in, b_in);
  require_functional(b, "B");
  InclusionResult r;

  const DomainCheck dom = domain_included(a, b, subset_cap);
  if (!dom.holds) {
    Witness w;
    w.word = *dom.counterexample;
    w.run_a = *best_run(a, w.word);
    w.value_a = *evaluate_run(a, w.run_a);
    r.holds = false;
    r.witness = std::move(w);
    return r;
  }

  const PairProduct p = product(a, b);
  PathQuery q;
  q.g.num_vertices = p.num_pairs();
  q.g.source = p.initial;
  q.g.target = p.final_pair;
  std::vector<LetterId> letters;
  for (const auto& e : p.edges) {
    q.g.edges.push_back(
        {e.src, e.dst, a.transition(e.trans_a).weight.value() - b.transition(e.trans_b).weight.value()});
    letters.push_back(e.letter);
  }
  // Same-length runs: Avg differences have the sign of Sum differences.
  if (a.measure().kind() == MeasureKind::Dsum) q.lambda = a.measure().lambda();
  const auto path = search(q, letters);
  if (!path) return r;
  Witness w;
  Run rb;
  for (std::size_t e : *path) {
    w.word.push_back(p.edges[e].letter);
    w.run_a.transitions.push_back(p.edges[e].trans_a);
    rb.transitions.push_back(p.edges[e].trans_b);
  }
  w.value_a = *evaluate_run(a, w.run_a);
  w.value_b = *evaluate_run(b, rb);
  w.run_b = std::move(rb);
  if (!(w.value_a > *w.value_b)) throw std::logic_error("inclusion witness does not separate the automata");
  r.holds = false;
  r.witness = std::move(w);
  return r;
}

WeightedAutomaton disjoint_union(const WeightedAutomaton& a, const WeightedAutomaton& b) {
  require_same_measure(a, b);
  if (a.alphabet() != b.alphabet()) throw InputError("union of automata over different alphabets");
  AutomatonBuilder u(a.measure());
  for (const auto& l : a.alphabet()) u.add_letter(l);
  u.set_initial("init");
  for (const auto& [x, prefix] : {std::pair{&a, "a."}, std::pair{&b, "b."}}) {
    for (StateId s = 0; s < x->num_states(); ++s) {
      u.add_state(prefix + x->state_name(s));
      if (x->is_final(s)) u.add_final(prefix + x->state_name(s));
    }
    for (const auto& t : x->transitions()) {
      const std::string dst = prefix + x->state_name(t.dst);
      u.add_transition(prefix + x->state_name(t.src), x->letter_name(t.letter), dst, t.weight);
      if (t.src == x->initial()) u.add_transition("init", x->letter_name(t.letter), dst, t.weight);
    }
  }
  return u.build();
}

namespace {

/// Maps a run of disjoint_union(a, b) back to a run of a (side 0) or b.
std::pair<int, Run> split_union_run(const WeightedAutomaton& u, const Run& run, const WeightedAutomaton& a,
                                    const WeightedAutomaton& b) {
  const std::string& first_dst = u.state_name(u.transition(run.transitions.front()).dst);
  const int side = first_dst.rfind("a.", 0) == 0 ? 0 : 1;
  const WeightedAutomaton& x = side == 0 ? a : b;
  Run out;
  StateId at = x.initial();
  for (std::size_t idx : run.transitions) {
    const Transition& t = u.transition(idx);
    const StateId dst = *x.find_state(u.state_name(t.dst).substr(2));
    std::size_t found = npos;
    for (std::size_t j : x.outgoing(at)) {
      const Transition& c = x.transition(j);
      if (c.letter == t.letter && c.dst == dst && c.weight == t.weight) found = j;
    }
    if (found == npos) throw std::logic_error("union run does not map back");
    out.transitions.push_back(found);
    at = dst;
  }
  return {side, out};
}

}  // namespace

EquivalenceResult equivalence(const WeightedAutomaton& a_in, const WeightedAutomaton& b_in, std::size_t subset_cap) {
  require_same_measure(a_in, b_in);
  const auto [a, b] = align_alphabets(a_in, b_in);
  require_functional(a, "A");
  require_functional(b, "B");
  EquivalenceResult r;

  const DomainCheck dom = domain_equal(a, b, subset_cap);
  if (!dom.holds) {
    Witness w;
    w.word = *dom.counterexample;
    r.holds = false;
    r.domain_mismatch = true;
    if (auto run = best_run(a, w.word)) {
      r.only_in_a = true;
      w.run_a = *run;
      w.value_a = *evaluate_run(a, *run);
    } else {
      w.run_b = *best_run(b, w.word);
      w.value_b = *evaluate_run(b, *w.run_b);
    }
    r.witness = std::move(w);
    return r;
  }

  const WeightedAutomaton u = disjoint_union(a, b);
  const FunctionalityResult f = check_functional(u);
  if (f.functional) return r;
  auto first = split_union_run(u, f.witness->run_a, a, b);
  auto second = split_union_run(u, *f.witness->run_b, a, b);
  if (first.first == second.first) throw std::logic_error("union witness stays inside one functional automaton");
  if (first.first == 1) std::swap(first, second);
  Witness w;
  w.word = f.witness->word;
  w.run_a = first.second;
  w.value_a = *evaluate_run(a, w.run_a);
  w.run_b = second.second;
  w.value_b = *evaluate_run(b, *w.run_b);
  r.holds = false;
  r.witness = std::move(w);
  return r;
}

}  // namespace wa
