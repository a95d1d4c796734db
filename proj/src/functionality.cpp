#include "wa/functionality.hpp"

#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "wa/error.hpp"
#include "wa/graph.hpp"

namespace wa {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

void require_measure(const WeightedAutomaton& a, bool ok, const char* what) {
  if (!ok) throw InputError(std::string(what) + " called on a " + a.measure().name() + " automaton");
}

/// Builds a witness from a list of product edges, checking that both runs
/// accept with distinct values.
Witness pair_witness(const WeightedAutomaton& a, const PairProduct& p, const std::vector<std::size_t>& edges) {
  Witness w;
  for (std::size_t e : edges) {
    w.word.push_back(p.edges[e].letter);
    w.run_a.transitions.push_back(p.edges[e].trans_a);
  }
  Run second;
  for (std::size_t e : edges) second.transitions.push_back(p.edges[e].trans_b);
  const auto va = evaluate_run(a, w.run_a);
  const auto vb = evaluate_run(a, second);
  if (!va || !vb || *va == *vb) throw std::logic_error("functionality witness failed re-validation");
  w.value_a = *va;
  w.value_b = *vb;
  w.run_b = std::move(second);
  return w;
}

std::vector<std::size_t> path_from_parents(const PairProduct& p, const std::vector<std::size_t>& parent,
                                           std::size_t to) {
  std::vector<std::size_t> path;
  for (std::size_t v = to; parent[v] != npos; v = p.edges[parent[v]].src) path.push_back(parent[v]);
  std::reverse(path.begin(), path.end());
  return path;
}

/// Shared skeleton of the Sum and Dsum delay tests. `step` maps a delay and
/// a product edge to the successor delay; `depth_first` selects the Dsum
/// traversal order of Algorithm 1.
FunctionalityResult propagate_delays(const WeightedAutomaton& a,
                                     const std::function<Rational(const Rational&, const PairProduct::Edge&)>& step,
                                     bool depth_first) {
  const PairProduct p = product(a, a);
  FunctionalityResult result;
  if (!p.coaccessible[p.initial]) return result;

  std::vector<std::optional<Rational>> delay(p.num_pairs());
  std::vector<std::size_t> parent(p.num_pairs(), npos);
  delay[p.initial] = Rational(0);
  auto observe = [&](std::size_t pair, const Rational& d) {
    result.observed_delays[{p.first(pair), p.second(pair)}].insert(d);
  };
  observe(p.initial, Rational(0));

  auto refute = [&](std::vector<std::size_t> edges) {
    result.functional = false;
    result.witness = pair_witness(a, p, edges);
    return result;
  };

  std::deque<std::size_t> work{p.initial};
  while (!work.empty()) {
    std::size_t v;
    if (depth_first) {
      v = work.back();
      work.pop_back();
    } else {
      v = work.front();
      work.pop_front();
    }
    for (std::size_t e : p.out[v]) {
      const auto& edge = p.edges[e];
      const std::size_t u = edge.dst;
      if (!p.coaccessible[u]) continue;
      Rational d = step(*delay[v], edge);
      observe(u, d);
      if (!delay[u]) {
        delay[u] = d;
        parent[u] = e;
        if (p.final_pair[u] && d != 0) return refute(path_from_parents(p, parent, u));
        work.push_back(u);
        continue;
      }
      if (*delay[u] == d) continue;
      // Two delays on u: extending both access paths by the same co-access
      // word keeps them distinct, so at least one extension refutes.
      const auto tail = *p.path_to_final(u);
      auto first = path_from_parents(p, parent, u);
      auto second = path_from_parents(p, parent, v);
      second.push_back(e);
      for (auto* access : {&first, &second}) {
        access->insert(access->end(), tail.begin(), tail.end());
        if (access->empty()) continue;
        Run r1, r2;
        for (std::size_t x : *access) {
          r1.transitions.push_back(p.edges[x].trans_a);
          r2.transitions.push_back(p.edges[x].trans_b);
        }
        if (path_value(a, r1.transitions) != path_value(a, r2.transitions)) return refute(*access);
      }
      throw std::logic_error("delay conflict without a distinguishing extension");
    }
  }
  return result;
}

// --- Ratio -------------------------------------------------------------

// Moment vector of a run pair: (1, R1, C1, R2, C2, R1*C2, R2*C1). Extending
// both runs is linear in this vector, and R1*C2 - R2*C1 is a linear form on
// it, so the form vanishes on every accepting pair iff it vanishes on a
// basis of the span reachable at each final pair.
using Moment = std::array<Rational, 7>;

Moment extend(const Moment& m, const Weight& wa, const Weight& wb) {
  const Rational& a = wa.reward();
  const Rational& b = wa.cost();
  const Rational& c = wb.reward();
  const Rational& d = wb.cost();
  Moment out;
  out[0] = m[0];
  out[1] = m[1] + a * m[0];
  out[2] = m[2] + b * m[0];
  out[3] = m[3] + c * m[0];
  out[4] = m[4] + d * m[0];
  out[5] = m[5] + d * m[1] + a * m[4] + a * d * m[0];
  out[6] = m[6] + b * m[3] + c * m[2] + c * b * m[0];
  return out;
}

struct EchelonBasis {
  std::vector<std::pair<std::size_t, Moment>> rows;  // (pivot, row)

  /// Adds `v` if it is independent of the rows so far.
  bool insert(Moment v) {
    for (const auto& [pivot, row] : rows) {
      if (v[pivot] == 0) continue;
      const Rational f = v[pivot] / row[pivot];
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= f * row[i];
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] != 0) {
        rows.push_back({i, std::move(v)});
        return true;
      }
    }
    return false;
  }
};

std::optional<std::vector<std::size_t>> ratio_span_witness(const PairProduct& p, const WeightedAutomaton& a) {
  struct Entry {
    std::size_t pair;
    Moment moment;
    std::size_t parent;
    std::size_t edge;
  };
  std::vector<Entry> entries;
  std::vector<EchelonBasis> basis(p.num_pairs());
  Moment start{};
  start[0] = Rational(1);
  basis[p.initial].insert(start);
  entries.push_back({p.initial, start, npos, npos});
  for (std::size_t head = 0; head < entries.size(); ++head) {
    const std::size_t v = entries[head].pair;
    for (std::size_t e : p.out[v]) {
      const auto& edge = p.edges[e];
      if (!p.coaccessible[edge.dst]) continue;
      Moment m = extend(entries[head].moment, a.transition(edge.trans_a).weight, a.transition(edge.trans_b).weight);
      if (!basis[edge.dst].insert(m)) continue;
      entries.push_back({edge.dst, m, head, e});
      if (p.final_pair[edge.dst] && m[5] != m[6]) {
        std::vector<std::size_t> path;
        for (std::size_t i = entries.size() - 1; entries[i].parent != npos; i = entries[i].parent) {
          path.push_back(entries[i].edge);
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
    }
  }
  return std::nullopt;
}

/// Shortest refuting path by breadth-first search over accumulated
/// (reward, cost) configurations, up to `max_len` letters; nullopt when the
/// cap is hit or the weights are too large for packed configurations.
std::optional<std::vector<std::size_t>> ratio_shortest_witness(const PairProduct& p, const WeightedAutomaton& a,
                                                               std::size_t max_len, std::size_t cap) {
  // Keeps every accumulated sum and cross product far from int64 overflow.
  constexpr long kLimit = 1L << 12;
  for (const auto& t : a.transitions()) {
    if (t.weight.reward() >= kLimit || t.weight.cost() >= kLimit) return std::nullopt;
  }
  struct Config {
    std::size_t pair;
    std::int64_t r1, c1, r2, c2;
    std::size_t parent;
    std::size_t edge;
  };
  auto key = [](std::size_t pair, std::int64_t r1, std::int64_t c1, std::int64_t r2, std::int64_t c2) {
    std::string k;
    k.reserve(40);
    for (std::uint64_t x : {std::uint64_t(pair), std::uint64_t(r1), std::uint64_t(c1), std::uint64_t(r2),
                            std::uint64_t(c2)}) {
      k.append(reinterpret_cast<const char*>(&x), sizeof x);
    }
    return k;
  };
  std::vector<Config> configs{{p.initial, 0, 0, 0, 0, npos, npos}};
  std::unordered_map<std::string, bool> seen{{key(p.initial, 0, 0, 0, 0), true}};
  std::size_t layer_end = 1;
  std::size_t length = 0;
  for (std::size_t head = 0; head < configs.size(); ++head) {
    if (head == layer_end) {
      ++length;
      layer_end = configs.size();
    }
    if (length >= max_len) break;
    for (std::size_t e : p.out[configs[head].pair]) {
      const auto& edge = p.edges[e];
      if (!p.coaccessible[edge.dst]) continue;
      const Weight& x = a.transition(edge.trans_a).weight;
      const Weight& y = a.transition(edge.trans_b).weight;
      const Config& c = configs[head];
      Config n{edge.dst,
               c.r1 + x.reward().numerator().get_si(),
               c.c1 + x.cost().numerator().get_si(),
               c.r2 + y.reward().numerator().get_si(),
               c.c2 + y.cost().numerator().get_si(),
               head,
               e};
      if (!seen.emplace(key(n.pair, n.r1, n.c1, n.r2, n.c2), true).second) continue;
      configs.push_back(n);
      if (p.final_pair[n.pair] && n.r1 * n.c2 != n.r2 * n.c1) {
        std::vector<std::size_t> path;
        for (std::size_t i = configs.size() - 1; configs[i].parent != npos; i = configs[i].parent) {
          path.push_back(configs[i].edge);
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      if (configs.size() > cap) return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

FunctionalityResult functional_sum_avg(const WeightedAutomaton& a) {
  const auto kind = a.measure().kind();
  require_measure(a, kind == MeasureKind::Sum || kind == MeasureKind::Avg, "functional_sum_avg");
  return propagate_delays(
      a,
      [&](const Rational& d, const PairProduct::Edge& e) {
        return d + a.transition(e.trans_a).weight.value() - a.transition(e.trans_b).weight.value();
      },
      false);
}

FunctionalityResult functional_dsum(const WeightedAutomaton& a) {
  require_measure(a, a.measure().kind() == MeasureKind::Dsum, "functional_dsum");
  const Rational lambda = a.measure().lambda();
  return propagate_delays(
      a,
      [&](const Rational& d, const PairProduct::Edge& e) {
        return (d + a.transition(e.trans_a).weight.value() - a.transition(e.trans_b).weight.value()) / lambda;
      },
      true);
}

FunctionalityResult functional_ratio(const WeightedAutomaton& a, std::size_t cap) {
  require_measure(a, a.measure().is_ratio(), "functional_ratio");
  const PairProduct p = product(a, a);
  FunctionalityResult result;
  if (!p.coaccessible[p.initial]) return result;
  auto path = ratio_span_witness(p, a);
  if (!path) return result;
  if (auto shorter = ratio_shortest_witness(p, a, path->size(), cap)) path = std::move(shorter);
  result.functional = false;
  result.witness = pair_witness(a, p, *path);
  return result;
}

FunctionalityResult check_functional(const WeightedAutomaton& a, std::size_t ratio_cap) {
  switch (a.measure().kind()) {
    case MeasureKind::Sum:
    case MeasureKind::Avg:
      return functional_sum_avg(a);
    case MeasureKind::Dsum:
      return functional_dsum(a);
    case MeasureKind::Ratio:
      return functional_ratio(a, ratio_cap);
  }
  throw std::logic_error("unknown measure");
}

void require_functional(const WeightedAutomaton& a, const std::string& role) {
  const auto r = check_functional(a);
  if (r.functional) return;
  const Witness& w = *r.witness;
  throw PreconditionError(role + " is not functional: word " + a.format_word(w.word) + " has values " +
                          w.value_a.str() + " and " + w.value_b->str());
}

}  // namespace wa
