#include "wa/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>

#include "wa/error.hpp"

namespace wa {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

}  // namespace

std::vector<bool> accessible(const WeightedAutomaton& a) {
  std::vector<bool> seen(a.num_states(), false);
  std::vector<StateId> stack{a.initial()};
  seen[a.initial()] = true;
  while (!stack.empty()) {
    const StateId s = stack.back();
    stack.pop_back();
    for (std::size_t idx : a.outgoing(s)) {
      const StateId d = a.transition(idx).dst;
      if (!seen[d]) {
        seen[d] = true;
        stack.push_back(d);
      }
    }
  }
  return seen;
}

std::vector<bool> coaccessible(const WeightedAutomaton& a) {
  std::vector<std::vector<StateId>> pred(a.num_states());
  for (const auto& t : a.transitions()) pred[t.dst].push_back(t.src);
  std::vector<bool> seen(a.num_states(), false);
  std::vector<StateId> stack;
  for (StateId f : a.finals()) {
    seen[f] = true;
    stack.push_back(f);
  }
  while (!stack.empty()) {
    const StateId s = stack.back();
    stack.pop_back();
    for (StateId p : pred[s]) {
      if (!seen[p]) {
        seen[p] = true;
        stack.push_back(p);
      }
    }
  }
  return seen;
}

TrimResult trim(const WeightedAutomaton& a) {
  const auto acc = accessible(a);
  const auto coacc = coaccessible(a);
  std::vector<bool> keep(a.num_states());
  bool any_final = false;
  for (StateId s = 0; s < a.num_states(); ++s) {
    keep[s] = acc[s] && coacc[s];
    if (keep[s] && a.is_final(s)) any_final = true;
  }
  keep[a.initial()] = true;

  AutomatonBuilder b(a.measure());
  for (const auto& l : a.alphabet()) b.add_letter(l);
  if (a.end_symbol()) b.set_end_symbol(*a.end_symbol());
  b.set_initial(a.state_name(a.initial()));
  for (StateId s = 0; s < a.num_states(); ++s) {
    if (keep[s] && a.is_final(s)) b.add_final(a.state_name(s));
  }
  std::vector<std::size_t> origin;
  for (std::size_t i = 0; i < a.num_transitions(); ++i) {
    const Transition& t = a.transition(i);
    // The initial state is kept unconditionally, but its transitions only
    // survive when they lead somewhere useful.
    if (!(acc[t.src] && coacc[t.src] && acc[t.dst] && coacc[t.dst])) continue;
    b.add_transition(a.state_name(t.src), a.letter_name(t.letter), a.state_name(t.dst), t.weight);
    origin.push_back(i);
  }
  return TrimResult{b.build(), !any_final, std::move(origin)};
}

PairProduct product(const WeightedAutomaton& a, const WeightedAutomaton& b) {
  if (!(a.measure() == b.measure())) {
    throw InputError("product of automata with different measures (" + a.measure().name() + " vs " +
                     b.measure().name() + ")");
  }
  if (a.alphabet() != b.alphabet()) throw InputError("product of automata over different alphabets");
  PairProduct p;
  p.a_states = a.num_states();
  p.b_states = b.num_states();
  p.initial = p.pair_id(a.initial(), b.initial());
  const std::size_t n = p.num_pairs();
  p.out.assign(n, {});
  p.final_pair.assign(n, false);
  for (StateId x = 0; x < a.num_states(); ++x) {
    for (StateId y = 0; y < b.num_states(); ++y) {
      const std::size_t id = p.pair_id(x, y);
      p.final_pair[id] = a.is_final(x) && b.is_final(y);
      for (std::size_t ta : a.outgoing(x)) {
        const Transition& tx = a.transition(ta);
        for (std::size_t tb : b.outgoing(y)) {
          const Transition& ty = b.transition(tb);
          if (ty.letter != tx.letter) continue;
          p.out[id].push_back(p.edges.size());
          p.edges.push_back({id, p.pair_id(tx.dst, ty.dst), tx.letter, ta, tb});
        }
      }
    }
  }

  p.reachable.assign(n, false);
  std::deque<std::size_t> queue{p.initial};
  p.reachable[p.initial] = true;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t e : p.out[v]) {
      const std::size_t d = p.edges[e].dst;
      if (!p.reachable[d]) {
        p.reachable[d] = true;
        queue.push_back(d);
      }
    }
  }

  // Backward BFS from final pairs gives both co-accessibility and a
  // shortest-path successor for every co-accessible pair.
  std::vector<std::vector<std::size_t>> in(n);
  for (std::size_t e = 0; e < p.edges.size(); ++e) in[p.edges[e].dst].push_back(e);
  std::vector<std::size_t> dist(n, npos);
  for (std::size_t v = 0; v < n; ++v) {
    if (p.final_pair[v]) {
      dist[v] = 0;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t e : in[v]) {
      const std::size_t s = p.edges[e].src;
      if (dist[s] == npos) {
        dist[s] = dist[v] + 1;
        queue.push_back(s);
      }
    }
  }
  p.coaccessible.assign(n, false);
  p.next_to_final.assign(n, npos);
  for (std::size_t v = 0; v < n; ++v) {
    if (dist[v] == npos) continue;
    p.coaccessible[v] = true;
    if (dist[v] == 0) continue;
    for (std::size_t e : p.out[v]) {
      if (dist[p.edges[e].dst] + 1 == dist[v]) {
        p.next_to_final[v] = e;
        break;
      }
    }
  }
  return p;
}

std::optional<std::vector<std::size_t>> PairProduct::path_to_final(std::size_t from) const {
  if (!coaccessible.at(from)) return std::nullopt;
  std::vector<std::size_t> path;
  std::size_t v = from;
  while (!final_pair[v]) {
    const std::size_t e = next_to_final[v];
    path.push_back(e);
    v = edges[e].dst;
  }
  return path;
}

std::optional<std::vector<std::size_t>> PairProduct::path_between(std::size_t from, std::size_t to,
                                                                  const std::vector<bool>& allowed_pairs) const {
  std::vector<std::size_t> via(num_pairs(), npos);
  std::vector<bool> seen(num_pairs(), false);
  std::deque<std::size_t> queue{from};
  seen[from] = true;
  bool found = false;
  // A closed walk from a pair to itself needs at least one edge, so the
  // target is checked on edge arrival rather than on dequeue.
  while (!queue.empty() && !found) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t e : out[v]) {
      const std::size_t d = edges[e].dst;
      if (!allowed_pairs[d]) continue;
      if (d == to) {
        via[to] = e;
        found = true;
        break;
      }
      if (!seen[d]) {
        seen[d] = true;
        via[d] = e;
        queue.push_back(d);
      }
    }
  }
  if (!found) return std::nullopt;
  std::vector<std::size_t> path{via[to]};
  std::size_t v = edges[via[to]].src;
  while (v != from) {
    path.push_back(via[v]);
    v = edges[via[v]].src;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

namespace {

using Subset = std::vector<bool>;

struct SubsetSpace {
  std::map<Subset, std::size_t> ids;
  std::size_t cap;

  std::size_t intern(const Subset& s) {
    auto [it, inserted] = ids.emplace(s, ids.size());
    if (inserted && ids.size() > cap) {
      throw ResourceLimitError("domain inclusion: subset construction exceeded " + std::to_string(cap) + " states");
    }
    return it->second;
  }
};

Subset step(const WeightedAutomaton& x, const Subset& from, LetterId l) {
  Subset next(x.num_states(), false);
  for (StateId q = 0; q < x.num_states(); ++q) {
    if (!from[q]) continue;
    for (std::size_t t : x.outgoing(q)) {
      if (x.transition(t).letter == l) next[x.transition(t).dst] = true;
    }
  }
  return next;
}

bool meets_final(const WeightedAutomaton& x, const Subset& s) {
  for (StateId q = 0; q < x.num_states(); ++q) {
    if (s[q] && x.is_final(q)) return true;
  }
  return false;
}

}  // namespace

DomainCheck domain_included(const WeightedAutomaton& a, const WeightedAutomaton& b, std::size_t subset_cap) {
  if (a.alphabet() != b.alphabet()) throw InputError("domain inclusion over different alphabets");
  // Both sides are determinized, so every node stands for the set of words
  // reaching it and the FIFO visits nodes in (length, lexicographic) order
  // of their least word. The first counterexample is therefore the shortest,
  // then lexicographically least.
  SubsetSpace space{{}, subset_cap};
  struct Node {
    Subset sa, sb;
    std::size_t parent;
    LetterId letter;
  };
  std::vector<Node> nodes;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  Subset sa(a.num_states(), false), sb(b.num_states(), false);
  sa[a.initial()] = true;
  sb[b.initial()] = true;
  // The start node is not marked seen: the empty word is not a word, so
  // reaching the start again by a nonempty word must still be checked.
  nodes.push_back({sa, sb, npos, 0});
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    for (LetterId l = 0; l < a.num_letters(); ++l) {
      Subset na = step(a, nodes[head].sa, l);
      if (std::none_of(na.begin(), na.end(), [](bool x) { return x; })) continue;
      Subset nb = step(b, nodes[head].sb, l);
      if (!seen.insert({space.intern(na), space.intern(nb)}).second) continue;
      const bool counter = meets_final(a, na) && !meets_final(b, nb);
      nodes.push_back({std::move(na), std::move(nb), head, l});
      if (counter) {
        Word w;
        for (std::size_t i = nodes.size() - 1; nodes[i].parent != npos; i = nodes[i].parent) w.push_back(nodes[i].letter);
        std::reverse(w.begin(), w.end());
        return DomainCheck{false, std::move(w)};
      }
    }
  }
  return DomainCheck{true, std::nullopt};
}

DomainCheck domain_equal(const WeightedAutomaton& a, const WeightedAutomaton& b, std::size_t subset_cap) {
  DomainCheck ab = domain_included(a, b, subset_cap);
  DomainCheck ba = domain_included(b, a, subset_cap);
  if (ab.holds) return ba;
  if (ba.holds) return ab;
  const Word& x = *ab.counterexample;
  const Word& y = *ba.counterexample;
  const bool x_first = x.size() != y.size() ? x.size() < y.size() : x <= y;
  return x_first ? ab : ba;
}

WeightedAutomaton end_marked_language(const WeightedAutomaton& a, LetterId end) {
  AutomatonBuilder b(a.measure());
  const Weight zero = a.measure().is_ratio() ? Weight::ratio(0, 1) : Weight::scalar(Rational(0));
  for (const auto& l : a.alphabet()) b.add_letter(l);
  b.set_initial("body").add_final("done");
  for (LetterId l = 0; l < a.num_letters(); ++l) {
    b.add_transition("body", a.letter_name(l), l == end ? "done" : "body", zero);
  }
  return b.build();
}

Components strongly_connected(std::size_t n, const std::vector<std::vector<std::size_t>>& succ) {
  Components out;
  out.comp.assign(n, npos);
  std::vector<std::size_t> index(n, npos), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  std::size_t counter = 0;
  struct Frame {
    std::size_t v;
    std::size_t next;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != npos) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < succ[f.v].size()) {
        const std::size_t w = succ[f.v][f.next++];
        if (index[w] == npos) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const std::size_t v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        while (true) {
          const std::size_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          out.comp[w] = out.count;
          if (w == v) break;
        }
        ++out.count;
      }
    }
  }
  return out;
}

}  // namespace wa
