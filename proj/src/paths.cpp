#include "wa/paths.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace wa {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

std::vector<bool> forward_reach(const WeightedGraph& g) {
  std::vector<std::vector<std::size_t>> succ(g.num_vertices);
  for (const auto& e : g.edges) succ[e.src].push_back(e.dst);
  std::vector<bool> seen(g.num_vertices, false);
  std::vector<std::size_t> stack{g.source};
  seen[g.source] = true;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t d : succ[v]) {
      if (!seen[d]) {
        seen[d] = true;
        stack.push_back(d);
      }
    }
  }
  return seen;
}

std::vector<bool> backward_reach(const WeightedGraph& g) {
  std::vector<std::vector<std::size_t>> pred(g.num_vertices);
  for (const auto& e : g.edges) pred[e.dst].push_back(e.src);
  std::vector<bool> seen(g.num_vertices, false);
  std::vector<std::size_t> stack;
  for (std::size_t v = 0; v < g.num_vertices; ++v) {
    if (g.target[v]) {
      seen[v] = true;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t p : pred[v]) {
      if (!seen[p]) {
        seen[p] = true;
        stack.push_back(p);
      }
    }
  }
  return seen;
}

/// Shortest path (edge indices of `g`) over `usable` edges from `from`,
/// stopping at the first vertex satisfying `goal` (possibly `from` itself).
template <typename Goal>
std::optional<std::vector<std::size_t>> bfs_path(const WeightedGraph& g, const std::vector<bool>& usable,
                                                 std::size_t from, Goal goal) {
  std::vector<std::vector<std::size_t>> out(g.num_vertices);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (usable[i]) out[g.edges[i].src].push_back(i);
  }
  std::vector<std::size_t> via(g.num_vertices, npos);
  std::vector<bool> seen(g.num_vertices, false);
  std::deque<std::size_t> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    if (goal(v)) {
      std::vector<std::size_t> path;
      for (std::size_t x = v; x != from; x = g.edges[via[x]].src) path.push_back(via[x]);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (std::size_t e : out[v]) {
      const std::size_t d = g.edges[e].dst;
      if (!seen[d]) {
        seen[d] = true;
        via[d] = e;
        queue.push_back(d);
      }
    }
  }
  return std::nullopt;
}

Rational path_sum(const WeightedGraph& g, const std::vector<std::size_t>& path) {
  Rational s;
  for (std::size_t e : path) s += g.edges[e].weight;
  return s;
}

bool meets(const Rational& value, const Rational& threshold, bool strict) {
  return strict ? value > threshold : value >= threshold;
}

}  // namespace

std::optional<std::vector<std::size_t>> find_sum_path(const WeightedGraph& g, const Rational& threshold,
                                                      bool strict) {
  const auto reach = forward_reach(g);
  const auto coreach = backward_reach(g);
  std::vector<bool> usable(g.edges.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    usable[i] = reach[g.edges[i].src] && coreach[g.edges[i].dst];
  }

  // Bellman-Ford (maximizing) from a virtual start vertex whose edges copy
  // the source's, so that only nonempty paths are measured.
  const std::size_t start = g.num_vertices;
  struct Rel {
    std::size_t src, dst, origin;
  };
  std::vector<Rel> rel;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (!usable[i]) continue;
    rel.push_back({g.edges[i].src, g.edges[i].dst, i});
    if (g.edges[i].src == g.source) rel.push_back({start, g.edges[i].dst, i});
  }
  std::vector<std::optional<Rational>> dist(g.num_vertices + 1);
  std::vector<std::size_t> pred(g.num_vertices + 1, npos);
  dist[start] = Rational(0);
  auto relax_once = [&]() -> std::size_t {
    std::size_t changed = npos;
    for (std::size_t r = 0; r < rel.size(); ++r) {
      const auto& e = rel[r];
      if (!dist[e.src]) continue;
      Rational cand = *dist[e.src] + g.edges[e.origin].weight;
      if (!dist[e.dst] || cand > *dist[e.dst]) {
        dist[e.dst] = std::move(cand);
        pred[e.dst] = r;
        changed = r;
      }
    }
    return changed;
  };
  for (std::size_t round = 0; round < g.num_vertices; ++round) {
    if (relax_once() == npos) break;
  }
  const std::size_t witness_rel = relax_once();

  if (witness_rel != npos) {
    // Positive cycle: walk predecessors long enough to land on it.
    std::size_t v = rel[witness_rel].dst;
    for (std::size_t i = 0; i <= g.num_vertices; ++i) v = rel[pred[v]].src;
    std::vector<std::size_t> cycle;
    std::size_t x = v;
    do {
      cycle.push_back(rel[pred[x]].origin);
      x = rel[pred[x]].src;
    } while (x != v);
    std::reverse(cycle.begin(), cycle.end());
    const Rational cycle_weight = path_sum(g, cycle);

    // Access must be nonempty, so search from the source's successors.
    std::vector<std::size_t> access;
    std::optional<std::vector<std::size_t>> best_access;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      if (!usable[i] || g.edges[i].src != g.source) continue;
      auto tail = bfs_path(g, usable, g.edges[i].dst, [&](std::size_t y) { return y == v; });
      if (!tail) continue;
      tail->insert(tail->begin(), i);
      if (!best_access || tail->size() < best_access->size()) best_access = std::move(tail);
    }
    access = std::move(*best_access);
    auto coaccess = *bfs_path(g, usable, v, [&](std::size_t y) { return bool(g.target[y]); });
    const Rational base = path_sum(g, access) + path_sum(g, coaccess);
    Integer k = 0;
    if (!meets(base, threshold, strict)) {
      k = floor_div(threshold - base, cycle_weight);
      if (strict || Rational(k) * cycle_weight + base < threshold) k += 1;
    }
    std::vector<std::size_t> path = access;
    for (Integer i = 0; i < k; ++i) path.insert(path.end(), cycle.begin(), cycle.end());
    path.insert(path.end(), coaccess.begin(), coaccess.end());
    return path;
  }

  std::optional<std::size_t> best_target;
  for (std::size_t t = 0; t < g.num_vertices; ++t) {
    if (!g.target[t] || !dist[t]) continue;
    if (!best_target || *dist[t] > *dist[*best_target]) best_target = t;
  }
  if (!best_target || !meets(*dist[*best_target], threshold, strict)) return std::nullopt;
  std::vector<std::size_t> path;
  for (std::size_t x = *best_target; x != start; x = rel[pred[x]].src) path.push_back(rel[pred[x]].origin);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<Rational> evaluate_policy(const DiscountedGame& game, const std::vector<std::size_t>& choice) {
  const std::size_t n = game.num_vertices;
  std::vector<Rational> value(n);
  std::vector<int> state(n, 0);  // 0 new, 1 on current walk, 2 solved
  std::vector<std::size_t> position(n, npos);
  for (std::size_t root = 0; root < n; ++root) {
    if (state[root] != 0) continue;
    std::vector<std::size_t> walk;
    std::size_t v = root;
    while (state[v] == 0) {
      state[v] = 1;
      position[v] = walk.size();
      walk.push_back(v);
      v = game.edges[choice[v]].dst;
    }
    std::size_t solved_from = walk.size();
    if (state[v] == 1) {
      const std::size_t k = position[v];
      const std::size_t len = walk.size() - k;
      Rational num;
      Rational factor(1);
      for (std::size_t j = 0; j < len; ++j) {
        num += factor * game.edges[choice[walk[k + j]]].weight;
        factor *= game.lambda;
      }
      value[walk[k]] = num / (Rational(1) - factor);
      state[walk[k]] = 2;
      for (std::size_t j = walk.size() - 1; j > k; --j) {
        const auto& e = game.edges[choice[walk[j]]];
        value[walk[j]] = e.weight + game.lambda * value[e.dst];
        state[walk[j]] = 2;
      }
      solved_from = k;
    }
    for (std::size_t j = solved_from; j-- > 0;) {
      const auto& e = game.edges[choice[walk[j]]];
      value[walk[j]] = e.weight + game.lambda * value[e.dst];
      state[walk[j]] = 2;
    }
  }
  return value;
}

DiscountedSolution solve_discounted(const DiscountedGame& game) {
  const std::size_t n = game.num_vertices;
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t i = 0; i < game.edges.size(); ++i) out[game.edges[i].src].push_back(i);
  std::vector<std::size_t> choice(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (out[v].empty()) throw std::logic_error("discounted game vertex without moves");
    choice[v] = out[v].front();
  }
  auto lookahead = [&](std::size_t e, const std::vector<Rational>& value) {
    return game.edges[e].weight + game.lambda * value[game.edges[e].dst];
  };
  // Switches every vertex of the given owner to a strictly better edge.
  auto improve = [&](bool maximizer, const std::vector<Rational>& value) {
    bool changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (game.max_owned[v] != maximizer) continue;
      std::size_t best = choice[v];
      Rational best_q = value[v];
      for (std::size_t e : out[v]) {
        Rational q = lookahead(e, value);
        if (maximizer ? q > best_q : q < best_q) {
          best = e;
          best_q = std::move(q);
        }
      }
      if (best != choice[v]) {
        choice[v] = best;
        changed = true;
      }
    }
    return changed;
  };

  std::vector<Rational> value;
  while (true) {
    // Minimizer's best response to the current maximizer policy.
    do {
      value = evaluate_policy(game, choice);
    } while (improve(false, value));
    if (!improve(true, value)) break;
  }
  return DiscountedSolution{std::move(value), std::move(choice)};
}

std::optional<std::vector<std::size_t>> find_dsum_path(const WeightedGraph& g, const Rational& lambda,
                                                       const Rational& threshold) {
  const auto reach = forward_reach(g);
  const auto coreach = backward_reach(g);
  if (!reach[g.source] || !coreach[g.source]) return std::nullopt;
  std::vector<bool> usable(g.edges.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    usable[i] = reach[g.edges[i].src] && coreach[g.edges[i].dst];
  }

  // One-player game on the usable edges plus a 0-weight idle loop on every
  // useful target. origin[i] is the graph edge of game edge i, or npos for
  // an idle loop. Vertices outside the useful part get an idle loop only to
  // keep the solver total; their values are never consulted.
  DiscountedGame game;
  game.num_vertices = g.num_vertices;
  game.lambda = lambda;
  game.max_owned.assign(g.num_vertices, true);
  std::vector<std::size_t> origin;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (!usable[i]) continue;
    game.edges.push_back(g.edges[i]);
    origin.push_back(i);
  }
  for (std::size_t v = 0; v < g.num_vertices; ++v) {
    const bool useful = reach[v] && coreach[v];
    if (!useful || g.target[v]) {
      game.edges.push_back({v, v, Rational(0)});
      origin.push_back(npos);
    }
  }
  const DiscountedSolution sol = solve_discounted(game);

  // The first move must be a real transition: the empty word is excluded.
  std::optional<std::size_t> first;
  Rational best;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (!usable[i] || g.edges[i].src != g.source) continue;
    Rational q = g.edges[i].weight + lambda * sol.values[g.edges[i].dst];
    if (!first || q > best) {
      first = i;
      best = std::move(q);
    }
  }
  if (!first || best <= threshold) return std::nullopt;

  std::vector<std::size_t> path{*first};
  Rational prefix = g.edges[*first].weight;
  Rational factor = lambda;
  std::size_t at = g.edges[*first].dst;
  constexpr std::size_t kMaxSteps = 1'000'000;
  for (std::size_t step = 0; step < kMaxSteps; ++step) {
    if (g.target[at] && prefix > threshold) return path;
    auto completion = *bfs_path(g, usable, at, [&](std::size_t y) { return bool(g.target[y]); });
    Rational tail;
    Rational f = factor;
    for (std::size_t e : completion) {
      tail += f * g.edges[e].weight;
      f *= lambda;
    }
    if (prefix + tail > threshold) {
      path.insert(path.end(), completion.begin(), completion.end());
      return path;
    }
    const std::size_t e = origin[sol.choice[at]];
    if (e == npos) {
      throw std::logic_error("discounted witness: optimal policy idles below the threshold");
    }
    path.push_back(e);
    prefix += factor * g.edges[e].weight;
    factor *= lambda;
    at = g.edges[e].dst;
  }
  throw std::logic_error("discounted witness extraction did not converge");
}

}  // namespace wa
