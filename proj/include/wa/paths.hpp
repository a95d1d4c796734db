#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wa/rational.hpp"

namespace wa {

/// Edge-weighted digraph with a source and a set of target vertices; the
/// common shape of every "is there an accepting path with value ~ t"
/// question once an automaton (or a difference product) is reweighted.
struct WeightedGraph {
  struct Edge {
    std::size_t src;
    std::size_t dst;
    Rational weight;
  };
  std::size_t num_vertices = 0;
  std::size_t source = 0;
  std::vector<bool> target;
  std::vector<Edge> edges;
};

/// Nonempty source-to-target path whose weight sum is > threshold (strict)
/// or >= threshold. When a positive cycle lies on a source-target path the
/// cycle is pumped just enough times to clear the threshold, so a concrete
/// path is always returned when one exists. Returns edge indices.
std::optional<std::vector<std::size_t>> find_sum_path(const WeightedGraph& g, const Rational& threshold,
                                                      bool strict);

/// Nonempty source-to-target path whose discounted sum (factor lambda) is
/// strictly greater than threshold, via the one-player discounted game with a
/// 0-weight idle loop on targets.
std::optional<std::vector<std::size_t>> find_dsum_path(const WeightedGraph& g, const Rational& lambda,
                                                       const Rational& threshold);

/// Two-player zero-sum discounted game on a finite graph. Every vertex needs
/// at least one outgoing edge. Max vertices maximize, the others minimize.
struct DiscountedGame {
  std::size_t num_vertices = 0;
  std::vector<bool> max_owned;
  std::vector<WeightedGraph::Edge> edges;
  Rational lambda;
};

struct DiscountedSolution {
  std::vector<Rational> values;
  /// Optimal memoryless choice (edge index) for every vertex.
  std::vector<std::size_t> choice;
};

/// Exact solution by strategy iteration (policy iteration for the minimizer
/// nested inside Hoffman-Karp improvement for the maximizer).
DiscountedSolution solve_discounted(const DiscountedGame& game);

/// Exact values of the play induced by fixing one edge per vertex: every
/// induced path is a lasso, solved as stem + cycle / (1 - lambda^len).
std::vector<Rational> evaluate_policy(const DiscountedGame& game, const std::vector<std::size_t>& choice);

}  // namespace wa
