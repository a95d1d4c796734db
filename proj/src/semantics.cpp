#include "wa/semantics.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "wa/error.hpp"

namespace wa {

void validate_run(const WeightedAutomaton& a, const Run& run) {
  if (run.transitions.empty()) throw InputError("empty run");
  StateId at = a.initial();
  for (std::size_t idx : run.transitions) {
    if (idx >= a.num_transitions()) throw InputError("run refers to a nonexistent transition");
    const Transition& t = a.transition(idx);
    if (t.src != at) throw InputError("run is not a path from the initial state");
    at = t.dst;
  }
}

Word run_word(const WeightedAutomaton& a, const Run& run) {
  Word w;
  w.reserve(run.transitions.size());
  for (std::size_t idx : run.transitions) w.push_back(a.transition(idx).letter);
  return w;
}

StateId run_target(const WeightedAutomaton& a, const Run& run) {
  return run.transitions.empty() ? a.initial() : a.transition(run.transitions.back()).dst;
}

bool is_accepting(const WeightedAutomaton& a, const Run& run) { return a.is_final(run_target(a, run)); }

Rational path_value(const WeightedAutomaton& a, std::span<const std::size_t> transitions) {
  std::vector<Weight> weights;
  weights.reserve(transitions.size());
  for (std::size_t idx : transitions) weights.push_back(a.transition(idx).weight);
  return measure_value(a.measure(), weights);
}

std::optional<Rational> evaluate_run(const WeightedAutomaton& a, const Run& run) {
  validate_run(a, run);
  if (!is_accepting(a, run)) return std::nullopt;
  return path_value(a, run.transitions);
}

std::optional<Rational> evaluate_word(const WeightedAutomaton& a, const Word& word) {
  if (word.empty()) throw InputError("the empty word has no value");
  const Measure& m = a.measure();
  if (m.is_ratio()) {
    // The best ratio is not determined by a per-state maximum, so keep every
    // distinct (reward, cost) accumulation per state.
    std::map<StateId, std::set<std::pair<Rational, Rational>>> current{{a.initial(), {{Rational(0), Rational(0)}}}};
    for (LetterId letter : word) {
      std::map<StateId, std::set<std::pair<Rational, Rational>>> next;
      for (const auto& [s, accs] : current) {
        for (std::size_t idx : a.outgoing(s)) {
          const Transition& t = a.transition(idx);
          if (t.letter != letter) continue;
          for (const auto& [r, c] : accs) next[t.dst].insert({r + t.weight.reward(), c + t.weight.cost()});
        }
      }
      current = std::move(next);
    }
    std::optional<Rational> best;
    for (const auto& [s, accs] : current) {
      if (!a.is_final(s)) continue;
      for (const auto& [r, c] : accs) {
        Rational v = r / c;
        if (!best || v > *best) best = v;
      }
    }
    return best;
  }

  // Sum, Avg and Dsum: every run at position i is discounted/normalized the
  // same way, so the maximum per state suffices.
  std::map<StateId, Rational> current{{a.initial(), Rational(0)}};
  Rational factor(1);
  for (LetterId letter : word) {
    std::map<StateId, Rational> next;
    for (const auto& [s, acc] : current) {
      for (std::size_t idx : a.outgoing(s)) {
        const Transition& t = a.transition(idx);
        if (t.letter != letter) continue;
        Rational v = acc + factor * t.weight.value();
        auto [it, inserted] = next.emplace(t.dst, v);
        if (!inserted && v > it->second) it->second = std::move(v);
      }
    }
    current = std::move(next);
    if (m.kind() == MeasureKind::Dsum) factor *= m.lambda();
  }
  std::optional<Rational> best;
  for (const auto& [s, acc] : current) {
    if (a.is_final(s) && (!best || acc > *best)) best = acc;
  }
  if (best && m.kind() == MeasureKind::Avg) *best /= Rational(static_cast<long long>(word.size()));
  return best;
}

}  // namespace wa
