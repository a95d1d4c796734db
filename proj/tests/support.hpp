#pragma once

// Fixtures and random instance generators shared by the unit tests and the
// acceptance runner.

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "wa/automaton.hpp"
#include "wa/games.hpp"
#include "wa/text_format.hpp"

namespace wa::test {

inline std::string data_path(const std::string& name) { return std::string(WA_TEST_DATA) + "/" + name; }

inline WeightedAutomaton fixture(const std::string& name) { return parse_automaton(read_file(data_path(name))); }

inline Word word(const WeightedAutomaton& a, const std::string& text) { return a.parse_word(text); }

struct RandomSpec {
  std::size_t max_states = 5;
  std::size_t max_letters = 2;
  int max_weight = 3;  // |w| <= max_weight; ratio rewards in [0, W], costs in [1, W]
  double density = 0.35;
};

/// Uniformly random automaton: every (src, letter, dst) triple is present
/// with probability `density`; occasionally a parallel copy with another
/// weight is added.
inline WeightedAutomaton random_automaton(std::mt19937_64& rng, const Measure& m, const RandomSpec& spec = {}) {
  std::uniform_int_distribution<std::size_t> ns(1, spec.max_states), nl(1, spec.max_letters);
  std::uniform_int_distribution<int> w(-spec.max_weight, spec.max_weight), r(0, spec.max_weight),
      c(1, std::max(1, spec.max_weight));
  std::bernoulli_distribution edge(spec.density), fin(0.4), parallel(0.1);
  const std::size_t n = ns(rng), l = nl(rng);
  AutomatonBuilder b(m);
  auto state = [](std::size_t i) { return "s" + std::to_string(i); };
  for (std::size_t i = 0; i < n; ++i) b.add_state(state(i));
  for (std::size_t j = 0; j < l; ++j) b.add_letter(std::string(1, char('a' + j)));
  b.set_initial(state(0));
  bool any_final = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (fin(rng)) {
      b.add_final(state(i));
      any_final = true;
    }
  }
  if (!any_final) b.add_final(state(n - 1));
  auto weight = [&] { return m.is_ratio() ? Weight::ratio(r(rng), c(rng)) : Weight::scalar(Rational(w(rng))); };
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t j = 0; j < l; ++j) {
      for (std::size_t d = 0; d < n; ++d) {
        if (!edge(rng)) continue;
        const std::string letter(1, char('a' + j));
        const Weight first = weight();
        b.add_transition(state(s), letter, state(d), first);
        if (parallel(rng)) {
          const Weight second = weight();
          if (!(second == first)) b.add_transition(state(s), letter, state(d), second);
        }
      }
    }
  }
  return b.build();
}

/// Functional by construction: a random deterministic automaton in which
/// some states are split into copies that carry the same weights, plus an
/// optional single-weight perturbation that usually breaks functionality.
inline WeightedAutomaton random_split_automaton(std::mt19937_64& rng, const Measure& m, const RandomSpec& spec = {},
                                                bool perturb = false) {
  std::uniform_int_distribution<std::size_t> nl(1, spec.max_letters);
  std::uniform_int_distribution<std::size_t> ns(1, std::max<std::size_t>(1, spec.max_states - 1));
  std::uniform_int_distribution<int> w(-spec.max_weight, spec.max_weight), r(0, spec.max_weight),
      c(1, std::max(1, spec.max_weight));
  std::bernoulli_distribution present(0.7), fin(0.4);
  const std::size_t base = ns(rng), l = nl(rng);
  const std::size_t copies = std::min(spec.max_states, base + 1 + rng() % 2) - base;  // extra copies
  std::vector<std::size_t> origin(base);
  for (std::size_t i = 0; i < base; ++i) origin[i] = i;
  for (std::size_t k = 0; k < copies; ++k) origin.push_back(rng() % base);
  const std::size_t n = origin.size();

  // delta(q, a) over the base automaton, then every copy of q behaves like q
  // and every edge into q' may go to any copy of q'.
  struct Edge {
    bool present;
    std::size_t dst;
    Weight weight;
  };
  std::vector<std::vector<Edge>> delta(base, std::vector<Edge>(l));
  std::vector<bool> final_base(base);
  for (std::size_t q = 0; q < base; ++q) {
    final_base[q] = fin(rng);
    for (std::size_t j = 0; j < l; ++j) {
      delta[q][j] = {present(rng), std::size_t(rng() % base),
                     m.is_ratio() ? Weight::ratio(r(rng), c(rng)) : Weight::scalar(Rational(w(rng)))};
    }
  }
  if (std::none_of(final_base.begin(), final_base.end(), [](bool f) { return f; })) final_base[base - 1] = true;

  AutomatonBuilder b(m);
  auto state = [](std::size_t i) { return "s" + std::to_string(i); };
  for (std::size_t i = 0; i < n; ++i) {
    b.add_state(state(i));
    if (final_base[origin[i]]) b.add_final(state(i));
  }
  for (std::size_t j = 0; j < l; ++j) b.add_letter(std::string(1, char('a' + j)));
  b.set_initial(state(0));
  bool perturbed = !perturb;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t j = 0; j < l; ++j) {
      const Edge& e = delta[origin[s]][j];
      if (!e.present) continue;
      for (std::size_t d = 0; d < n; ++d) {
        if (origin[d] != e.dst) continue;
        Weight wt = e.weight;
        if (!perturbed && d >= base) {
          wt = m.is_ratio() ? Weight::ratio(wt.reward() == 0 ? 1 : 0, wt.cost().numerator())
                            : Weight::scalar(wt.value() + 1);
          perturbed = true;
        }
        b.add_transition(state(s), std::string(1, char('a' + j)), state(d), wt);
      }
    }
  }
  return b.build();
}

/// Reweights `a` by a potential phi on states: w' = w + lambda*phi(dst) -
/// phi(src) (lambda = 1 unless Dsum), phi = 0 on the initial and final
/// states. Run values are unchanged while parallel runs pick up delays.
/// phi is a multiple of the denominator of lambda so weights stay integral.
/// Ratio automata are returned unchanged.
inline WeightedAutomaton potential_shift(std::mt19937_64& rng, const WeightedAutomaton& a, int max_phi = 2) {
  const Measure& m = a.measure();
  if (m.is_ratio()) return a;
  const Rational lambda = m.kind() == MeasureKind::Dsum ? m.lambda() : Rational(1);
  std::uniform_int_distribution<int> d(-max_phi, max_phi);
  std::vector<Rational> phi(a.num_states());
  for (StateId s = 0; s < a.num_states(); ++s) {
    if (s != a.initial() && !a.is_final(s)) phi[s] = Rational(d(rng)) * Rational(lambda.denominator());
  }
  AutomatonBuilder b(m);
  for (const auto& l : a.alphabet()) b.add_letter(l);
  for (StateId s = 0; s < a.num_states(); ++s) {
    b.add_state(a.state_name(s));
    if (a.is_final(s)) b.add_final(a.state_name(s));
  }
  b.set_initial(a.state_name(a.initial()));
  for (const auto& t : a.transitions()) {
    const Rational w = t.weight.value() + lambda * phi[t.dst] - phi[t.src];
    b.add_transition(a.state_name(t.src), a.letter_name(t.letter), a.state_name(t.dst), Weight::scalar(w));
  }
  return b.build();
}

/// Unambiguous automaton in the style of Fig. 1 (right): a random complete
/// DFA C with two states splits the words into two classes by the state
/// reached; class i is weighted by a one-state deterministic automaton D_i
/// whose weights depend on the letter and on the C-state, either shared by
/// both classes or drawn independently. The result is the
/// union of D_0 x C (accepting in class 0) and D_1 x C (class 1) behind a
/// fresh initial state, so parallel runs follow different weights.
inline WeightedAutomaton random_class_union(std::mt19937_64& rng, const Measure& m, std::size_t letters = 2) {
  std::uniform_int_distribution<int> w(-2, 2), r(0, 2), c(1, 2);
  auto weight = [&] { return m.is_ratio() ? Weight::ratio(r(rng), c(rng)) : Weight::scalar(Rational(w(rng))); };
  std::vector<std::vector<std::size_t>> delta(2, std::vector<std::size_t>(letters));
  for (auto& row : delta) {
    for (auto& d : row) d = rng() % 2;
  }
  AutomatonBuilder b(m);
  for (std::size_t j = 0; j < letters; ++j) b.add_letter(std::string(1, char('a' + j)));
  b.set_initial("i");
  auto name = [](std::size_t comp, std::size_t cstate) { return "c" + std::to_string(comp) + std::to_string(cstate); };
  // Half of the time both classes share their weights; a later
  // potential_shift then gives delays that stay bounded.
  const bool shared = rng() % 2 == 0;
  std::vector<std::vector<Weight>> base(2, std::vector<Weight>(letters));
  for (auto& row : base) {
    for (auto& x : row) x = weight();
  }
  for (std::size_t comp = 0; comp < 2; ++comp) {
    b.add_final(name(comp, comp));
    for (std::size_t cs = 0; cs < 2; ++cs) {
      for (std::size_t j = 0; j < letters; ++j) {
        const Weight wt = shared ? base[cs][j] : weight();
        const std::string letter(1, char('a' + j));
        b.add_transition(name(comp, cs), letter, name(comp, delta[cs][j]), wt);
        if (cs == 0) b.add_transition("i", letter, name(comp, delta[0][j]), wt);
      }
    }
  }
  return b.build();
}

/// Mix of the generators: uniform automata, split automata (half of them
/// perturbed), and potential-shifted split automata.
inline WeightedAutomaton random_mixed(std::mt19937_64& rng, const Measure& m, const RandomSpec& spec = {}) {
  switch (rng() % 4) {
    case 0:
      return random_automaton(rng, m, spec);
    case 1:
      return random_split_automaton(rng, m, spec, false);
    case 2:
      return random_split_automaton(rng, m, spec, true);
    default:
      return potential_shift(rng, random_split_automaton(rng, m, spec, rng() % 3 == 0));
  }
}

/// Words of length 1..max_len over the alphabet of `a`, shortest first.
inline std::vector<Word> all_words(const WeightedAutomaton& a, std::size_t max_len) {
  std::vector<Word> out;
  std::vector<Word> layer{Word{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const Word& w : layer) {
      for (LetterId l = 0; l < a.num_letters(); ++l) {
        Word x = w;
        x.push_back(l);
        next.push_back(x);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

/// Alternating arena over {#, a, b}: O owns # and sometimes a.
inline GameArena random_arena(std::mt19937_64& rng, const Measure& m) {
  std::uniform_int_distribution<int> w(-2, 2), r(0, 2), c(1, 2);
  std::bernoulli_distribution present(0.75), end_move(0.7);
  const bool o_has_a = rng() % 2 == 0;
  const std::vector<std::string> o_letters = o_has_a ? std::vector<std::string>{"a"} : std::vector<std::string>{};
  const std::vector<std::string> i_letters = o_has_a ? std::vector<std::string>{"b"} : std::vector<std::string>{"a", "b"};
  const std::size_t no = 1 + rng() % 3, ni = 1 + rng() % 2;  // plus f: at most 6 states
  auto weight = [&] { return m.is_ratio() ? Weight::ratio(r(rng), c(rng)) : Weight::scalar(Rational(w(rng))); };
  AutomatonBuilder b(m);
  std::map<std::string, Owner> owners;
  for (const char* l : {"#", "a", "b"}) b.add_letter(l);
  b.set_end_symbol("#");
  for (std::size_t k = 0; k < no; ++k) {
    b.add_state("o" + std::to_string(k));
    owners["o" + std::to_string(k)] = Owner::O;
  }
  for (std::size_t k = 0; k < ni; ++k) {
    b.add_state("i" + std::to_string(k));
    owners["i" + std::to_string(k)] = Owner::I;
  }
  b.add_state("f");
  owners["f"] = Owner::I;
  b.add_final("f");
  b.set_initial("o0");
  for (std::size_t k = 0; k < no; ++k) {
    const std::string s = "o" + std::to_string(k);
    if (end_move(rng)) b.add_transition(s, "#", "f", weight());
    for (const auto& l : o_letters) {
      if (present(rng)) b.add_transition(s, l, "i" + std::to_string(rng() % ni), weight());
    }
  }
  for (std::size_t k = 0; k < ni; ++k) {
    const std::string s = "i" + std::to_string(k);
    for (const auto& l : i_letters) {
      if (present(rng)) b.add_transition(s, l, "o" + std::to_string(rng() % no), weight());
    }
  }
  return validate_arena(b.build(), owners);
}

}  // namespace wa::test
