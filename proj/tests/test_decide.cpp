#include <doctest.h>

#include <random>

#include "support.hpp"
#include "wa/decide.hpp"
#include "wa/error.hpp"
#include "wa/functionality.hpp"
#include "wa/oracle.hpp"

using namespace wa;
using namespace wa::test;

namespace {

const ThresholdQuery gt(const Rational& nu) { return {nu, Comparison::Greater}; }
const ThresholdQuery ge(const Rational& nu) { return {nu, Comparison::GreaterEqual}; }

WeightedAutomaton single(const std::string& measure, int w) {
  return parse_automaton("measure " + measure + "\ninitial q\nfinals f\ntrans q a f " + std::to_string(w) + "\n");
}

}  // namespace

TEST_CASE("emptiness examples") {
  const auto five = single("sum", 5);
  const auto r = emptiness(five, gt(Rational(3)));
  REQUIRE_FALSE(r.holds);
  CHECK(five.format_word(r.witness->word) == "a");
  CHECK(r.witness->value_a == Rational(5));
  CHECK(emptiness(five, gt(Rational(5))).holds);
  CHECK_FALSE(emptiness(five, ge(Rational(5))).holds);

  // Positive loop on q_a: every threshold is reached.
  const WeightedAutomaton left = fixture("fig1_left.wa");
  for (int nu : {0, 10, 57}) {
    const auto e = emptiness(left, gt(Rational(nu)));
    REQUIRE_FALSE(e.holds);
    CHECK(*evaluate_word(left, e.witness->word) > Rational(nu));
  }

  const auto d = fixture("dsum_single.wa");
  CHECK(emptiness(d, gt(Rational(2))).holds);
  const auto dn = emptiness(d, gt(Rational(1)));
  REQUIRE_FALSE(dn.holds);
  CHECK(d.format_word(dn.witness->word) == "a");
  CHECK(dn.witness->value_a == Rational(2));
  CHECK_THROWS_AS(emptiness(d, ge(Rational(1))), UnsupportedError);
}

TEST_CASE("avg and ratio reweighting") {
  // a|3 then b|0 looping: averages 3, 3/2, 1, 3/4 ...
  const auto avg = parse_automaton("measure avg\ninitial q\nfinals f\ntrans q a f 3\ntrans f b f 0\n");
  CHECK_FALSE(emptiness(avg, gt(Rational(5, 2))).holds);
  CHECK(emptiness(avg, gt(Rational(3))).holds);
  CHECK_FALSE(emptiness(avg, ge(Rational(3))).holds);
  const auto u = universality(avg, gt(Rational(0)));
  CHECK(u.holds);
  CHECK_FALSE(universality(avg, ge(Rational(1, 2))).holds);

  const WeightedAutomaton remark = fixture("remark_ratio.wa");
  // The largest ratio is 2 (reward/cost of b on p, pumped).
  CHECK(emptiness(remark, gt(Rational(2))).holds);
  const auto r = emptiness(remark, gt(Rational(19, 10)));
  REQUIRE_FALSE(r.holds);
  CHECK(*evaluate_word(remark, r.witness->word) > Rational(19, 10));
}

TEST_CASE("universality examples") {
  CHECK(universality(single("sum", 5), ge(Rational(3))).holds);
  const WeightedAutomaton right = fixture("fig1_right.wa");
  CHECK(universality(right, ge(Rational(1))).holds);
  const auto two = universality(right, ge(Rational(2)));
  REQUIRE_FALSE(two.holds);
  CHECK(right.format_word(two.witness->word) == "ab");
  CHECK(two.witness->value_a == Rational(1));
  CHECK_THROWS_AS(universality(fixture("fig1_left.wa"), ge(Rational(0))), PreconditionError);
  CHECK_THROWS_AS(universality(fixture("dsum_single.wa"), gt(Rational(0))), UnsupportedError);
  CHECK(universality(fixture("dsum_single.wa"), ge(Rational(2))).holds);
  CHECK_FALSE(universality(fixture("dsum_single.wa"), ge(Rational(3))).holds);
}

TEST_CASE("inclusion examples") {
  CHECK(inclusion(single("sum", 1), single("sum", 2)).holds);
  const auto r = inclusion(single("sum", 2), single("sum", 1));
  REQUIRE_FALSE(r.holds);
  CHECK(r.witness->value_a == Rational(2));
  CHECK(*r.witness->value_b == Rational(1));
  const WeightedAutomaton right = fixture("fig1_right.wa");
  CHECK(inclusion(right, right).holds);
  // Domain counterexample: B undefined on "a".
  const auto dom = inclusion(fixture("fig1_left.wa"), right);
  REQUIRE_FALSE(dom.holds);
  CHECK_FALSE(dom.witness->value_b.has_value());
  CHECK_THROWS_AS(inclusion(right, fixture("fig1_left.wa")), PreconditionError);
  CHECK_THROWS_AS(inclusion(fixture("remark_ratio.wa"), fixture("remark_ratio.wa")), UnsupportedError);
  CHECK_THROWS_AS(inclusion(single("sum", 1), single("avg", 1)), InputError);
  // The difference weights accumulate across a loop before the sign shows.
  const auto a = parse_automaton("measure dsum 1/2\ninitial q\nfinals f\ntrans q a q 1\ntrans q b f 0\n");
  const auto b = parse_automaton("measure dsum 1/2\ninitial q\nfinals f\ntrans q a q 0\ntrans q b f 1\n");
  const auto d = inclusion(a, b);
  REQUIRE_FALSE(d.holds);
  CHECK(*evaluate_word(a, d.witness->word) > *evaluate_word(b, d.witness->word));
}

TEST_CASE("equivalence examples") {
  const WeightedAutomaton right = fixture("fig1_right.wa");
  CHECK(equivalence(right, right).holds);
  const auto r = equivalence(single("sum", 1), single("sum", 2));
  REQUIRE_FALSE(r.holds);
  CHECK(r.witness->value_a == Rational(1));
  CHECK(*r.witness->value_b == Rational(2));
  CHECK_FALSE(r.domain_mismatch);

  // Remark automaton restricted to {a, b, d}, against a copy whose q-branch
  // cost on c changes; the two agree on every c-free word.
  const std::string base =
      "measure ratio\ninitial qI\nfinals pf qf\ntrans qI a p 2 2\ntrans p b p 2 1\ntrans p d pf 1 1\n"
      "trans qI a q 1 2\ntrans q b q 2 1\ntrans q d qf 2 1\n";
  const auto x = parse_automaton(base + "trans p c p 2 2\ntrans q c q 1 1\n");
  CHECK_FALSE(check_functional(x).functional);
  const auto abd = parse_automaton(base);
  CHECK(equivalence(abd, abd).holds);
  // Deterministic variants: keep only the p-branch.
  const auto px = parse_automaton(
      "measure ratio\ninitial qI\nfinals pf\ntrans qI a p 2 2\ntrans p b p 2 1\ntrans p c p 2 2\ntrans p d pf 1 1\n");
  const auto py = parse_automaton(
      "measure ratio\ninitial qI\nfinals pf\ntrans qI a p 2 2\ntrans p b p 2 1\ntrans p c p 2 1\ntrans p d pf 1 1\n");
  const auto e = equivalence(px, py);
  REQUIRE_FALSE(e.holds);
  CHECK(evaluate_word(px, e.witness->word) != evaluate_word(py, e.witness->word));

  // Same values where both are defined, different domains.
  const auto longer = parse_automaton("measure sum\ninitial q\nfinals f\ntrans q a f 1\ntrans f a f 0\n");
  const auto dom = equivalence(single("sum", 1), longer);
  REQUIRE_FALSE(dom.holds);
  CHECK(dom.domain_mismatch);
  CHECK_FALSE(dom.only_in_a);
  CHECK(longer.format_word(dom.witness->word) == "aa");
}

TEST_CASE("equivalence needs functional inputs") {
  CHECK_THROWS_AS(equivalence(fixture("fig1_left.wa"), fixture("fig1_left.wa")), PreconditionError);
}

TEST_CASE("union construction") {
  const WeightedAutomaton right = fixture("fig1_right.wa");
  const WeightedAutomaton u = disjoint_union(right, right);
  CHECK(u.num_states() == 2 * right.num_states() + 1);
  for (const Word& w : all_words(right, 5)) CHECK(evaluate_word(u, w) == evaluate_word(right, w));
}

TEST_CASE("random threshold queries against enumeration") {
  std::mt19937_64 rng(31);
  RandomSpec spec;
  spec.max_states = 4;
  for (const Measure& m : {Measure::sum(), Measure::avg(), Measure::dsum(Rational(1, 2)), Measure::ratio()}) {
    for (int i = 0; i < 60; ++i) {
      const WeightedAutomaton a = random_mixed(rng, m, spec);
      const auto table = oracle::enumerate_values(a, 6);
      for (const Rational& nu : {Rational(-1), Rational(0), Rational(2)}) {
        const auto e = emptiness(a, gt(nu));
        std::optional<Word> least;
        for (const auto& [w, v] : table.values) {
          if (!(*table.max_value(w) > nu)) continue;
          if (!least || w.size() < least->size() || (w.size() == least->size() && w < *least)) least = w;
        }
        if (least) {
          REQUIRE_FALSE(e.holds);
          CHECK(e.witness->word == *least);
        }
        if (!e.holds) CHECK(*evaluate_word(a, e.witness->word) > nu);
      }
    }
  }
}
