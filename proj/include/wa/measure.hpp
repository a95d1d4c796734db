#pragma once

#include <span>
#include <string>

#include "wa/rational.hpp"

namespace wa {

enum class MeasureKind { Sum, Avg, Dsum, Ratio };

/// Value aggregator of an automaton. Dsum carries its discount factor,
/// which is always strictly between 0 and 1.
class Measure {
 public:
  static Measure sum() { return Measure(MeasureKind::Sum, Rational(1)); }
  static Measure avg() { return Measure(MeasureKind::Avg, Rational(1)); }
  static Measure ratio() { return Measure(MeasureKind::Ratio, Rational(1)); }
  static Measure dsum(const Rational& lambda);

  MeasureKind kind() const { return kind_; }
  bool is_ratio() const { return kind_ == MeasureKind::Ratio; }
  /// Discount factor; only meaningful for Dsum.
  const Rational& lambda() const { return lambda_; }

  std::string name() const;

  friend bool operator==(const Measure& a, const Measure& b) {
    return a.kind_ == b.kind_ && (a.kind_ != MeasureKind::Dsum || a.lambda_ == b.lambda_);
  }

 private:
  Measure(MeasureKind kind, Rational lambda) : kind_(kind), lambda_(std::move(lambda)) {}
  MeasureKind kind_;
  Rational lambda_;
};

/// Transition weight: a single rational for Sum/Avg/Dsum, or a
/// (reward >= 0, cost >= 1) pair of naturals for Ratio.
class Weight {
 public:
  Weight() = default;
  static Weight scalar(Rational value) { return Weight(std::move(value), Rational(0), false); }
  static Weight ratio(const Integer& reward, const Integer& cost);

  bool is_pair() const { return pair_; }
  /// The scalar weight, or the reward of a pair.
  const Rational& value() const { return value_; }
  const Rational& reward() const { return value_; }
  const Rational& cost() const;

  std::string str() const;

  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight& a, const Weight& b) {
    if (auto c = a.value_ <=> b.value_; c != 0) return c;
    return a.cost_ <=> b.cost_;
  }

 private:
  Weight(Rational value, Rational cost, bool pair)
      : value_(std::move(value)), cost_(std::move(cost)), pair_(pair) {}
  Rational value_;
  Rational cost_;
  bool pair_ = false;
};

/// Value of a weight sequence under a measure. The empty sequence has value
/// 0 for every measure; Avg divides by the number of weights; Dsum discounts
/// position i (0-based) by lambda^i.
Rational measure_value(const Measure& measure, std::span<const Weight> weights);

}  // namespace wa
