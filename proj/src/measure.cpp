#include "wa/measure.hpp"

#include "wa/error.hpp"

namespace wa {

Measure Measure::dsum(const Rational& lambda) {
  if (lambda.sign() <= 0 || lambda >= Rational(1)) {
    throw InputError("discount factor " + lambda.str() + " is not in ]0,1[");
  }
  return Measure(MeasureKind::Dsum, lambda);
}

std::string Measure::name() const {
  switch (kind_) {
    case MeasureKind::Sum: return "sum";
    case MeasureKind::Avg: return "avg";
    case MeasureKind::Ratio: return "ratio";
    case MeasureKind::Dsum: return "dsum " + lambda_.str();
  }
  return "?";
}

Weight Weight::ratio(const Integer& reward, const Integer& cost) {
  if (reward < 0) throw InputError("ratio reward must be a natural number");
  if (cost < 1) throw InputError("ratio cost must be a positive natural number");
  return Weight(Rational(reward), Rational(cost), true);
}

const Rational& Weight::cost() const {
  if (!pair_) throw InputError("scalar weight has no cost component");
  return cost_;
}

std::string Weight::str() const {
  auto fmt = [](const Rational& r) {
    return r.is_integer() ? r.numerator().get_str() : r.str();
  };
  return pair_ ? fmt(value_) + " " + fmt(cost_) : fmt(value_);
}

Rational measure_value(const Measure& measure, std::span<const Weight> weights) {
  const bool want_pair = measure.is_ratio();
  for (const Weight& w : weights) {
    if (w.is_pair() != want_pair) {
      throw InputError("weight kind does not match measure " + measure.name());
    }
  }
  if (weights.empty()) return Rational(0);
  switch (measure.kind()) {
    case MeasureKind::Sum:
    case MeasureKind::Avg: {
      Rational total;
      for (const Weight& w : weights) total += w.value();
      if (measure.kind() == MeasureKind::Avg) total /= Rational(static_cast<long long>(weights.size()));
      return total;
    }
    case MeasureKind::Dsum: {
      Rational total;
      Rational factor(1);
      for (const Weight& w : weights) {
        total += factor * w.value();
        factor *= measure.lambda();
      }
      return total;
    }
    case MeasureKind::Ratio: {
      Rational rewards, costs;
      for (const Weight& w : weights) {
        rewards += w.reward();
        costs += w.cost();
      }
      return rewards / costs;
    }
  }
  return Rational(0);
}

}  // namespace wa
