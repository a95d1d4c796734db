#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace wa {

using Integer = mpz_class;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Every value, delay, threshold and discount factor in the
/// library is a Rational; nothing is ever computed in floating point.
class Rational {
 public:
  Rational() = default;
  Rational(long long value) : value_(static_cast<long>(value)) {}  // NOLINT
  Rational(const Integer& value) : value_(value) {}                // NOLINT
  Rational(const Integer& num, const Integer& den);

  /// Accepts "p/q", "-p/q" or a plain integer. Anything else (decimals,
  /// exponents, zero denominators) is rejected with std::invalid_argument.
  static Rational parse(std::string_view text);

  Integer numerator() const { return value_.get_num(); }
  Integer denominator() const { return value_.get_den(); }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  Rational abs() const;
  Rational pow(unsigned exponent) const;

  /// Always "p/q", including "0/1" and "5/1".
  std::string str() const;

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const;

  const mpq_class& raw() const { return value_; }

 private:
  explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// floor(a / b) for b > 0.
Integer floor_div(const Rational& a, const Rational& b);

}  // namespace wa

template <>
struct std::hash<wa::Rational> {
  std::size_t operator()(const wa::Rational& r) const noexcept { return r.hash(); }
};
