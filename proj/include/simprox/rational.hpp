#pragma once

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

#include "simprox/integer.hpp"

namespace simprox {

/// Exact rational number in canonical form: gcd(num, den) == 1, den > 0,
/// zero is 0/1. Serializes as "num/den", or just "num" when den == 1;
/// decimal notation is rejected on parse so no value ever passes through
/// binary floating point.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long v) : num_(v), den_(1) {}  // NOLINT: implicit by design
  Rational(Int v) : num_(std::move(v)), den_(1) {}
  Rational(Int num, Int den);

  /// Parses "a/b" or "a" with optional leading '-'. Throws std::invalid_argument
  /// on anything else, including decimal points and exponents.
  static Rational parse(std::string_view s);

  const Int& num() const { return num_; }
  const Int& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return mpz_sgn(num_.get_mpz_t()); }

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  /// Exact three-way comparison via cross multiplication.
  int cmp(const Rational& o) const;
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational& a, const Rational& b) { return a.cmp(b) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.cmp(b) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.cmp(b) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.cmp(b) >= 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

  Rational abs() const;
  Int floor() const;
  Int ceil() const;
  /// Nearest integer; exact half rounds up. Only the distance is ever
  /// contractual, and that is symmetric at the tie.
  Int round() const;
  /// Distance to the nearest integer, in [0, 1/2].
  Rational dist_to_int() const;

  /// x^e for any integer e; requires x != 0 when e < 0.
  Rational pow(long e) const;
  Rational reciprocal() const;

  std::string str() const;
  /// Crude double approximation, for logs and error messages only.
  double approx() const;

 private:
  Int num_, den_;
  void reduce();
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Minimal integer strictly greater than r (floor(r) + 1).
Int strictly_above(const Rational& r);

/// Minimal integer a (possibly negative) with b^a > t. Requires b >= 2, t > 0.
long min_exponent_above(const Int& b, const Rational& t);

}  // namespace simprox
