#pragma once

#include <memory>
#include <string>

#include "simprox/enclosure.hpp"

namespace simprox {

/// A real number presented through nested enclosures. `enclosure(d)` must be a
/// valid outer enclosure of the value for every depth, and non-expanding as d
/// grows; `max_depth` is the finest level the object can certify (for numbers
/// defined by a computed finite prefix of an infinite construction, refining
/// beyond the prefix would be a guess, so the enclosure stops shrinking there).
class RealNumber {
 public:
  virtual ~RealNumber() = default;
  virtual Enclosure enclosure(long depth) const = 0;
  virtual long max_depth() const = 0;
  virtual std::string describe() const = 0;
};

/// Exact rational value; every enclosure is the point itself.
class RationalReal final : public RealNumber {
 public:
  explicit RationalReal(Rational v) : value_(std::move(v)) {}
  Enclosure enclosure(long) const override { return Enclosure(value_); }
  long max_depth() const override { return 1L << 30; }
  std::string describe() const override { return value_.str(); }
  const Rational& value() const { return value_; }

 private:
  Rational value_;
};

/// shift + coef * n^{1/r} for integer n >= 0. Covers the quadratic and cubic
/// irrationals used as fixed test points. depth = binary precision bits.
class AlgebraicReal final : public RealNumber {
 public:
  AlgebraicReal(Rational shift, Rational coef, Int n, unsigned long r);
  Enclosure enclosure(long depth) const override;
  long max_depth() const override { return 1L << 20; }
  std::string describe() const override;

 private:
  Rational shift_, coef_;
  Int n_;
  unsigned long r_;
};

/// Enclosure of (1 + sqrt 5)/2 with width <= 2^{1-prec}.
Enclosure golden_ratio(long prec);

/// Enclosure of sqrt(5) with width <= 2^{-prec}.
Enclosure sqrt_enclosure(const Int& n, long prec);

}  // namespace simprox
