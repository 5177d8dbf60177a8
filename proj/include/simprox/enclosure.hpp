#pragma once

#include <iosfwd>
#include <string>

#include "simprox/rational.hpp"

namespace simprox {

/// Three-valued verdict for comparisons between enclosed reals. Unknown means
/// the enclosures overlap; callers refine and retry, and surface Inconclusive
/// if a precision cap is hit. Nothing in the library ever guesses.
enum class Tri { True, False, Unknown };

inline bool is_true(Tri t) { return t == Tri::True; }
inline bool is_false(Tri t) { return t == Tri::False; }
inline bool is_unknown(Tri t) { return t == Tri::Unknown; }
std::string to_string(Tri t);

/// Closed interval [lo, hi] with exact rational endpoints, standing for a real
/// value known to lie inside. All arithmetic is outward-exact: results enclose
/// every possible value of the operands.
class Enclosure {
 public:
  Enclosure() : lo_(0), hi_(0) {}
  Enclosure(Rational point) : lo_(point), hi_(std::move(point)) {}  // NOLINT
  Enclosure(Rational lo, Rational hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational mid() const { return (lo_ + hi_) / Rational(2); }
  bool is_point() const { return lo_ == hi_; }

  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Enclosure& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool is_positive() const { return lo_.sign() > 0; }
  bool is_nonnegative() const { return lo_.sign() >= 0; }

  Enclosure operator-() const;
  friend Enclosure operator+(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator-(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator*(const Enclosure& a, const Enclosure& b);
  Enclosure scaled(const Rational& f) const;
  Enclosure shifted(const Rational& s) const;
  /// Image of |.| over the interval.
  Enclosure abs() const;
  /// x^e; exact image (the interval map is handled case by case for signs).
  Enclosure pow(long e) const;
  /// 1/x; requires the interval not to contain 0.
  Enclosure reciprocal() const;

  /// Exact image of the distance-to-nearest-integer map over the interval.
  /// Always a subset of [0, 1/2]; any width is handled.
  Enclosure dist_to_int() const;

  std::string str() const;

 private:
  Rational lo_, hi_;
};

std::ostream& operator<<(std::ostream& os, const Enclosure& e);

/// a < b certainly / certainly not / undecidable at this precision.
Tri lt(const Enclosure& a, const Enclosure& b);
/// a <= b.
Tri le(const Enclosure& a, const Enclosure& b);
inline Tri gt(const Enclosure& a, const Enclosure& b) { return lt(b, a); }
inline Tri ge(const Enclosure& a, const Enclosure& b) { return le(b, a); }

/// Pointwise max of two enclosed reals.
Enclosure max_enclosure(const Enclosure& a, const Enclosure& b);

}  // namespace simprox
