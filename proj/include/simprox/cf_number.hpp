#pragma once

#include <vector>

#include "simprox/real_number.hpp"

namespace simprox {

/// Continued fraction [b0; b1, b2, ...] with integer part b0 and partial
/// quotients b_i >= 1, stored together with all convergents p_n/q_n.
///
/// As a RealNumber it stands for the set of all reals whose expansion begins
/// with this prefix: enclosure(d) for d below the last index is the interval
/// between consecutive convergents, and from the last index on it is the
/// cylinder of the full prefix. Constructions that extend a CF term by term
/// rely on exactly this reading; use value() for the rational the finite
/// expansion itself denotes.
class CFNumber final : public RealNumber {
 public:
  explicit CFNumber(Int b0, std::vector<Int> quotients = {});

  /// Expansion of a rational by Euclid's algorithm; canonical (no trailing 1).
  static CFNumber from_rational(const Rational& x);

  const Int& b0() const { return b0_; }
  const std::vector<Int>& quotients() const { return quotients_; }
  /// Number of partial quotients after b0.
  long length() const { return static_cast<long>(quotients_.size()); }

  /// Numerator / denominator of the n-th convergent, 0 <= n <= length().
  const Int& p(long n) const;
  const Int& q(long n) const;
  Rational convergent(long n) const { return Rational(p(n), q(n)); }
  /// Exact value of the finite expansion (the last convergent).
  Rational value() const { return convergent(length()); }

  /// All reals whose expansion starts with the first n+1 terms (b0..b_n);
  /// n = length() uses the whole prefix.
  Enclosure cylinder(long n) const;

  void append(Int quotient);

  Enclosure enclosure(long depth) const override;
  long max_depth() const override { return length(); }
  std::string describe() const override;

 private:
  Int b0_;
  std::vector<Int> quotients_;
  // p_[i], q_[i] hold the convergent of index i-1, with the seed pair
  // (1, 0) at i == 0 so the recurrence needs no special cases.
  std::vector<Int> p_, q_;
  void push_convergent(const Int& b);
};

}  // namespace simprox
