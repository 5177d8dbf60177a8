#pragma once

#include <string>
#include <utility>
#include <vector>

#include "simprox/approx_function.hpp"
#include "simprox/enclosure.hpp"
#include "simprox/integer.hpp"
#include "simprox/rational.hpp"
#include "simprox/real_number.hpp"

namespace simprox {

enum class Verdict { Pass, Fail, Inconclusive, Warning };
std::string to_string(Verdict v);

// One two-sided check at a distinguished point z (a convergent denominator,
// a block power, ...): lower c*Psi(z) vs err and upper err vs Psi(z).
struct SpecialCheck {
  Int z{0};
  long n = 0;  // construction index the point came from, when meaningful
  Tri lower = Tri::Unknown;
  Tri upper = Tri::Unknown;
  Enclosure err{Rational(0)};
  // Entries below a discovered asymptotic threshold stay in the report for
  // context but are excluded from the verdict.
  bool counted = true;
  bool passed() const { return is_true(lower) && is_true(upper); }
};

// Lower-bound-only scan err > c*Psi(z) over an integer range.
struct SweepSummary {
  bool run = false;
  Int z_lo{0};
  Int z_hi{0};
  Rational c{Rational(0)};
  std::vector<Int> violations;
  long inconclusive = 0;
  bool clean() const { return violations.empty() && inconclusive == 0; }
};

struct VerificationReport {
  std::string subject;  // provenance of the number under test
  std::string psi;      // function spec string
  long k = 1;
  long base = 0;  // digit base when the subject is a digit construction
  std::vector<SpecialCheck> special_checks;
  SweepSummary sweep;
  // discovered thresholds (least clean z_floor, first good index, ...);
  // insertion-ordered so serialized reports stay deterministic
  std::vector<std::pair<std::string, Int>> thresholds;
  std::vector<long> precisions;  // depths / precision caps that were used
  bool vacuous = false;
  std::string note;

  void set_threshold(const std::string& key, const Int& v);
  const Int* threshold(const std::string& key) const;
  Verdict verdict() const;
};

// Which inequalities the source window uses: the continued-fraction windows
// are strict on both sides, the digit-block windows allow equality below.
enum class WindowStyle { StrictBoth, LowerNonStrict };

// Certify c*Psi(z) (<|<=) err(z) < Psi(z) at each special point, and
// err(z) > c*Psi(z) for every z in [z_floor, sweep_max].  err(z) is
// max_{1<=j<=k} dist(zeta^j z, Z).  If the given z_floor is not clean, the
// least clean one is searched and reported under "z_floor".
VerificationReport window_check(const RealNumber& zeta, const ApproxFunction& psi,
                                long k, const Rational& c, WindowStyle style,
                                const std::vector<std::pair<long, Int>>& specials,
                                long sweep_max, long z_floor, int jobs = 1);

// Warns when Psi(x)*x is certainly above 1/sqrt(5) across the whole checked
// range: Hurwitz gives every irrational zeta infinitely many q with
// |q*zeta - p| <= 1/(sqrt(5) q), so with c near 1 the lower window
// err > c*Psi must fail infinitely often in that regime.  Never blocks;
// Pass means no warning.
Verdict hurwitz_guard(const ApproxFunction& psi, const Rational& x_lo = Rational(2),
                      const Rational& x_hi = Rational(1000),
                      const Rational& step = Rational(1));

}  // namespace simprox
