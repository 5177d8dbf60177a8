#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "simprox/approx_function.hpp"
#include "simprox/cf_number.hpp"
#include "simprox/verify_report.hpp"

namespace simprox {

// Initial quotients plus an optional per-index +1 override.  The override
// realizes the branching freedom of the construction: any quotient beyond
// the prefix may be bumped by one without leaving the admissible window,
// and distinct bump patterns give distinct numbers.
struct BranchPlan {
  std::vector<Int> prefix;           // b0, b1, ..., bm; b_i >= 1 for i >= 1
  std::map<long, int> bit_schedule;  // quotient index -> 0/1; indices > m only

  void validate() const;  // throws std::invalid_argument
};

struct JarnikResult {
  CFNumber cf;
  // ratios[i] = b_{m+1+i} * Psi(q_{m+i}) * q_{m+i}, the slack of step i;
  // > 1 by construction, and drifting toward 1 when Psi decays fast enough
  std::vector<Enclosure> ratios;
  long first_generated;  // quotient index of the first non-prefix term
};

// Grow a continued fraction from the prefix: each new quotient is the
// minimal integer strictly greater than 1/(Psi(q_n) q_n) (exact integers
// round up to the next one), then +1 where the bit schedule says so.
// Needs psi with (A1) and (B2).  terms counts all quotients after b0.
JarnikResult jarnik_quotients(const ApproxFunction& psi, const BranchPlan& plan,
                              long terms);

// Shortest quotient prefix whose cylinder lies inside the open interval
// (lo, hi).  The cylinder is read as every real strictly extending the
// prefix, the open interval between the prefix value and the value with the
// last quotient raised by one; the walk appends the minimal admissible
// quotient at each level.  Containment is certified on exact endpoints.
std::vector<Int> target_interval(const Rational& lo, const Rational& hi);

// Per-convergent window c*Psi(q_n) < |q_n zeta - p_n| < Psi(q_n) over
// n in [n_lo, n_hi], both bounds strict; zeta is read as the cylinder of
// the full prefix, so the distance enclosures are exact.  Reports the
// least index n_hat from which every later check passes.
VerificationReport verify_schatz(const CFNumber& zeta, const ApproxFunction& psi,
                                 const Rational& c, long n_lo, long n_hi);

enum class TheoremClaim { First, Second };

struct TheorOutcome {
  CFNumber zeta;
  std::vector<Enclosure> ratios;
  ApproxFunction driver;  // the function that actually fed the recursion
  std::vector<Int> prefix;
  long k = 1;
  Rational scale{1};  // the exact weight the lift was scaled by (1 = none)
  bool delegated_to_first = false;
  std::string notes;  // reproducible parameter record
};

// End-to-end pipeline: lift psi through x -> x^k, aim at the region, run
// the quotient recursion.  First claim wants the region inside (0, 1/2)
// and psi with (A3)+(B2).  Second claim wants (A2)(d) for some
// d < 1/(2 sup L) with L the max power derivative over the region, plus
// (B2) and c0 in (0,1); when the region's midpoint has weight 1 the whole
// job reduces to the First claim on the sub-interval below 1/2.
TheorOutcome theor_construct(const ApproxFunction& psi, long k, const Rational& lo,
                             const Rational& hi, TheoremClaim claim,
                             std::optional<Rational> c0, long terms);

}  // namespace simprox
