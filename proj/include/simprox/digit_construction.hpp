#pragma once

#include <map>
#include <string>
#include <vector>

#include "simprox/approx_function.hpp"
#include "simprox/digit_number.hpp"
#include "simprox/verify_report.hpp"

namespace simprox {

// Digits chosen strictly inside a block (e, f): position -> value in {0, A}.
// Zero-valued positions are omitted.
struct KappaDigits {
  long e = 0, f = 0;
  std::map<long, long> chi;

  // sum of chi_l * b^{-l}, exact
  Rational value(long b) const;
};

// Outcome of the interior-digit selection for one block. ratio is
// b^R (kappa + A b^{-e} + A b^{-f}) / a, proven < 1; certified_lower is the
// exact lower bound established for it. The base-2 digit-copy path can fall
// back to a plain greedy maximum whose copy bound no longer applies, in
// which case lower_holds records whether the bound survived anyway.
struct KappaChoice {
  KappaDigits digits;
  Rational kappa;
  Rational ratio;
  Rational certified_lower;
  bool lower_holds = true;
};

// Maximal kappa in the digit set H (digits {0, A} at positions e+1..f-1)
// with b^R (kappa + A b^{-e} + A b^{-f}) < a, found by greedy descent from
// the most significant free position. Requires b >= 3 and the window
// a/b <= A b^R (b^{-e} + b^{-f}) < a; the certified lower bound is
// (1/(b-1)) (b^{f-e+1}-1)/(b^{f-e+1}+b) and always holds.
KappaChoice greedy_kappa(const Rational& a, long A, long b, long R, long e, long f);

// Base-2 variant with A = 1. Above the all-ones threshold the interior is
// filled completely (bound (2^{f-e+1}-1)/(2^{f-e+1}+2)); below it the
// leading binary digits of a are copied into the free positions (bound
// 2^{f-e}/(2^{f-e}+1)), falling back to the greedy maximum when the copied
// value ties the target exactly.
KappaChoice greedy_kappa_b2(const Rational& a, long R, long e, long f);

// One digit at each exponent a_n: a_1 given, then a_{n+1} minimal with
// b^{k a_n - a_{n+1}} < Psi(b^{k a_n}) / (1 + delta_n). Entries of branch
// override an even-indexed a_{2n} inside [(k+1) a_{2n-1}, 2k a_{2n-1} - 1],
// the window keeping the error structure intact.
struct SparseConstruction {
  DigitNumber number;
  std::vector<long> exponents;
  // least index from which a_{n+1} >= 2k a_n holds onward at every
  // recursion-defined step (overridden steps answer to their window instead)
  long n0 = 1;
  std::string provenance;
};

SparseConstruction sparse_sequence(const ApproxFunction& psi, long k, long b, long a1,
                                   long terms, const std::map<long, long>& branch = {},
                                   const DeltaSchedule& delta = DeltaSchedule::zero());

// Block layout parameters. Block n is [e_n, f_n] with f_n = e_n + n; both
// endpoints carry digit A, interior digits are chosen per block by the
// greedy step. delta damps the selection target: the recursions compare
// against Psi(x) / (1 + delta_n).
struct BlockSpec {
  long b = 3;
  long A = 1;
  long k = 1;
  long e1 = 4;
  DeltaSchedule delta = DeltaSchedule::zero();
};

struct BlockConstruction {
  DigitNumber number;
  std::vector<long> e, f;               // block bounds, n = 1..N
  std::vector<Rational> kappas;         // interior value per step, n = 1..N-1
  std::vector<Enclosure> kappa_ratios;  // b^R(kappa_n + w)/target, each < 1
  std::vector<Rational> kappa_bounds;   // certified lower bound per step
  bool kappa_bounds_hold = true;        // base-2 fallback can lose its bound
  // least index from which the gap bound holds onward:
  // e_{n+1} >= 2k f_n for k >= 2, e_{n+1} >= (theta+1) f_n for k = 1
  long n0 = 1;
  Rational theta{0};  // decay exponent backing the k = 1 gap bound
  std::string provenance;
};

// Blocks driven by e_{n+1} = minimal integer with
// b^{k f_n - e_{n+1}} + b^{k f_n - f_{n+1}} < Psi(b^{k f_n}) / (1 + delta_n),
// f_{n+1} = e_{n+1} + (n+1), interior digits per greedy_kappa (digit-copy
// for b = 2). k >= 2 needs (A3)+(B2); k = 1 needs (B2) plus a decay
// exponent theta certified above the golden ratio.
BlockConstruction block_sequence(const ApproxFunction& psi, const BlockSpec& spec,
                                 long terms);

// At x_n = b^{f_n} certify dist(zeta x_n, Z) < x_n^{-omega_hat + 1 + eps},
// where omega_hat = min over computed steps of e_{n+1}/f_n. Only indices
// with the following block computed are certifiable: n_hi <= N-1. A
// nonnegative exponent makes the threshold exceed 1/2 and the report is
// flagged vacuous.
VerificationReport klar_check(const DigitNumber& d, const Rational& eps, long n_lo,
                              long n_hi);

// err(z) relative to the digit-selected main term: err(z)/base_value - 1,
// err(z) = max_{1<=j<=k} dist(zeta^j z, Z). Positive and shrinking for the
// constructions here; certified below delta_n when a damping schedule runs.
Enclosure relative_remainder(const RealNumber& zeta, long k, const Int& z,
                             const Rational& base_value);

}  // namespace simprox
