#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "simprox/digit_number.hpp"
#include "simprox/integer.hpp"
#include "simprox/rational.hpp"
#include "simprox/real_number.hpp"
#include "simprox/verify_report.hpp"

namespace simprox {

// One solution (M, N) of |zeta M - N| < 1/(2Q) with |M| <= Q.
struct HalfWindowSolution {
  Int m{0};
  Int n{0};
  bool operator==(const HalfWindowSolution& o) const { return m == o.m && n == o.n; }
};

// Exhaustive record of every solution up to Q.  Two independent directions
// among them would contradict the two-dimensional Minkowski bound, so a pair
// that breaks dependence is kept as the counterexample.
struct TwoSolutionWitness {
  Rational q_bound{Rational(0)};
  std::vector<HalfWindowSolution> solutions;  // (0, 0) always qualifies
  long inconclusive = 0;  // values of M the enclosure could not settle
  bool pairwise_dependent = true;
  std::optional<std::pair<HalfWindowSolution, HalfWindowSolution>> counterexample;
  bool passed() const { return pairwise_dependent && inconclusive == 0; }
};

TwoSolutionWitness lindep_solutions(const RealNumber& zeta, const Rational& Q);

// Structure of the good approximations to a block digit number: every
// x in [b^{f_1}, X] whose error dips to x^{-omega/(omega-1)-eps} or below
// must be a multiple of a block scale pair (b^{f_n}, floor(b^{f_n} zeta)).
// omega is the finite-range decay rate min e_{n+1}/f_n.
VerificationReport dieprop_check(const DigitNumber& d, const Rational& eps, long X);

// floor(b^{f_n} zeta) mod b must reproduce the amplitude digit at f_n.
Verdict primitivity_check(const DigitNumber& d, long n);

}  // namespace simprox
