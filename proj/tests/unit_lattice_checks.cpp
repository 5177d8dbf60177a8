#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "simprox/digit_construction.hpp"
#include "simprox/errors.hpp"
#include "simprox/lattice_checks.hpp"

using namespace simprox;

static Rational rat(long n, long d) { return Rational(Int(n), Int(d)); }
static Rational bpow(long b, long e) { return Rational(Int(b)).pow(e); }

static DigitNumber inv_square_blocks() {
  BlockSpec spec;
  spec.b = 3;
  spec.A = 1;
  spec.k = 2;
  spec.e1 = 4;
  return block_sequence(ApproxFunction::power(Rational(1), Rational(2)), spec, 6)
      .number;
}

TEST_CASE("half-window solutions line up on one direction") {
  RationalReal zeta(rat(5201, 40000));
  TwoSolutionWitness w = lindep_solutions(zeta, Rational(100));
  CHECK(w.passed());
  CHECK(w.inconclusive == 0);
  REQUIRE(w.solutions.size() == 3);
  CHECK(w.solutions[0] == HalfWindowSolution{Int(-100), Int(-13)});
  CHECK(w.solutions[1] == HalfWindowSolution{Int(0), Int(0)});
  CHECK(w.solutions[2] == HalfWindowSolution{Int(100), Int(13)});
  CHECK_FALSE(w.counterexample.has_value());
}

TEST_CASE("the half window is strict on its boundary") {
  // dist(1/2 * 1) is exactly the window 1/(2*1): M = +-1 must not qualify
  TwoSolutionWitness w = lindep_solutions(RationalReal(rat(1, 2)), Rational(1));
  CHECK(w.passed());
  REQUIRE(w.solutions.size() == 1);
  CHECK(w.solutions[0] == HalfWindowSolution{Int(0), Int(0)});
}

TEST_CASE("a denominator-sized window finds exactly the multiples") {
  TwoSolutionWitness w = lindep_solutions(RationalReal(rat(3, 7)), Rational(7));
  CHECK(w.passed());
  REQUIRE(w.solutions.size() == 3);
  CHECK(w.solutions[0] == HalfWindowSolution{Int(-7), Int(-3)});
  CHECK(w.solutions[2] == HalfWindowSolution{Int(7), Int(3)});
}

TEST_CASE("irrational inputs settle through enclosures") {
  AlgebraicReal root2(Rational(0), Rational(1), Int(2), 2);
  TwoSolutionWitness w = lindep_solutions(root2, Rational(5));
  CHECK(w.passed());
  REQUIRE(w.solutions.size() == 3);
  CHECK(w.solutions[2] == HalfWindowSolution{Int(5), Int(7)});

  CHECK_THROWS_AS(lindep_solutions(root2, rat(1, 2)), PreconditionViolation);
}

TEST_CASE("random rational inputs never produce two directions") {
  std::mt19937 rng(20260822);
  std::uniform_int_distribution<long> den(2, 10000);
  std::uniform_int_distribution<long> qpick(1, 1000);
  for (int trial = 0; trial < 500; ++trial) {
    long q = den(rng);
    std::uniform_int_distribution<long> num(0, q - 1);
    Rational zeta = rat(num(rng), q);
    TwoSolutionWitness w = lindep_solutions(RationalReal(zeta), Rational(qpick(rng)));
    REQUIRE(w.passed());
  }
}

TEST_CASE("good approximations decompose over the block scales") {
  DigitNumber d = inv_square_blocks();
  VerificationReport rep = dieprop_check(d, rat(1, 10), 100000);
  CHECK(rep.verdict() == Verdict::Pass);
  CHECK_FALSE(rep.vacuous);
  CHECK(rep.note.find("omega_hat = 43849/7308") != std::string::npos);
  CHECK(rep.sweep.violations.empty());
  CHECK(rep.sweep.inconclusive == 0);
  REQUIRE(rep.threshold("first_scale") != nullptr);
  CHECK(*rep.threshold("first_scale") == Int(243));

  // the good set is exactly the multiples of 3^{f_1} = 243 in range
  REQUIRE(rep.special_checks.size() == 411);
  for (size_t i = 0; i < rep.special_checks.size(); ++i) {
    const SpecialCheck& chk = rep.special_checks[i];
    CHECK(chk.z == Int(243) * Int(static_cast<long>(i) + 1));
    CHECK(chk.n == 1);
    CHECK(chk.passed());
  }
}

TEST_CASE("a range below the first scale is vacuous") {
  DigitNumber d = inv_square_blocks();
  VerificationReport rep = dieprop_check(d, rat(1, 10), 242);
  CHECK(rep.vacuous);
  CHECK(rep.verdict() == Verdict::Pass);
  CHECK(rep.special_checks.empty());
}

TEST_CASE("a mid-gap digit breaks the decomposition with a witness") {
  DigitNumber d = inv_square_blocks();
  std::vector<long> positions = d.positions();
  positions.insert(positions.begin() + 2, 7);  // between f_1 = 5 and e_2 = 31
  DigitNumber bent = DigitNumber::unchecked(3, 1, positions, d.blocks());

  VerificationReport rep = dieprop_check(bent, rat(1, 10), 100000);
  CHECK(rep.verdict() == Verdict::Fail);
  // multiples of 3^7 = 2187 approximate well but carry the wrong y
  REQUIRE_FALSE(rep.sweep.violations.empty());
  CHECK(rep.sweep.violations.front() == Int(2187));
  CHECK(rep.sweep.violations.size() == 45);
  CHECK(rep.note.find("witness x = 2187, y = 37") != std::string::npos);
  REQUIRE_FALSE(rep.special_checks.empty());
  CHECK_FALSE(rep.special_checks.front().passed());
  CHECK(rep.special_checks.front().n == 0);
}

TEST_CASE("dieprop validation") {
  DigitNumber d = inv_square_blocks();
  CHECK_THROWS_AS(dieprop_check(d, Rational(0), 1000), std::invalid_argument);
  CHECK_THROWS_AS(dieprop_check(d, rat(1, 10), 0), std::invalid_argument);
  DigitNumber flat(3, 1, {3, 19, 115});
  CHECK_THROWS_AS(dieprop_check(flat, rat(1, 10), 1000), PreconditionViolation);
  DigitNumber one_block(3, 1, {4, 5}, {{4, 5}});
  CHECK_THROWS_AS(dieprop_check(one_block, rat(1, 10), 1000), PreconditionViolation);
}

TEST_CASE("block scale floors end in the amplitude digit") {
  DigitNumber d = inv_square_blocks();
  for (long n = 1; n <= 6; ++n) CHECK(primitivity_check(d, n) == Verdict::Pass);

  // floor(3^5 zeta) = 4 and 4 = 1 mod 3: the residue route agrees with the
  // digit route
  CHECK((d.partial_sum(5) * bpow(3, 5)).num() == Int(4));

  DigitNumber wide(5, 2, {2, 3, 5}, {{2, 3}, {5, 5}});
  CHECK(primitivity_check(wide, 1) == Verdict::Pass);
  CHECK(primitivity_check(wide, 2) == Verdict::Pass);

  // a block whose upper end holds no digit fails the residue test
  DigitNumber bent = DigitNumber::unchecked(3, 1, {2, 4}, {{2, 3}});
  CHECK(primitivity_check(bent, 1) == Verdict::Fail);

  CHECK_THROWS_AS(primitivity_check(d, 0), PreconditionViolation);
  CHECK_THROWS_AS(primitivity_check(d, 7), PreconditionViolation);
  DigitNumber flat(3, 1, {3, 19});
  CHECK_THROWS_AS(primitivity_check(flat, 1), PreconditionViolation);
}
