#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "simprox/cf_construction.hpp"
#include "simprox/errors.hpp"

using namespace simprox;

static Rational rat(long n, long d) { return Rational(Int(n), Int(d)); }

TEST_CASE("quotient recursion for an inverse-square law") {
  BranchPlan plan;
  plan.prefix = {Int(0), Int(2)};
  JarnikResult r =
      jarnik_quotients(ApproxFunction::power(Rational(1), Rational(2)), plan, 4);
  CHECK(r.cf.quotients() == std::vector<Int>{Int(2), Int(3), Int(8), Int(59)});
  CHECK(r.cf.q(1) == 2);
  CHECK(r.cf.q(2) == 7);
  CHECK(r.cf.q(3) == 58);
  CHECK(r.cf.q(4) == 3429);
  CHECK(r.first_generated == 2);

  // slack ratios are exact here and sit in (1, 1 + 2/q_{n-1}]
  REQUIRE(r.ratios.size() == 3);
  CHECK(r.ratios[0].is_point());
  CHECK(r.ratios[0].lo() == rat(3, 2));  // 3 * (1/4) * 2
  CHECK(r.ratios[1].lo() == rat(8, 7));
  CHECK(r.ratios[2].lo() == rat(59, 58));
  for (size_t i = 0; i < r.ratios.size(); ++i) {
    long n = static_cast<long>(i) + 1;  // step producing quotient n+1
    CHECK(r.ratios[i].lo() > Rational(1));
    CHECK(r.ratios[i].hi() <= Rational(1) + Rational(2) / Rational(r.cf.q(n - 1)));
  }
}

TEST_CASE("quotient recursion with a fractional exponent") {
  BranchPlan plan;
  plan.prefix = {Int(0), Int(2)};
  JarnikResult r =
      jarnik_quotients(ApproxFunction::power(Rational(1), rat(3, 2)), plan, 3);
  // 1/(psi(q)q) = sqrt(q): minimal integers above sqrt(2), sqrt(5)
  CHECK(r.cf.quotients() == std::vector<Int>{Int(2), Int(2), Int(3)});
  CHECK(r.cf.q(2) == 5);
  CHECK(r.cf.q(3) == 17);
}

TEST_CASE("bit schedule bumps exactly one quotient") {
  BranchPlan plain, bumped;
  plain.prefix = bumped.prefix = {Int(0), Int(2)};
  bumped.bit_schedule[2] = 1;
  ApproxFunction psi = ApproxFunction::power(Rational(1), Rational(2));
  JarnikResult a = jarnik_quotients(psi, plain, 4);
  JarnikResult b = jarnik_quotients(psi, bumped, 4);
  CHECK(b.cf.quotients()[1] == a.cf.quotients()[1] + 1);  // 3 -> 4
  CHECK(b.cf.q(2) == 9);
  // the recursion never heals the difference: all later convergents differ
  for (long n = 2; n <= 4; ++n) CHECK(a.cf.q(n) != b.cf.q(n));
  // distinct reals: the cylinders are disjoint
  Enclosure ca = a.cf.enclosure(4), cb = b.cf.enclosure(4);
  CHECK((ca.hi() < cb.lo() || cb.hi() < ca.lo()));
}

TEST_CASE("plan validation") {
  BranchPlan p;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);  // empty
  p.prefix = {Int(0), Int(0)};
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);  // quotient 0
  p.prefix = {Int(0), Int(2)};
  p.bit_schedule[1] = 1;  // inside the prefix
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.bit_schedule.clear();
  p.bit_schedule[2] = 2;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);

  BranchPlan ok;
  ok.prefix = {Int(0), Int(2)};
  ApproxFunction no_props = ApproxFunction::power(Rational(1), Rational(1));
  // 1/x decays too slowly for (A1)
  CHECK_THROWS_AS(jarnik_quotients(no_props, ok, 3), PreconditionViolation);
}

TEST_CASE("interval targeting") {
  // a full unit interval needs no fractional part at all
  CHECK(target_interval(Rational(0), Rational(1)) == std::vector<Int>{Int(0)});
  CHECK(target_interval(Rational(5), Rational(6)) == std::vector<Int>{Int(5)});
  // minimal quotient wins: [0;2] spans (1/3, 1/2), [0;2,2] spans (2/5, 3/7)
  CHECK(target_interval(Rational(0), rat(1, 2)) == std::vector<Int>{Int(0), Int(2)});
  CHECK(target_interval(rat(2, 5), rat(3, 5)) ==
        std::vector<Int>{Int(0), Int(2), Int(2)});
  CHECK(target_interval(rat(13, 100), rat(14, 100)) ==
        std::vector<Int>{Int(0), Int(7), Int(2)});
  CHECK_THROWS_AS(target_interval(Rational(1), Rational(1)), DegenerateInterval);
  CHECK_THROWS_AS(target_interval(Rational(2), Rational(1)), DegenerateInterval);
}

TEST_CASE("targeted cylinders really sit inside the interval") {
  auto cases = {std::pair{rat(0, 1), rat(1, 1)}, {rat(0, 1), rat(1, 2)},
                {rat(5, 1), rat(6, 1)},          {rat(2, 5), rat(3, 5)},
                {rat(1, 1000), rat(2, 1000)},    {rat(13, 100), rat(14, 100)},
                {rat(99, 100), rat(101, 100)}};
  for (const auto& [lo, hi] : cases) {
    auto prefix = target_interval(lo, hi);
    CFNumber cf(prefix[0], {prefix.begin() + 1, prefix.end()});
    // strict extensions stay strictly between the cylinder endpoints, so a
    // touching endpoint is still contained in the open interval
    Enclosure cyl = cf.cylinder(cf.length());
    CHECK(cyl.lo() >= lo);
    CHECK(cyl.hi() <= hi);
  }
}

TEST_CASE("per-convergent window verification") {
  BranchPlan plan;
  plan.prefix = {Int(0), Int(2)};
  ApproxFunction psi = ApproxFunction::power(Rational(1), Rational(2));
  JarnikResult r = jarnik_quotients(psi, plan, 12);

  VerificationReport rep = verify_schatz(r.cf, psi, rat(9, 10), 2, 10);
  CHECK(rep.verdict() == Verdict::Pass);
  REQUIRE(rep.threshold("n_hat") != nullptr);
  CHECK(*rep.threshold("n_hat") <= 4);
  for (const auto& chk : rep.special_checks) {
    CHECK(is_true(chk.upper));
    CHECK(chk.err.lo() > Rational(0));
  }

  // c = 0 keeps the lower bound trivially true wherever the upper holds
  VerificationReport zero = verify_schatz(r.cf, psi, Rational(0), 2, 10);
  for (const auto& chk : zero.special_checks) CHECK(is_true(chk.lower));

  CHECK_THROWS_AS(verify_schatz(r.cf, psi, Rational(1), 2, 10), std::invalid_argument);
  CHECK_THROWS_AS(verify_schatz(r.cf, psi, rat(9, 10), 0, 5), std::invalid_argument);
  CHECK_THROWS_AS(verify_schatz(r.cf, psi, rat(9, 10), 2, 13), std::invalid_argument);
}

TEST_CASE("golden ratio fails the inverse-square window") {
  std::vector<Int> ones(14, Int(1));
  CFNumber golden(Int(1), ones);
  ApproxFunction psi = ApproxFunction::power(Rational(1), Rational(2));
  VerificationReport rep = verify_schatz(golden, psi, rat(9, 10), 2, 12);
  CHECK(rep.verdict() == Verdict::Fail);
  // |q_n phi - p_n| = phi^{-(n+1)} dwarfs q_n^{-2} once q_n >= 3
  for (const auto& chk : rep.special_checks)
    if (chk.n >= 3) CHECK(is_false(chk.upper));
  CHECK(rep.threshold("n_hat") == nullptr);
}

TEST_CASE("pipeline first claim") {
  ApproxFunction psi = ApproxFunction::power(Rational(1), Rational(2));
  TheorOutcome out =
      theor_construct(psi, 2, Rational(0), rat(1, 2), TheoremClaim::First, {}, 3);
  CHECK(out.driver.spec_string() == "pow:1,5");
  CHECK(out.prefix == std::vector<Int>{Int(0), Int(2)});
  CHECK(out.zeta.q(1) == 2);
  CHECK(out.zeta.quotients()[1] == 17);  // 2^4 + 1
  CHECK(out.zeta.q(2) == 35);
  CHECK(out.scale == Rational(1));
  CHECK(!out.delegated_to_first);

  TheorOutcome frac = theor_construct(ApproxFunction::power(Rational(1), rat(3, 2)), 2,
                                      Rational(0), rat(1, 2), TheoremClaim::First, {}, 3);
  CHECK(frac.driver.spec_string() == "pow:1,4");
  // b_{n+1} = q_n^3 + 1
  CHECK(frac.zeta.quotients()[1] == 9);  // 2^3 + 1
  CHECK(frac.zeta.quotients()[2] == 19 * 19 * 19 + 1);

  CHECK_THROWS_AS(
      theor_construct(psi, 2, Rational(0), Rational(1), TheoremClaim::First, {}, 3),
      PreconditionViolation);
}

TEST_CASE("pipeline second claim delegates on the plateau") {
  ApproxFunction psi = ApproxFunction::power(Rational(1), Rational(2));
  TheorOutcome out = theor_construct(psi, 2, Rational(0), rat(1, 2), TheoremClaim::Second,
                                     rat(1, 2), 3);
  CHECK(out.delegated_to_first);
  CHECK(out.scale == Rational(1));
  CHECK(out.driver.spec_string() == "pow:1,5");
  CHECK(out.zeta.q(2) == 35);

  CHECK_THROWS_AS(
      theor_construct(psi, 2, Rational(0), rat(1, 2), TheoremClaim::Second, {}, 3),
      PreconditionViolation);
}

TEST_CASE("pipeline second claim scales by the power weight") {
  ApproxFunction psi = ApproxFunction::power(Rational(1), Rational(3));
  // region (2/3, 1): weight at the midpoint 5/6 is 2*(5/6) = 5/3
  TheorOutcome out =
      theor_construct(psi, 2, rat(2, 3), Rational(1), TheoremClaim::Second, rat(1, 2), 3);
  CHECK(!out.delegated_to_first);
  CHECK(out.scale == rat(5, 3));
  CHECK(out.driver.spec_string() == "pow:5/3,7");
  CHECK(out.prefix == std::vector<Int>{Int(0), Int(1), Int(2)});
  // the constructed number lands in the region
  Enclosure cyl = out.zeta.enclosure(out.zeta.max_depth());
  CHECK(cyl.lo() > rat(2, 3));
  CHECK(cyl.hi() < Rational(1));
  CHECK(out.notes.find("claim=second") != std::string::npos);
}

TEST_CASE("constructed numbers stay inside the requested region") {
  ApproxFunction psi = ApproxFunction::power(Rational(1), Rational(2));
  for (const auto& [lo, hi] : {std::pair{rat(0, 1), rat(1, 2)}, {rat(1, 10), rat(2, 10)},
                               {rat(4, 10), rat(45, 100)}}) {
    TheorOutcome out = theor_construct(psi, 2, lo, hi, TheoremClaim::First, {}, 3);
    Enclosure cyl = out.zeta.enclosure(out.zeta.max_depth());
    CHECK(cyl.lo() > lo);
    CHECK(cyl.hi() < hi);
    for (const auto& rt : out.ratios) CHECK(rt.lo() > Rational(1));
  }
}
