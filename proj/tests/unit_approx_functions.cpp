#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "simprox/approx_function.hpp"
#include "simprox/errors.hpp"
#include "simprox/real_number.hpp"

using namespace simprox;

static Rational rat(long n, long d) { return Rational(Int(n), Int(d)); }

TEST_CASE("power evaluation is exact") {
  ApproxFunction psi = ApproxFunction::power(Rational(1), Rational(2));
  Enclosure v = psi.eval(Rational(729), 64);
  CHECK(v.is_point());
  CHECK(v.lo() == Rational(Int(1), Int(729) * 729));

  ApproxFunction frac = ApproxFunction::power(Rational(1), rat(3, 2));
  Enclosure w = frac.eval(Rational(4), 64);
  CHECK(w.is_point());
  CHECK(w.lo() == rat(1, 8));

  // non-perfect powers come back as tight positive enclosures
  Enclosure t = frac.eval(Rational(2), 128);
  CHECK(t.is_positive());
  CHECK(!t.is_point());
  CHECK(t.width() <= Rational(Int(1), Int(1) << 100));
  CHECK_THROWS_AS(psi.eval(Rational(0), 64), std::domain_error);
  CHECK_THROWS_AS(psi.eval(Rational(-3), 64), std::domain_error);
}

TEST_CASE("exp family evaluation brackets known digits") {
  ApproxFunction e = ApproxFunction::exp_family(Rational(1), Rational(1), Rational(1));
  Enclosure v = e.eval(Rational(1), 64);
  // exp(-1) = 0.36787944117...
  CHECK(v.width() < rat(1, 1000000));
  CHECK(v.lo() > rat(3678794, 10000000));
  CHECK(v.hi() < rat(3678795, 10000000));

  Enclosure w = e.eval(Rational(5), 64);
  // exp(-5) = 0.00673794699...
  CHECK(w.lo() > rat(673, 100000));
  CHECK(w.hi() < rat(674, 100000));

  CHECK_THROWS_AS(e.eval(Rational(1) + Rational(Int(1) << 20), 64), EvalOverflow);
}

TEST_CASE("index transform simplifies power families") {
  ApproxFunction five = ApproxFunction::power(Rational(1), Rational(5));
  ApproxFunction t = five.transformed_j(2);
  REQUIRE(t.is_power());
  CHECK(*t.power_exponent() == Rational(2));
  CHECK(*t.power_coef() == Rational(1));
  CHECK(t.spec_string() == "pow:1,2");

  // j = 1 is the identity
  CHECK(five.transformed_j(1).spec_string() == five.spec_string());

  // non-power families keep the symbolic composite
  ApproxFunction e = ApproxFunction::exp_family(Rational(1), Rational(1), Rational(1));
  ApproxFunction te = e.transformed_j(2);
  CHECK(!te.is_power());
  // value at 4: exp(-sqrt(4)) * 4^{1/2} = 2*exp(-2) = 0.27067...
  Enclosure v = te.eval(Rational(4), 64);
  CHECK(v.lo() > rat(27067, 100000));
  CHECK(v.hi() < rat(27068, 100000));
}

TEST_CASE("power lift simplifies power families") {
  CHECK(ApproxFunction::power(Rational(1), Rational(2)).power_lifted(2).spec_string() ==
        "pow:1,5");
  CHECK(ApproxFunction::power(Rational(1), rat(3, 2)).power_lifted(2).spec_string() ==
        "pow:1,4");
  CHECK(ApproxFunction::power(Rational(1), Rational(2)).power_lifted(3).spec_string() ==
        "pow:1,8");
  CHECK_THROWS(ApproxFunction::power(Rational(1), Rational(2)).power_lifted(1));
}

TEST_CASE("power lift matches its defining identity at integer points") {
  for (long k : {2L, 3L}) {
    ApproxFunction psi = ApproxFunction::power(rat(2, 3), Rational(2));
    ApproxFunction lifted = psi.power_lifted(k);
    for (long q : {2L, 3L, 7L, 58L}) {
      Rational x(q);
      Enclosure direct = lifted.eval(x, 64);
      // q^k * Psi(q^k) * q^{-2k+1}
      Enclosure manual =
          psi.eval(x.pow(k), 64).scaled(x.pow(k)).scaled(x.pow(-2 * k + 1));
      REQUIRE(direct.is_point());
      REQUIRE(manual.is_point());
      CHECK(direct.lo() == manual.lo());
    }
  }
}

TEST_CASE("scaling") {
  ApproxFunction five = ApproxFunction::power(Rational(1), Rational(5));
  CHECK(five.scaled(Rational(2)).eval(Rational(2), 64).lo() == rat(1, 16));
  CHECK(five.scaled(Rational(1)).spec_string() == "pow:1,5");
  ApproxFunction two = ApproxFunction::power(Rational(1), Rational(2));
  CHECK(two.scaled(rat(1, 3)).eval(Rational(3), 64).lo() == rat(1, 27));
  CHECK_THROWS(two.scaled(Rational(0)));
  CHECK_THROWS(two.scaled(Rational(-1)));

  // interval factors survive as symbolic wrappers
  ApproxFunction by_phi = two.scaled(golden_ratio(64), "L0");
  CHECK(!by_phi.is_power());
  // phi / 9 = 0.17978...
  Enclosure v = by_phi.eval(Rational(3), 64);
  CHECK(v.lo() > rat(1797, 10000));
  CHECK(v.hi() < rat(1798, 10000));
}

TEST_CASE("disturbance wrappers") {
  ApproxFunction two = ApproxFunction::power(Rational(1), Rational(2));
  // zero schedule is the identity
  CHECK(two.disturbed(DeltaSchedule::zero()).spec_string() == "pow:1,2");

  // constant schedule: (1+1/2) * 4^{-2} = 3/32
  ApproxFunction c = two.disturbed(DeltaSchedule::constant(rat(1, 2)));
  Enclosure v = c.eval(Rational(4), 64, 7);
  CHECK(v.is_point());
  CHECK(v.lo() == rat(3, 32));

  // step-indexed schedule delta_n = 1/n at n = 1 doubles the value
  ApproxFunction h = two.disturbed(DeltaSchedule::inverse_shifted(0));
  Enclosure w = h.eval(Rational(729), 64, 1);
  CHECK(w.is_point());
  CHECK(w.lo() == Rational(2) * rat(1, 729 * 729));

  // without a step index the hull over all steps comes back
  Enclosure hull = h.eval(Rational(729), 64);
  CHECK(hull.lo() == rat(1, 729 * 729));
  CHECK(hull.hi() == Rational(2) * rat(1, 729 * 729));
  CHECK(hull.contains(h.eval(Rational(729), 64, 3)));

  // default schedule: delta_n = 1/(n+1)
  ApproxFunction d = two.disturbed(DeltaSchedule::inverse_shifted(1));
  CHECK(d.eval(Rational(10), 64, 1).lo() == rat(3, 2) * rat(1, 100));
}

TEST_CASE("schedule parsing") {
  CHECK(DeltaSchedule::parse("zero").is_zero());
  CHECK(DeltaSchedule::parse("harmonic").at(1) == rat(1, 2));
  CHECK(DeltaSchedule::parse("invn").at(1) == Rational(1));
  CHECK(DeltaSchedule::parse("const:1/2").at(99) == rat(1, 2));
  CHECK_THROWS_AS(DeltaSchedule::parse("linear"), ParseError);
  CHECK_THROWS(DeltaSchedule::parse("const:-1"));
}

TEST_CASE("function spec grammar round trips") {
  CHECK(ApproxFunction::parse("pow:1,2").spec_string() == "pow:1,2");
  CHECK(ApproxFunction::parse("pow:1/2,17/10").spec_string() == "pow:1/2,17/10");
  CHECK(ApproxFunction::parse("exp:1,1,1").spec_string() == "exp:1,1,1");
  // wrappers on powers simplify to closed form
  CHECK(ApproxFunction::parse("lift2:pow:1,2").spec_string() == "pow:1,5");
  CHECK(ApproxFunction::parse("psij:2,pow:1,5").spec_string() == "pow:1,2");
  CHECK(ApproxFunction::parse("scale:3,pow:1,2").spec_string() == "pow:3,2");
  // wrappers on exp families stay visible
  CHECK(ApproxFunction::parse("lift2:exp:1,1,1").spec_string() == "lift2:exp:1,1,1");
  CHECK(ApproxFunction::parse("disturb:const:1/2,pow:1,2").spec_string() ==
        "disturb:const:1/2,pow:1,2");
  CHECK(ApproxFunction::parse("disturb:harmonic,exp:1,1,1").spec_string() ==
        "disturb:harmonic,exp:1,1,1");
  CHECK(ApproxFunction::parse("disturb:const:1/2,pow:1,2").eval(Rational(4), 64, 1).lo() ==
        rat(3, 32));
  CHECK_THROWS_AS(ApproxFunction::parse("poly:1,2"), ParseError);
  CHECK_THROWS_AS(ApproxFunction::parse("pow:1"), ParseError);
  CHECK_THROWS_AS(ApproxFunction::parse("pow:1,2,3"), ParseError);
  CHECK_THROWS_AS(ApproxFunction::parse(""), ParseError);
  CHECK_THROWS_AS(ApproxFunction::parse("pow:0,2"), std::invalid_argument);
}

TEST_CASE("property id parsing") {
  CHECK(PropertyId::parse("A1") == PropertyId::a1());
  CHECK(PropertyId::parse("A2:1/3") == PropertyId::a2(rat(1, 3)));
  CHECK(PropertyId::parse("A3") == PropertyId::a3());
  CHECK(PropertyId::parse("Aprime:17/10") == PropertyId::a_prime(rat(17, 10)));
  CHECK(PropertyId::parse("B2") == PropertyId::b2());
  CHECK(PropertyId::parse("A0:2") == PropertyId::a0(2));
  CHECK(PropertyId::parse("B0:3").str() == "B0:3");
  CHECK_THROWS_AS(PropertyId::parse("C1"), ParseError);
  CHECK_THROWS_AS(PropertyId::parse("A0:0"), ParseError);
  CHECK_THROWS_AS(PropertyId::parse("A2"), ParseError);
}

TEST_CASE("grid checks on the named conditions") {
  ApproxFunction inv = ApproxFunction::power(Rational(1), Rational(1));
  PropertyReport b2 = inv.check_property(PropertyId::b2(), Rational(1), Rational(100), Rational(1));
  CHECK(b2.verdict == PropertyReport::Verdict::Pass);

  ApproxFunction two = ApproxFunction::power(Rational(1), Rational(2));
  PropertyReport a3 = two.check_property(PropertyId::a3(), Rational(3), Rational(1000), Rational(1));
  CHECK(a3.verdict == PropertyReport::Verdict::Pass);

  // the literal inequality x^{-2} < 1/(2x) fails at x = 2
  PropertyReport a3bad = two.check_property(PropertyId::a3(), Rational(2), Rational(10), Rational(1));
  CHECK(a3bad.verdict == PropertyReport::Verdict::Fail);
  REQUIRE(a3bad.counterexample_x.has_value());
  CHECK(*a3bad.counterexample_x == Rational(2));

  ApproxFunction five = ApproxFunction::power(Rational(1), Rational(5));
  PropertyReport b02 = five.check_property(PropertyId::b0(2), Rational(2), Rational(50), Rational(1));
  CHECK(b02.verdict == PropertyReport::Verdict::Pass);
  // degree monotonicity: B0:2 passing forces B0:1 on the same grid
  PropertyReport b01 = five.check_property(PropertyId::b0(1), Rational(2), Rational(50), Rational(1));
  CHECK(b01.verdict == PropertyReport::Verdict::Pass);

  // B1 counterexample on a growing function
  ApproxFunction grow = ApproxFunction::power(Rational(1), Rational(-1));
  PropertyReport b1 = grow.check_property(PropertyId::b1(), Rational(1), Rational(5), Rational(1));
  CHECK(b1.verdict == PropertyReport::Verdict::Fail);
  CHECK(*b1.counterexample_x == Rational(2));
}

TEST_CASE("asymptotic conditions are decided symbolically or stay declared") {
  ApproxFunction two = ApproxFunction::power(Rational(1), Rational(2));
  PropertyReport a1 = two.check_property(PropertyId::a1(), Rational(2), Rational(50), Rational(1));
  CHECK(a1.verdict == PropertyReport::Verdict::Pass);
  CHECK(a1.method == "exact-family");

  ApproxFunction inv = ApproxFunction::power(Rational(1), Rational(1));
  CHECK(inv.check_property(PropertyId::a1(), Rational(2), Rational(50), Rational(1)).verdict ==
        PropertyReport::Verdict::Fail);

  ApproxFunction five = ApproxFunction::power(Rational(1), Rational(5));
  CHECK(five.check_property(PropertyId::a0(2), Rational(2), Rational(20), Rational(1)).verdict ==
        PropertyReport::Verdict::Pass);
  ApproxFunction three = ApproxFunction::power(Rational(1), Rational(3));
  CHECK(three.check_property(PropertyId::a0(2), Rational(2), Rational(20), Rational(1)).verdict ==
        PropertyReport::Verdict::Fail);

  ApproxFunction e = ApproxFunction::exp_family(Rational(1), Rational(1), Rational(1));
  CHECK(e.check_property(PropertyId::a1(), Rational(1), Rational(20), Rational(1)).verdict ==
        PropertyReport::Verdict::Pass);
  CHECK(e.has_property(PropertyId::a3()));
  CHECK(e.has_property(PropertyId::b2()));
}

TEST_CASE("theta against the golden ratio") {
  CHECK(certified_above_golden(rat(17, 10)));
  CHECK(!certified_above_golden(rat(8, 5)));
  CHECK(!certified_above_golden(rat(1618, 1000)));
  CHECK(certified_above_golden(rat(16181, 10000)));

  // default-precision golden ratio enclosure sits inside (1.618, 1.6181)
  Enclosure g = golden_ratio(64);
  CHECK(g.lo() > rat(1618, 1000));
  CHECK(g.hi() < rat(16181, 10000));

  ApproxFunction psi = ApproxFunction::power(Rational(1), rat(17, 10));
  PropertyReport ok =
      psi.check_property(PropertyId::a_prime(rat(17, 10)), Rational(2), Rational(40), Rational(1));
  CHECK(ok.verdict == PropertyReport::Verdict::Pass);

  PropertyReport low =
      psi.check_property(PropertyId::a_prime(rat(8, 5)), Rational(2), Rational(40), Rational(1));
  CHECK(low.verdict == PropertyReport::Verdict::Fail);
  CHECK(low.note.find("golden") != std::string::npos);
}

TEST_CASE("derived properties feed construction preconditions") {
  ApproxFunction two = ApproxFunction::power(Rational(1), Rational(2));
  CHECK(two.has_property(PropertyId::a1()));
  CHECK(two.has_property(PropertyId::a3()));
  CHECK(two.has_property(PropertyId::b1()));
  CHECK(two.has_property(PropertyId::b2()));
  CHECK(two.has_property(PropertyId::b0(3)));
  CHECK(!two.has_property(PropertyId::a0(2)));

  ApproxFunction inv = ApproxFunction::power(rat(1, 3), Rational(1));
  CHECK(inv.has_property(PropertyId::a3()));  // coefficient below 1/2
  ApproxFunction half = ApproxFunction::power(rat(1, 2), Rational(1));
  CHECK(!half.has_property(PropertyId::a3()));

  // user declaration fills what the symbolic form cannot derive
  ApproxFunction e = ApproxFunction::exp_family(Rational(1), Rational(1), Rational(1));
  CHECK(!e.has_property(PropertyId::b0(2)));
  e.declare(PropertyId::b0(2));
  CHECK(e.has_property(PropertyId::b0(2)));

  // declarations do not leak through transforms
  ApproxFunction te = e.transformed_j(2);
  CHECK(!te.has_property(PropertyId::b0(2)));
}

TEST_CASE("disturbed functions keep for-all-step property semantics") {
  ApproxFunction base = ApproxFunction::power(Rational(1), Rational(2));
  ApproxFunction d = base.disturbed(DeltaSchedule::inverse_shifted(1));
  // (1+delta_n) x^{-2} still decays below d/x eventually; exponent-strict
  CHECK(d.has_property(PropertyId::a3()));
  CHECK(d.has_property(PropertyId::b2()));
  CHECK(d.has_property(PropertyId::a1()));

  // hull semantics: grid B2 check passes for every step at once
  PropertyReport b2 = d.check_property(PropertyId::b2(), Rational(1), Rational(30), Rational(1));
  CHECK(b2.verdict == PropertyReport::Verdict::Pass);
}
