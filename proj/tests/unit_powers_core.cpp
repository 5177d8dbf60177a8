#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "simprox/errors.hpp"
#include "simprox/powers_core.hpp"
#include "simprox/real_number.hpp"

using namespace simprox;

static Rational rat(long n, long d) { return Rational(Int(n), Int(d)); }

TEST_CASE("max power derivative") {
  CHECK(max_power_derivative(rat(2, 5), 2) == Rational(1));
  CHECK(max_power_derivative(Rational(1), 2) == Rational(2));
  CHECK(max_power_derivative(Rational(2), 3) == Rational(12));
  CHECK(max_power_derivative(rat(1, 2), 5) == Rational(1));

  // plateau: the weight is 1 on all of (0, 1/2]
  for (long i = 1; i <= 100; ++i)
    for (long k = 2; k <= 5; ++k)
      CHECK(max_power_derivative(rat(i, 200), k) == Rational(1));

  // strictly increasing past 1/2
  for (long k = 2; k <= 5; ++k) {
    Rational prev = max_power_derivative(rat(1, 2), k);
    for (long i = 1; i <= 28; ++i) {
      Rational cur = max_power_derivative(rat(4 + i, 8), k);
      CHECK(cur > prev);
      prev = cur;
    }
  }

  Enclosure g = golden_ratio(64);
  Enclosure l = max_power_derivative(g, 2);
  CHECK(l.lo() > Rational(3));  // 2*phi = 3.236...
  CHECK(l.hi() < rat(33, 10));
  CHECK_THROWS_AS(max_power_derivative(Rational(0), 2), std::domain_error);
}

TEST_CASE("simultaneous error at a point") {
  SimError e = sim_error(rat(1, 3), 2, Int(5));
  CHECK(e.decided);
  CHECK(e.err.is_point());
  CHECK(e.err.lo() == rat(4, 9));
  CHECK(e.argmax_j == 2);
  CHECK(e.nearest == std::vector<Int>{Int(2), Int(1)});  // 5/3 -> 2, 5/9 -> 1

  SimError t = sim_error(rat(1, 2), 1, Int(2));
  CHECK(t.err.lo() == Rational(0));
  CHECK(t.nearest[0] == 1);

  SimError s = sim_error(rat(5201, 40000), 2, Int(10000));
  CHECK(s.err.lo() == rat(1, 4));
  CHECK(s.argmax_j == 1);

  CHECK_THROWS_AS(sim_error(rat(1, 3), 2, Int(0)), std::invalid_argument);
}

TEST_CASE("simultaneous error refines enclosures") {
  AlgebraicReal root2(Rational(-1), Rational(1), Int(2), 2);  // sqrt(2) - 1
  SimError e = sim_error(root2, 1, Int(12));
  CHECK(e.decided);
  CHECK(e.nearest[0] == 5);  // 12(sqrt 2 - 1) = 4.9705...
  CHECK(e.err.hi() < rat(3, 100));
  CHECK(e.err.lo() > rat(29, 1000));
}

TEST_CASE("error identity at z equal to q to the k") {
  ErrorIdentityReport r = check_error_identity(Int(13), Int(100), rat(1, 4), 2);
  CHECK(r.zeta == rat(5201, 40000));
  CHECK(r.holds);
  CHECK(r.max_err == rat(1, 4));
  CHECK(r.argmax_j == 1);
  CHECK(r.nearest == std::vector<Int>{Int(1300), Int(169)});
  // j = 2 distance is strictly smaller
  CHECK(r.errs[1] == rat(10401, 160000));
  CHECK(r.errs[1] < r.errs[0]);

  ErrorIdentityReport s = check_error_identity(Int(1), Int(10), rat(1, 3), 2);
  CHECK(s.zeta == rat(31, 300));
  CHECK(s.holds);
  CHECK(s.max_err == rat(1, 3));
  CHECK(s.errs[1] == rat(61, 900));

  // minus branch
  ErrorIdentityReport m = check_error_identity(Int(13), Int(100), rat(1, 4), 2, true);
  CHECK(m.zeta == rat(13, 100) - rat(1, 40000));
  CHECK(m.holds);

  CHECK_THROWS_AS(check_error_identity(Int(0), Int(1), rat(1, 4), 2), HypothesisUnmet);
  CHECK_THROWS_AS(check_error_identity(Int(13), Int(100), rat(1, 2), 2), HypothesisUnmet);
  CHECK_THROWS_AS(check_error_identity(Int(60), Int(100), rat(1, 4), 2), HypothesisUnmet);
}

TEST_CASE("error identity holds on random admissible instances") {
  std::mt19937 rng(20260822);
  std::uniform_int_distribution<long> kd(2, 4), qd(50, 400), dnum(1, 99);
  int done = 0;
  while (done < 100) {
    long k = kd(rng);
    long q = qd(rng);
    std::uniform_int_distribution<long> pd(1, q / 2 - 1);
    long p = pd(rng);
    Rational d(Int(dnum(rng)), Int(200));
    bool minus = (rng() & 1) != 0;
    ErrorIdentityReport r;
    try {
      r = check_error_identity(Int(p), Int(q), d, k, minus);
    } catch (const HypothesisUnmet&) {
      continue;  // e.g. minus pushed zeta to the edge
    }
    CHECK(r.holds);  // exact equality, zero tolerance
    CHECK(r.argmax_j == 1);
    ++done;
  }
}

TEST_CASE("error ratio trends toward the power weight above one half") {
  // zeta_t = 2/3 + (1/4) q^{-2} with q = 3t: the identity no longer
  // collapses to j = 1, but the ratio against d approaches the weight
  Rational d = rat(1, 4);
  Rational prev_gap;
  bool first = true;
  for (long t : {1L, 2L, 4L, 8L, 16L}) {
    Int q(3 * t);
    Int p(2 * t);
    Rational zeta = Rational(p, q) + d / Rational(q * q);
    SimError e = sim_error(zeta, 2, q * q);
    Rational ratio = e.err.lo() / d;
    Rational gap = (ratio - max_power_derivative(zeta, 2)).abs();
    if (!first) CHECK(gap < prev_gap);
    prev_gap = gap;
    first = false;
  }
  CHECK(prev_gap < rat(1, 1000));
}

TEST_CASE("primitive multiple decomposition") {
  auto r = primitive_decompose(2, {Int(12), Int(18), Int(27)});
  REQUIRE(r.has_value());
  CHECK(r->M == 3);
  CHECK(r->z0 == 2);
  CHECK(r->y0 == 3);

  auto z = primitive_decompose(2, {Int(5), Int(0), Int(0)});
  REQUIRE(z.has_value());
  CHECK(z->M == 5);
  CHECK(z->z0 == 1);
  CHECK(z->y0 == 0);

  CHECK(!primitive_decompose(2, {Int(12), Int(18), Int(26)}).has_value());
  // mixed zero pattern cannot come from a single y0
  CHECK(!primitive_decompose(2, {Int(4), Int(0), Int(9)}).has_value());

  CHECK_THROWS_AS(primitive_decompose(2, {Int(12), Int(18)}), std::invalid_argument);
  CHECK_THROWS_AS(primitive_decompose(2, {Int(0), Int(0), Int(0)}), std::invalid_argument);
}

TEST_CASE("decompose inverts reconstruct") {
  std::mt19937 rng(777);
  std::uniform_int_distribution<long> Md(1, 50), zd(1, 9), yd(-9, 9), kd(1, 4);
  for (int it = 0; it < 300; ++it) {
    PrimitiveDecomposition pd;
    pd.M = Md(rng);
    pd.z0 = zd(rng);
    do {
      pd.y0 = yd(rng);
    } while (gcd(pd.z0, pd.y0) != 1);
    long k = kd(rng);
    auto tuple = reconstruct(k, pd);
    auto back = primitive_decompose(k, tuple);
    REQUIRE(back.has_value());
    CHECK(back->M == pd.M);
    CHECK(back->z0 == pd.z0);
    CHECK(back->y0 == pd.y0);
  }
}

TEST_CASE("exhaustive sweep") {
  auto errs = error_sweep(RationalReal(rat(1, 3)), 1, 3);
  REQUIRE(errs.size() == 3);
  CHECK(errs[0].err.lo() == rat(1, 3));
  CHECK(errs[1].err.lo() == rat(1, 3));
  CHECK(errs[2].err.lo() == Rational(0));
  for (const auto& e : errs) CHECK(e.decided);

  CHECK(error_sweep(RationalReal(rat(1, 3)), 1, 0).empty());

  // parallel run merges into identical z order
  auto serial = error_sweep(RationalReal(rat(5201, 40000)), 2, 500, 1, 64);
  auto parallel = error_sweep(RationalReal(rat(5201, 40000)), 2, 500, 4, 64);
  REQUIRE(serial.size() == parallel.size());
  for (size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].z == parallel[i].z);
    CHECK(serial[i].err.lo() == parallel[i].err.lo());
    CHECK(serial[i].argmax_j == parallel[i].argmax_j);
  }
}

TEST_CASE("sweep covers the identity instance") {
  auto errs = error_sweep(RationalReal(rat(5201, 40000)), 2, 10000);
  CHECK(errs.back().err.lo() == rat(1, 4));
  CHECK(errs.back().argmax_j == 1);
}

TEST_CASE("dirichlet witness search") {
  auto w1 = dirichlet_witness(RationalReal(rat(1, 2)), 1, 2);
  REQUIRE(w1.has_value());
  CHECK(w1->q == 2);
  CHECK(w1->err.lo() == Rational(0));

  AlgebraicReal root2(Rational(-1), Rational(1), Int(2), 2);
  auto w2 = dirichlet_witness(root2, 1, 12);
  REQUIRE(w2.has_value());
  CHECK(w2->q == 12);
  CHECK(w2->nearest[0] == 5);

  auto w3 = dirichlet_witness(RationalReal(rat(1, 3)), 2, 9);
  REQUIRE(w3.has_value());
  CHECK(w3->q == 9);
  CHECK(w3->err.lo() == Rational(0));

  // q = 1 always qualifies: threshold is 1 and any distance is <= 1/2
  auto w4 = dirichlet_witness(RationalReal(rat(1, 2)), 1, 1);
  REQUIRE(w4.has_value());
  CHECK(w4->q == 1);
  CHECK(w4->err.lo() == rat(1, 2));
}
