#include "simprox/cf_construction.hpp"

#include <sstream>
#include <stdexcept>

#include "simprox/errors.hpp"
#include "simprox/powers_core.hpp"

namespace simprox {

namespace {

constexpr long kPrecLadder[] = {64, 256, 1024, 4096};

void require_properties(const ApproxFunction& psi,
                        std::initializer_list<PropertyId> ids, const char* who) {
  for (const auto& id : ids) {
    if (!psi.has_property(id)) {
      std::ostringstream msg;
      msg << who << ": psi lacks (" << id.str()
          << "); derive it from a symbolic family or declare it";
      throw PreconditionViolation(msg.str());
    }
  }
}

// minimal integer strictly greater than 1/(psi(q)*q)
Int next_quotient(const ApproxFunction& psi, const Int& q) {
  for (long prec : kPrecLadder) {
    Enclosure t = psi.eval(Rational(q), prec).scaled(Rational(q)).reciprocal();
    Int cand = t.lo().floor() + 1;
    if (Rational(cand) > t.hi()) return cand;
  }
  std::ostringstream msg;
  msg << "1/(psi(q)q) straddles an integer at the precision cap, q = " << to_string(q);
  throw InconclusiveComparison(msg.str());
}

}  // namespace

void BranchPlan::validate() const {
  if (prefix.empty()) throw std::invalid_argument("BranchPlan: prefix must be nonempty");
  for (size_t i = 1; i < prefix.size(); ++i)
    if (prefix[i] < 1)
      throw std::invalid_argument("BranchPlan: partial quotients must be >= 1");
  long m = static_cast<long>(prefix.size()) - 1;
  for (const auto& [idx, bit] : bit_schedule) {
    if (idx <= m)
      throw std::invalid_argument("BranchPlan: bit schedule may only touch indices beyond the prefix");
    if (bit != 0 && bit != 1)
      throw std::invalid_argument("BranchPlan: bits must be 0 or 1");
  }
}

JarnikResult jarnik_quotients(const ApproxFunction& psi, const BranchPlan& plan,
                              long terms) {
  plan.validate();
  require_properties(psi, {PropertyId::a1(), PropertyId::b2()}, "jarnik_quotients");
  long m = static_cast<long>(plan.prefix.size()) - 1;
  if (terms < m) throw std::invalid_argument("jarnik_quotients: terms below prefix length");

  CFNumber cf(plan.prefix[0],
              std::vector<Int>(plan.prefix.begin() + 1, plan.prefix.end()));
  std::vector<Enclosure> ratios;
  ratios.reserve(static_cast<size_t>(terms - m));
  while (cf.length() < terms) {
    long n = cf.length();
    const Int& q = cf.q(n);
    if (q < 1)
      throw PreconditionViolation("jarnik_quotients: prefix has q_n < 1, recursion undefined");
    Int b = next_quotient(psi, q);
    auto bit = plan.bit_schedule.find(n + 1);
    if (bit != plan.bit_schedule.end() && bit->second == 1) b = b + 1;
    // slack of this step, recorded at modest precision (exact for powers)
    Enclosure r = psi.eval(Rational(q), kPrecLadder[1]).scaled(Rational(q) * Rational(b));
    ratios.push_back(r);
    cf.append(b);
  }
  return JarnikResult{std::move(cf), std::move(ratios), m + 1};
}

std::vector<Int> target_interval(const Rational& lo_in, const Rational& hi_in) {
  if (!(lo_in < hi_in)) throw DegenerateInterval("target_interval: interval is empty");
  if (lo_in < Rational(0))
    throw std::invalid_argument("target_interval: negative intervals not supported");

  Rational lo = lo_in, hi = hi_in;

  // Integer part. The cylinder of [b] alone is the open (b, b+1); when a
  // whole unit interval fits, its left end is already a shortest prefix.
  // Otherwise the target is confined to one unit interval: clipping at an
  // interior integer keeps a nonempty sub-target inside I.
  Int b0 = lo.ceil();
  if (Rational(b0 + 1) <= hi) return {b0};
  b0 = lo.floor();
  if (!lo.is_integer() && Rational(b0 + 1) < hi) {
    b0 += 1;
    lo = Rational(b0);
  }

  std::vector<Int> prefix{b0};
  Int p = b0, q(1), pp(1), qp(0);  // prefix value p/q, previous convergent

  for (;;) {
    // The next complete quotient t maps to x = (t*p + pp)/(t*q + qp); pull
    // (lo, hi) back through the inverse, the prefix value itself sitting at
    // t = infinity.  The image is an open interval in (1, infinity).
    auto t_of = [&](const Rational& x) -> std::optional<Rational> {
      Rational den = x * Rational(q) - Rational(p);
      if (den.sign() == 0) return std::nullopt;
      return (Rational(pp) - x * Rational(qp)) / den;
    };
    std::optional<Rational> ta = t_of(lo), tb = t_of(hi);
    Rational tmin = ta ? (tb && *tb < *ta ? *tb : *ta) : *tb;
    std::optional<Rational> tmax;
    if (ta && tb) tmax = *ta < *tb ? *tb : *ta;

    // minimal quotient whose full cylinder (a, a+1) sits in the t-interval
    Int a = tmin.ceil();
    if (a < 1) a = 1;
    if (!tmax || Rational(a + 1) <= *tmax) {
      prefix.push_back(a);
      return prefix;
    }

    // No full cylinder fits yet: descend into the quotient the target
    // occupies (the largest integer strictly below tmax) and clip I to that
    // cylinder, whose endpoints are the new value and the value with the
    // last quotient raised by one.
    a = tmax->is_integer() ? tmax->floor() - 1 : tmax->floor();
    if (a < 1) a = 1;
    prefix.push_back(a);
    Int np = a * p + pp, nq = a * q + qp;
    Rational v(np, nq), s(np + p, nq + q);
    pp = p;
    qp = q;
    p = np;
    q = nq;
    const Rational& clo = v < s ? v : s;
    const Rational& chi = v < s ? s : v;
    if (lo < clo) lo = clo;
    if (hi > chi) hi = chi;
  }
}

VerificationReport verify_schatz(const CFNumber& zeta, const ApproxFunction& psi,
                                 const Rational& c, long n_lo, long n_hi) {
  if (!(c >= Rational(0) && c < Rational(1)))
    throw std::invalid_argument("verify_schatz: c must lie in [0, 1)");
  if (n_lo < 1 || n_hi < n_lo || n_hi > zeta.length())
    throw std::invalid_argument("verify_schatz: n range out of bounds");

  VerificationReport rep;
  rep.subject = zeta.describe();
  rep.psi = psi.spec_string();
  rep.k = 1;
  rep.sweep.run = false;

  Enclosure cyl = zeta.enclosure(zeta.max_depth());
  for (long n = n_lo; n <= n_hi; ++n) {
    SpecialCheck chk;
    chk.n = n;
    chk.z = zeta.q(n);
    // |q_n zeta - p_n| over the cylinder: exact rational endpoints
    chk.err = cyl.scaled(Rational(zeta.q(n))).shifted(Rational(-zeta.p(n))).abs();
    for (long prec : kPrecLadder) {
      Enclosure bound = psi.eval(Rational(zeta.q(n)), prec);
      chk.upper = lt(chk.err, bound);
      chk.lower = lt(bound.scaled(c), chk.err);
      if (!is_unknown(chk.upper) && !is_unknown(chk.lower)) {
        rep.precisions.push_back(prec);
        break;
      }
    }
    rep.special_checks.push_back(chk);
  }

  // least n_hat with every check from n_hat..n_hi passing
  long n_hat = 0;
  for (long i = static_cast<long>(rep.special_checks.size()) - 1; i >= 0; --i) {
    if (!rep.special_checks[static_cast<size_t>(i)].passed()) break;
    n_hat = rep.special_checks[static_cast<size_t>(i)].n;
  }
  if (n_hat != 0) {
    rep.set_threshold("n_hat", Int(n_hat));
    // the window claim is asymptotic: misses below n_hat are reported but
    // do not decide the verdict
    long excluded = 0;
    for (auto& chk : rep.special_checks)
      if (chk.n < n_hat && !chk.passed()) {
        chk.counted = false;
        ++excluded;
      }
    if (excluded > 0)
      rep.note = "excluded " + std::to_string(excluded) +
                 " miss(es) below n_hat=" + std::to_string(n_hat);
  }
  return rep;
}

TheorOutcome theor_construct(const ApproxFunction& psi, long k, const Rational& lo,
                             const Rational& hi, TheoremClaim claim,
                             std::optional<Rational> c0, long terms) {
  if (k < 1) throw std::invalid_argument("theor_construct: k must be >= 1");
  if (!(lo < hi)) throw DegenerateInterval("theor_construct: region is empty");

  std::ostringstream notes;
  notes << "psi=" << psi.spec_string() << " k=" << k << " region=(" << lo.str() << ","
        << hi.str() << ")";

  if (claim == TheoremClaim::First) {
    if (lo < Rational(0) || hi > Rational(Int(1), Int(2)))
      throw PreconditionViolation("theor_construct (first claim): region must sit inside (0, 1/2)");
    require_properties(psi, {PropertyId::a3(), PropertyId::b2()},
                       "theor_construct (first claim)");
    ApproxFunction driver = k == 1 ? psi : psi.power_lifted(k);
    BranchPlan plan;
    plan.prefix = target_interval(lo, hi);
    JarnikResult jr = jarnik_quotients(driver, plan, terms);
    notes << " claim=first prefix=" << CFNumber(plan.prefix[0],
                 {plan.prefix.begin() + 1, plan.prefix.end()}).describe();
    return TheorOutcome{std::move(jr.cf),    std::move(jr.ratios), std::move(driver),
                        std::move(plan.prefix), k,                 Rational(1),
                        false,               notes.str()};
  }

  // second claim
  if (!c0 || !(*c0 > Rational(0) && *c0 < Rational(1)))
    throw PreconditionViolation("theor_construct (second claim): c0 in (0,1) required");
  require_properties(psi, {PropertyId::b2()}, "theor_construct (second claim)");

  // the weight bound d < 1/(2 sup L) over the region; sup sits at the right
  // endpoint because the weight is non-decreasing
  Rational sup_weight = max_power_derivative(hi, k);
  Rational d_bound = Rational(1) / (Rational(2) * sup_weight);
  bool have_small_d = false;
  Rational probe = d_bound * Rational(Int(999), Int(1000));
  if (psi.has_property(PropertyId::a2(probe))) have_small_d = true;
  for (const auto& id : psi.declared())
    if (id.kind == PropertyId::Kind::A2 && id.param < d_bound) have_small_d = true;
  if (!have_small_d) {
    std::ostringstream msg;
    msg << "theor_construct (second claim): needs (A2)(d) for some d < " << d_bound.str();
    throw PreconditionViolation(msg.str());
  }

  Rational center = (lo + hi) / Rational(2);
  Rational weight = center > Rational(0) ? max_power_derivative(center, k) : Rational(1);
  if (weight == Rational(1)) {
    // the region reaches below 1/2, where the weight plateau makes the
    // first claim apply verbatim on the overlap
    Rational lo2 = lo < Rational(0) ? Rational(0) : lo;
    Rational hi2 = hi > Rational(Int(1), Int(2)) ? Rational(Int(1), Int(2)) : hi;
    TheorOutcome out = theor_construct(psi, k, lo2, hi2, TheoremClaim::First, {}, terms);
    out.delegated_to_first = true;
    out.notes = notes.str() + " claim=second delegated_to=first on (" + lo2.str() + "," +
                hi2.str() + ")";
    return out;
  }

  ApproxFunction lifted = k == 1 ? psi : psi.power_lifted(k);
  ApproxFunction driver = lifted.scaled(weight);
  BranchPlan plan;
  plan.prefix = target_interval(lo, hi);
  JarnikResult jr = jarnik_quotients(driver, plan, terms);
  notes << " claim=second c0=" << c0->str() << " scale=" << weight.str()
        << " d_bound=" << d_bound.str();
  return TheorOutcome{std::move(jr.cf),       std::move(jr.ratios), std::move(driver),
                      std::move(plan.prefix), k,                    weight,
                      false,                  notes.str()};
}

}  // namespace simprox
