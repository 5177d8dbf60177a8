#include "simprox/digit_construction.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "simprox/errors.hpp"

namespace simprox {

namespace {

constexpr long kPrecLadder[] = {32, 128, 512, 2048};

void require_properties(const ApproxFunction& psi, const std::vector<PropertyId>& ids,
                        const char* who) {
  for (const auto& id : ids)
    if (!psi.has_property(id))
      throw PreconditionViolation(std::string(who) + ": psi lacks (" + id.str() + ")");
}

Rational pow_of(long b, long e) { return Rational(Int(b)).pow(e); }

// x < a / a < x / a <= x against an enclosed value; Unknown while straddling
Tri rat_lt_enc(const Rational& x, const Enclosure& a) {
  if (x < a.lo()) return Tri::True;
  if (x >= a.hi()) return Tri::False;
  return Tri::Unknown;
}
Tri enc_le_rat(const Enclosure& a, const Rational& x) {
  if (a.hi() <= x) return Tri::True;
  if (a.lo() > x) return Tri::False;
  return Tri::Unknown;
}

// minimal integer s with b^{-s} < v, from both endpoints of the enclosure;
// nullopt until they agree
std::optional<long> min_negexp_below(long b, const Enclosure& v) {
  if (!v.is_positive()) return std::nullopt;
  long from_hi = min_exponent_above(Int(b), v.hi().reciprocal());
  if (v.is_point()) return from_hi;
  long from_lo = min_exponent_above(Int(b), v.lo().reciprocal());
  if (from_lo == from_hi) return from_hi;
  return std::nullopt;
}

// minimal integer s with b^{-s} < factor * Psi(b^m): the selection step all
// the digit recursions share
long select_negexp(const ApproxFunction& psi, long b, long m, const Rational& factor,
                   const char* who) {
  Rational x = pow_of(b, m);
  for (long prec : kPrecLadder) {
    Enclosure v = psi.eval(x, prec).scaled(factor);
    if (auto s = min_negexp_below(b, v)) return *s;
  }
  throw InconclusiveComparison(
      std::string(who) + ": selection target straddles a power of b at the precision cap");
}

// ---- interior digit choice for one block ----

// target value a, refinable to any precision (rational targets are points)
using TargetFn = std::function<Enclosure(long)>;

struct KappaCore {
  KappaDigits digits;
  Rational kappa{0};
  Rational certified_lower;
  bool lower_holds = true;
};

// digit-by-digit descent from position e+1: keep a digit A exactly when the
// scaled total stays strictly under a. Digits weigh 0 or A, so place value
// dominates and the greedy result is the maximum of the whole digit set.
std::optional<KappaCore> greedy_pass(const Enclosure& a, long A, long b, long R, long e,
                                     long f) {
  Rational w = Rational(A) * (pow_of(b, -e) + pow_of(b, -f));
  Rational scale = pow_of(b, R);
  KappaCore out;
  out.digits.e = e;
  out.digits.f = f;
  for (long l = e + 1; l <= f - 1; ++l) {
    Rational cand = out.kappa + Rational(A) * pow_of(b, -l);
    Tri t = rat_lt_enc(scale * (cand + w), a);
    if (is_unknown(t)) return std::nullopt;
    if (is_true(t)) {
      out.kappa = cand;
      out.digits.chi[l] = A;
    }
  }
  return out;
}

// a/b <= A b^R (b^{-e} + b^{-f}) < a, left side non-strict
Tri window_holds(const Enclosure& a, long A, long b, long R, long e, long f) {
  Rational W = Rational(A) * pow_of(b, R) * (pow_of(b, -e) + pow_of(b, -f));
  Tri left = enc_le_rat(a, Rational(b) * W);
  Tri right = rat_lt_enc(W, a);
  if (is_false(left) || is_false(right)) return Tri::False;
  if (is_true(left) && is_true(right)) return Tri::True;
  return Tri::Unknown;
}

void check_window(const TargetFn& target, long A, long b, long R, long e, long f,
                  const char* who) {
  for (long prec : kPrecLadder) {
    Tri t = window_holds(target(prec), A, b, R, e, f);
    if (is_true(t)) return;
    if (is_false(t))
      throw PreconditionViolation(std::string(who) +
                                  ": endpoint window a/b <= A b^R (b^-e + b^-f) < a fails");
  }
  throw InconclusiveComparison(std::string(who) +
                               ": endpoint window undecided at the precision cap");
}

// holds exactly when b^R (kappa + w) >= bound * a
Tri bound_check(const TargetFn& target, const Rational& num, const Rational& bound,
                long prec) {
  Enclosure a = target(prec);
  Rational lhs = num;
  if (lhs >= bound * a.hi()) return Tri::True;
  if (lhs < bound * a.lo()) return Tri::False;
  return Tri::Unknown;
}

bool resolve_bound(const TargetFn& target, const Rational& num, const Rational& bound,
                   const char* who) {
  for (long prec : kPrecLadder) {
    Tri t = bound_check(target, num, bound, prec);
    if (!is_unknown(t)) return is_true(t);
  }
  throw InconclusiveComparison(std::string(who) +
                               ": ratio bound undecided at the precision cap");
}

KappaCore choose_kappa_b3(const TargetFn& target, long A, long b, long R, long e, long f,
                          const char* who) {
  check_window(target, A, b, R, e, f, who);
  std::optional<KappaCore> out;
  for (long prec : kPrecLadder) {
    out = greedy_pass(target(prec), A, b, R, e, f);
    if (out) break;
  }
  if (!out)
    throw InconclusiveComparison(std::string(who) +
                                 ": greedy digit choice undecided at the precision cap");
  long m = f - e;
  Rational p = pow_of(b, m + 1);
  out->certified_lower = (p - Rational(1)) / ((p + Rational(b)) * Rational(b - 1));
  Rational num = pow_of(b, R) * (out->kappa + Rational(A) * (pow_of(b, -e) + pow_of(b, -f)));
  out->lower_holds = resolve_bound(target, num, out->certified_lower, who);
  return *out;
}

KappaCore choose_kappa_b2(const TargetFn& target, long R, long e, long f,
                          const char* who) {
  const long b = 2;
  check_window(target, 1, b, R, e, f, who);
  long m = f - e;
  Rational w = pow_of(b, -e) + pow_of(b, -f);
  Rational v = pow_of(b, 1 - e) - pow_of(b, -f);  // all digits e..f set
  Rational scale = pow_of(b, R);
  Rational num;

  // above the filled-block value the interior is set completely
  Tri above = Tri::Unknown;
  for (long prec : kPrecLadder) {
    above = rat_lt_enc(scale * v, target(prec));
    if (!is_unknown(above)) break;
  }
  if (is_unknown(above))
    throw InconclusiveComparison(std::string(who) +
                                 ": filled-block comparison undecided at the precision cap");

  KappaCore out;
  out.digits.e = e;
  out.digits.f = f;
  if (is_true(above)) {
    for (long l = e + 1; l <= f - 1; ++l) out.digits.chi[l] = 1;
    out.kappa = v - w;
    Rational p = pow_of(b, m + 1);
    out.certified_lower = (p - Rational(1)) / (p + Rational(2));
    num = scale * v;
    out.lower_holds = resolve_bound(target, num, out.certified_lower, who);
    return out;
  }

  // copy the leading binary digits of a 2^{-R} into the free positions; the
  // copied value undercuts a exactly when the discarded tail exceeds the
  // forced 2^{-f} end digit
  for (long prec : kPrecLadder) {
    Enclosure t = target(prec).scaled(pow_of(b, -R));
    Int n_lo = (t.lo() * pow_of(b, f - 1)).floor();
    Int n_hi = (t.hi() * pow_of(b, f - 1)).floor();
    if (n_lo != n_hi) continue;  // a digit boundary still straddled
    if (mpz_tstbit(n_lo.get_mpz_t(), static_cast<mp_bitcnt_t>(m - 1)) == 0)
      throw std::logic_error(std::string(who) + ": window left no leading digit at e");
    Enclosure rest = t.shifted(-(Rational(n_lo) * pow_of(b, 1 - f)));
    Tri strict = rat_lt_enc(pow_of(b, -f), rest);
    if (is_unknown(strict)) continue;
    if (is_true(strict)) {
      for (long i = 1; i <= m - 1; ++i)
        if (mpz_tstbit(n_lo.get_mpz_t(), static_cast<mp_bitcnt_t>(m - 1 - i))) {
          out.digits.chi[e + i] = 1;
          out.kappa += pow_of(b, -(e + i));
        }
      Rational p = pow_of(b, m);
      out.certified_lower = p / (p + Rational(1));
      num = scale * (out.kappa + w);
      out.lower_holds = resolve_bound(target, num, out.certified_lower, who);
      return out;
    }
    // terminating-expansion edge: the copy would tie or overshoot a, so fall
    // back to the greedy maximum; the copy bound is only reported, not owed
    std::optional<KappaCore> g = greedy_pass(target(prec), 1, b, R, e, f);
    if (!g) continue;
    out = *g;
    Rational p = pow_of(b, m);
    out.certified_lower = p / (p + Rational(1));
    num = scale * (out.kappa + w);
    out.lower_holds = resolve_bound(target, num, out.certified_lower, who);
    return out;
  }
  throw InconclusiveComparison(std::string(who) +
                               ": digit copy undecided at the precision cap");
}

KappaCore choose_kappa(const TargetFn& target, long A, long b, long R, long e, long f,
                       const char* who) {
  if (b == 2) return choose_kappa_b2(target, R, e, f, who);
  return choose_kappa_b3(target, A, b, R, e, f, who);
}

// ratio b^R (kappa + w) / a as a certified-below-1 enclosure
Enclosure certified_ratio(const TargetFn& target, const Rational& num, const char* who) {
  for (long prec : kPrecLadder) {
    Enclosure a = target(prec);
    if (!a.is_positive()) continue;
    Enclosure ratio = a.reciprocal().scaled(num);
    if (ratio.hi() < Rational(1)) return ratio;
  }
  throw InconclusiveComparison(std::string(who) +
                               ": window ratio not separated from 1 at the precision cap");
}

void check_shape(long A, long b, long R, long e, long f, const char* who) {
  if (b < 2) throw std::invalid_argument(std::string(who) + ": base must be >= 2");
  if (A < 1 || A >= b)
    throw std::invalid_argument(std::string(who) + ": amplitude must lie in [1, b-1]");
  if (R < 0 || R >= e || e >= f)
    throw std::invalid_argument(std::string(who) + ": needs 0 <= R < e < f");
}

// largest decay exponent theta with psi(x) <= x^{-theta} that separates from
// the golden ratio; the k = 1 gap bound leans on it
Rational certified_theta(const ApproxFunction& psi, const char* who) {
  std::optional<Rational> best;
  auto consider = [&](const Rational& th) {
    if (!certified_above_golden(th)) return;
    if (!psi.has_property(PropertyId::a_prime(th))) return;
    if (!best || th > *best) best = th;
  };
  if (auto nu = psi.power_exponent()) consider(*nu);
  for (const auto& id : psi.declared())
    if (id.kind == PropertyId::Kind::Aprime) consider(id.param);
  if (!best)
    throw PreconditionViolation(
        std::string(who) +
        ": k = 1 needs a decay exponent theta certified above the golden ratio");
  return *best;
}

}  // namespace

Rational KappaDigits::value(long b) const {
  Rational sum;
  for (const auto& [pos, digit] : chi) sum += Rational(digit) * pow_of(b, -pos);
  return sum;
}

KappaChoice greedy_kappa(const Rational& a, long A, long b, long R, long e, long f) {
  if (b < 3)
    throw std::invalid_argument("greedy_kappa: base 2 runs through greedy_kappa_b2");
  check_shape(A, b, R, e, f, "greedy_kappa");
  TargetFn target = [&a](long) { return Enclosure(a); };
  KappaCore core = choose_kappa_b3(target, A, b, R, e, f, "greedy_kappa");
  Rational num =
      pow_of(b, R) * (core.kappa + Rational(A) * (pow_of(b, -e) + pow_of(b, -f)));
  return {core.digits, core.kappa, num / a, core.certified_lower, core.lower_holds};
}

KappaChoice greedy_kappa_b2(const Rational& a, long R, long e, long f) {
  check_shape(1, 2, R, e, f, "greedy_kappa_b2");
  TargetFn target = [&a](long) { return Enclosure(a); };
  KappaCore core = choose_kappa_b2(target, R, e, f, "greedy_kappa_b2");
  Rational num = pow_of(2, R) * (core.kappa + pow_of(2, -e) + pow_of(2, -f));
  return {core.digits, core.kappa, num / a, core.certified_lower, core.lower_holds};
}

SparseConstruction sparse_sequence(const ApproxFunction& psi, long k, long b, long a1,
                                   long terms, const std::map<long, long>& branch,
                                   const DeltaSchedule& delta) {
  if (k < 1) throw std::invalid_argument("sparse_sequence: k must be >= 1");
  if (b < 2) throw std::invalid_argument("sparse_sequence: base must be >= 2");
  if (terms < 1) throw std::invalid_argument("sparse_sequence: terms must be >= 1");
  if (a1 < 3) throw PreconditionViolation("sparse_sequence: needs a1 >= 3");
  require_properties(psi, {PropertyId::a3(), PropertyId::b2()}, "sparse_sequence");
  for (const auto& [idx, val] : branch) {
    (void)val;
    if (idx < 2 || idx > terms || idx % 2 != 0)
      throw std::invalid_argument(
          "sparse_sequence: branch only overrides even indices within [2, terms]");
  }

  std::vector<long> a{a1};
  std::vector<long> overridden;
  while (static_cast<long>(a.size()) < terms) {
    long n = static_cast<long>(a.size());  // extending a_n to a_{n+1}
    long prev = a.back();
    if (prev > (1L << 55) / std::max(k, 2L))
      throw EvalOverflow("sparse_sequence: exponent out of range");
    if (auto it = branch.find(n + 1); it != branch.end()) {
      long lo = (k + 1) * prev, hi = 2 * k * prev - 1;
      if (it->second < lo || it->second > hi)
        throw PreconditionViolation("sparse_sequence: branch a_" + std::to_string(n + 1) +
                                    " must lie in [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]");
      a.push_back(it->second);
      overridden.push_back(n + 1);
      continue;
    }
    Rational damp = (Rational(1) + delta.at(n)).reciprocal();
    long s = select_negexp(psi, b, k * prev, damp, "sparse_sequence");
    long next = k * prev + s;
    // (A3) forces the target below 1/2, so the exponents must run away
    if (next <= prev) throw std::logic_error("sparse_sequence: exponents failed to grow");
    a.push_back(next);
  }

  long n0 = 1;
  for (long i = 0; i + 1 < static_cast<long>(a.size()); ++i) {
    bool over = std::binary_search(overridden.begin(), overridden.end(), i + 2);
    if (!over && a[i + 1] < 2 * k * a[i]) n0 = i + 2;
  }

  std::ostringstream prov;
  prov << "a(n+1) minimal with b^(k a(n) - a(n+1)) < psi(b^(k a(n)))"
       << (delta.is_zero() ? "" : " under damping") << "; psi = " << psi.spec_string()
       << ", k = " << k << ", b = " << b;
  if (!delta.is_zero()) prov << ", damping schedule delta = " << delta.str();
  if (!overridden.empty()) {
    prov << "; branch overrides at";
    for (long idx : overridden) prov << ' ' << idx;
  }
  return {DigitNumber(b, 1, a), std::move(a), n0, prov.str()};
}

BlockConstruction block_sequence(const ApproxFunction& psi, const BlockSpec& spec,
                                 long terms) {
  long b = spec.b, A = spec.A, k = spec.k;
  if (b < 2) throw std::invalid_argument("block_sequence: base must be >= 2");
  if (A < 1 || A >= b)
    throw std::invalid_argument("block_sequence: amplitude must lie in [1, b-1]");
  if (k < 1) throw std::invalid_argument("block_sequence: k must be >= 1");
  if (spec.e1 < 1) throw std::invalid_argument("block_sequence: e1 must be >= 1");
  if (terms < 1) throw std::invalid_argument("block_sequence: terms must be >= 1");

  Rational theta{0};
  if (k >= 2) {
    require_properties(psi, {PropertyId::a3(), PropertyId::b2()}, "block_sequence");
  } else {
    theta = certified_theta(psi, "block_sequence");
    require_properties(psi, {PropertyId::b2()}, "block_sequence");
  }

  std::vector<long> es{spec.e1}, fs{spec.e1 + 1};
  std::vector<Rational> kappas, bounds;
  std::vector<Enclosure> ratios;
  bool bounds_hold = true;
  std::vector<long> positions{spec.e1, spec.e1 + 1};
  std::vector<DigitNumber::Block> blocks{{spec.e1, spec.e1 + 1}};

  for (long n = 1; n < terms; ++n) {
    long fn = fs.back();
    if (fn > (1L << 55) / std::max(k, 2L))
      throw EvalOverflow("block_sequence: exponent out of range");
    long R = k * fn;
    Rational damp = (Rational(1) + spec.delta.at(n)).reciprocal();
    // both end digits together: b^{R-e} + b^{R-f} = C b^{R-e} with f = e+(n+1)
    Rational C = Rational(1) + pow_of(b, -(n + 1));
    long e_next = R + select_negexp(psi, b, R, damp / C, "block_sequence");
    // the decay preconditions put e_{n+1} far beyond f_n; guard the invariant
    if (e_next <= fn) throw std::logic_error("block_sequence: blocks failed to separate");
    long f_next = e_next + (n + 1);

    TargetFn target = [&psi, b, R, &damp](long prec) {
      return psi.eval(pow_of(b, R), prec).scaled(damp);
    };
    KappaCore core = choose_kappa(target, A, b, R, e_next, f_next, "block_sequence");
    Rational num = pow_of(b, R) *
                   (core.kappa + Rational(A) * (pow_of(b, -e_next) + pow_of(b, -f_next)));

    positions.push_back(e_next);
    for (const auto& [pos, digit] : core.digits.chi) {
      (void)digit;
      positions.push_back(pos);
    }
    positions.push_back(f_next);
    blocks.push_back({e_next, f_next});
    es.push_back(e_next);
    fs.push_back(f_next);
    kappas.push_back(core.kappa);
    ratios.push_back(certified_ratio(target, num, "block_sequence"));
    bounds.push_back(core.certified_lower);
    bounds_hold = bounds_hold && core.lower_holds;
  }

  long n0 = 1;
  for (long i = 0; i + 1 < static_cast<long>(es.size()); ++i) {
    bool ok = k >= 2 ? es[i + 1] >= 2 * k * fs[i]
                     : Rational(es[i + 1]) >= (theta + Rational(1)) * Rational(fs[i]);
    if (!ok) n0 = i + 2;
  }

  std::ostringstream prov;
  prov << "e(n+1) minimal with b^(k f(n) - e) + b^(k f(n) - f) < psi(b^(k f(n)))"
       << (spec.delta.is_zero() ? "" : " under damping")
       << ", f = e + (n+1); interior digits chosen greedily per block; psi = "
       << psi.spec_string() << ", k = " << k << ", b = " << b << ", A = " << A;
  if (!spec.delta.is_zero())
    prov << ", damping schedule delta = " << spec.delta.str();
  if (k == 1) prov << "; gap bound from decay exponent theta = " << theta.str();
  return {DigitNumber(b, A, std::move(positions), std::move(blocks)),
          std::move(es),
          std::move(fs),
          std::move(kappas),
          std::move(ratios),
          std::move(bounds),
          bounds_hold,
          n0,
          std::move(theta),
          prov.str()};
}

VerificationReport klar_check(const DigitNumber& d, const Rational& eps, long n_lo,
                              long n_hi) {
  if (!d.has_blocks())
    throw PreconditionViolation("klar_check: needs a block construction");
  const auto& blocks = d.blocks();
  long count = static_cast<long>(blocks.size());
  if (count < 2)
    throw PreconditionViolation("klar_check: needs at least two computed blocks");
  if (eps.sign() <= 0) throw std::invalid_argument("klar_check: eps must be > 0");
  if (n_lo < 1 || n_hi < n_lo || n_hi > count - 1)
    throw std::invalid_argument(
        "klar_check: range must sit inside [1, blocks-1]; past the last computed block "
        "the digit tail is unknown");

  // attainable decay rate: min over the computed steps of e_{n+1}/f_n
  Rational omega(Int(blocks[1].first), Int(blocks[0].second));
  for (long n = 2; n < count; ++n) {
    Rational cand(Int(blocks[n].first), Int(blocks[n - 1].second));
    omega = std::min(omega, cand);
  }
  Rational expo = Rational(1) + eps - omega;  // threshold x^expo

  VerificationReport rep;
  rep.subject = d.describe();
  rep.psi = ApproxFunction::power(Rational(1), omega - Rational(1) - eps).spec_string();
  rep.k = 1;
  rep.base = d.base();
  rep.vacuous = expo.sign() >= 0;
  rep.note = "omega_hat = " + omega.str() + " over steps 1.." + std::to_string(count - 1) +
             "; eps = " + eps.str();
  if (rep.vacuous) rep.note += "; threshold exponent >= 0, bound exceeds 1/2";

  Enclosure zeta = d.enclosure(d.max_depth());
  long prec_used = kPrecLadder[0];
  for (long n = n_lo; n <= n_hi; ++n) {
    Rational x = pow_of(d.base(), blocks[n - 1].second);
    SpecialCheck chk;
    chk.z = x.num();
    chk.n = n;
    chk.lower = Tri::True;  // one-sided claim
    chk.err = zeta.scaled(x).dist_to_int();
    for (long prec : kPrecLadder) {
      Enclosure threshold = rational_power(Enclosure(x), expo, prec);
      chk.upper = lt(chk.err, threshold);
      prec_used = std::max(prec_used, prec);
      if (!is_unknown(chk.upper)) break;
    }
    rep.special_checks.push_back(std::move(chk));
  }
  rep.precisions.push_back(prec_used);
  return rep;
}

Enclosure relative_remainder(const RealNumber& zeta, long k, const Int& z,
                             const Rational& base_value) {
  if (k < 1) throw std::invalid_argument("relative_remainder: k must be >= 1");
  if (base_value.sign() <= 0)
    throw std::invalid_argument("relative_remainder: base value must be positive");
  Enclosure zc = zeta.enclosure(zeta.max_depth());
  Rational zr{z};
  Enclosure err{Rational(0)};
  for (long j = 1; j <= k; ++j)
    err = max_enclosure(err, zc.pow(j).scaled(zr).dist_to_int());
  return err.scaled(base_value.reciprocal()).shifted(Rational(-1));
}

}  // namespace simprox
