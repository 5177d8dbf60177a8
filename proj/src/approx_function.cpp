#include "simprox/approx_function.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>
#include <utility>

#include "simprox/errors.hpp"
#include "simprox/real_number.hpp"

namespace simprox {

// ---- disturbance schedules ----

DeltaSchedule DeltaSchedule::inverse_shifted(long shift) {
  if (shift < 0) throw std::invalid_argument("DeltaSchedule: shift must be >= 0");
  DeltaSchedule s;
  s.kind = Kind::InverseShifted;
  s.shift = shift;
  return s;
}

DeltaSchedule DeltaSchedule::constant(Rational r) {
  if (r.sign() < 0) throw std::invalid_argument("DeltaSchedule: constant must be >= 0");
  DeltaSchedule s;
  s.kind = Kind::Const;
  s.value = std::move(r);
  return s;
}

DeltaSchedule DeltaSchedule::parse(std::string_view token) {
  if (token == "zero") return zero();
  if (token == "harmonic") return inverse_shifted(1);
  if (token == "invn") return inverse_shifted(0);
  constexpr std::string_view kConst = "const:";
  if (token.substr(0, kConst.size()) == kConst)
    return constant(Rational::parse(token.substr(kConst.size())));
  throw ParseError("unknown disturbance schedule \"" + std::string(token) +
                   "\" (expected zero|harmonic|invn|const:r)");
}

Rational DeltaSchedule::at(long n) const {
  if (n < 1) throw std::invalid_argument("DeltaSchedule::at: step index starts at 1");
  switch (kind) {
    case Kind::Zero: return Rational(0);
    case Kind::InverseShifted: return Rational(Int(1), Int(n + shift));
    default: return value;
  }
}

Rational DeltaSchedule::max_value() const {
  switch (kind) {
    case Kind::Zero: return Rational(0);
    case Kind::InverseShifted: return Rational(Int(1), Int(1 + shift));
    default: return value;
  }
}

std::string DeltaSchedule::str() const {
  switch (kind) {
    case Kind::Zero: return "zero";
    case Kind::InverseShifted:
      if (shift == 0) return "invn";
      if (shift == 1) return "harmonic";
      return "invshift:" + std::to_string(shift);
    default: return "const:" + value.str();
  }
}

// ---- property identifiers ----

PropertyId PropertyId::parse(std::string_view s) {
  auto colon = s.find(':');
  std::string_view head = s.substr(0, colon);
  std::string_view tail = colon == std::string_view::npos ? std::string_view{} : s.substr(colon + 1);
  auto need_param = [&]() {
    if (tail.empty()) throw ParseError("property \"" + std::string(s) + "\" needs a parameter");
    return Rational::parse(tail);
  };
  auto need_degree = [&]() {
    Rational r = need_param();
    if (!r.is_integer() || r.sign() <= 0)
      throw ParseError("property degree must be a positive integer");
    return static_cast<long>(r.num().get_si());
  };
  if (head == "A1") return a1();
  if (head == "A2") return a2(need_param());
  if (head == "A3") return a3();
  if (head == "Aprime") return a_prime(need_param());
  if (head == "B1") return b1();
  if (head == "B2") return b2();
  if (head == "A0") return a0(need_degree());
  if (head == "B0") return b0(need_degree());
  throw ParseError("unknown property \"" + std::string(s) + "\"");
}

std::string PropertyId::str() const {
  switch (kind) {
    case Kind::A1: return "A1";
    case Kind::A2: return "A2:" + param.str();
    case Kind::A3: return "A3";
    case Kind::Aprime: return "Aprime:" + param.str();
    case Kind::B1: return "B1";
    case Kind::B2: return "B2";
    case Kind::A0: return "A0:" + std::to_string(degree);
    default: return "B0:" + std::to_string(degree);
  }
}

std::string to_string(PropertyReport::Verdict v) {
  switch (v) {
    case PropertyReport::Verdict::Pass: return "pass";
    case PropertyReport::Verdict::Fail: return "fail";
    case PropertyReport::Verdict::DeclaredConsistent: return "declared+consistent";
    case PropertyReport::Verdict::Undeclared: return "undeclared";
    default: return "inconclusive";
  }
}

// ---- numeric kernels ----

namespace {

// Outward dyadic rounding to keep repeated interval squaring from blowing up
// numerator sizes.
Enclosure round_out(const Enclosure& e, long bits) {
  Int scale = Int(1) << static_cast<unsigned long>(bits);
  Rational sc{scale};
  Rational lo((e.lo() * sc).floor(), scale);
  Rational hi((e.hi() * sc).ceil(), scale);
  return Enclosure(std::move(lo), std::move(hi));
}

long exponent_as_long(const Int& v, const char* what) {
  if (!v.fits_slong_p()) throw EvalOverflow(std::string(what) + ": exponent out of range");
  return v.get_si();
}

// x^e for a positive rational point x and rational e.
Enclosure rational_power_point(const Rational& x, const Rational& expo, long prec) {
  if (expo.is_integer()) return Enclosure(x.pow(exponent_as_long(expo.num(), "pow")));
  long p = exponent_as_long(expo.num(), "pow");
  if (!fits_ulong(expo.den())) throw EvalOverflow("pow: exponent denominator out of range");
  unsigned long q = expo.den().get_ui();
  // root step: x^{1/q}
  RootResult rn = iroot(x.num(), q);
  RootResult rd = iroot(x.den(), q);
  Enclosure root;
  if (rn.exact && rd.exact) {
    root = Enclosure(Rational(rn.root, rd.root));
  } else {
    long pb = std::max(prec, 8L);
    for (;;) {
      Int scaled = x.num() << (q * static_cast<unsigned long>(pb));
      RootResult r = iroot(fdiv(scaled, x.den()), q);
      if (r.root > 0) {
        Int den = Int(1) << static_cast<unsigned long>(pb);
        root = Enclosure(Rational(r.root, den), Rational(r.root + 1, den));
        break;
      }
      pb *= 2;  // argument below 2^{-q*pb}; widen the fixed point
      if (pb > (1L << 26)) throw EvalOverflow("pow: argument too small to bracket");
    }
  }
  return root.pow(p);
}

constexpr long kExpNegMaxT = 1L << 18;

}  // namespace

Enclosure rational_power(const Enclosure& x, const Rational& expo, long prec) {
  if (x.lo().sign() <= 0) throw std::domain_error("rational_power: requires x > 0");
  Enclosure a = rational_power_point(x.lo(), expo, prec);
  if (x.is_point()) return a;
  Enclosure b = rational_power_point(x.hi(), expo, prec);
  // x -> x^e is monotone, so the hull of the endpoint images is the image
  Rational lo = std::min(a.lo(), b.lo());
  Rational hi = std::max(a.hi(), b.hi());
  return Enclosure(std::move(lo), std::move(hi));
}

Enclosure exp_neg(const Rational& t, long prec) {
  if (t.sign() < 0) throw std::domain_error("exp_neg: requires t >= 0");
  if (t.is_zero()) return Enclosure(Rational(1));
  if (t > Rational(kExpNegMaxT))
    throw EvalOverflow("exp_neg: exp(-t) below representable range for t = " + t.str());
  // halve into (0,1], run the alternating series there, square back up
  long m = 0;
  Rational u = t;
  while (u > Rational(1)) {
    u /= Rational(2);
    ++m;
  }
  // positivity of the result needs ~1.5*t bits; rounding slack on top
  long core = prec + 2 * m + 16 + (3 * exponent_as_long(t.ceil(), "exp_neg")) / 2;
  Rational thresh(Int(1), Int(1) << static_cast<unsigned long>(core));
  Rational sum(1), term(1), lo(0), hi(1);
  for (long i = 1; term > thresh; ++i) {
    term = term * u / Rational(i);
    if (i % 2 == 1) {
      sum -= term;
      lo = sum;
    } else {
      sum += term;
      hi = sum;
    }
  }
  Enclosure e(lo, hi);
  for (long s = 0; s < m; ++s) e = round_out(e.pow(2), core);
  return e;
}

bool certified_above_golden(const Rational& theta) {
  for (long prec : {64, 128, 256, 512}) {
    Enclosure g = golden_ratio(prec);
    if (theta > g.hi()) return true;
    if (theta <= g.lo()) return false;
  }
  return false;  // never separated; refuse to certify
}

// ---- expression tree ----

struct ApproxNode {
  enum class Kind { Power, Exp, Scale, Lift, TransformJ, Disturb };
  Kind kind;
  Rational c, nu;       // Power: c * x^{-nu}; Exp reuses c
  Rational eps, sigma;  // Exp: c * exp(-eps * x^sigma)
  Enclosure factor;     // Scale
  std::string factor_label;
  long deg = 0;         // Lift k / TransformJ j
  DeltaSchedule sched;  // Disturb
  std::shared_ptr<const ApproxNode> child;
};

using Node = ApproxNode;
using Kind = Node::Kind;

ApproxFunction::ApproxFunction(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

ApproxFunction ApproxFunction::with_root(std::shared_ptr<const Node> root) const {
  // wrapper results do not inherit caller declarations: a condition asserted
  // for Psi says nothing about a transform of Psi
  return ApproxFunction(std::move(root));
}

ApproxFunction ApproxFunction::power(Rational c, Rational nu) {
  if (c.sign() <= 0) throw std::invalid_argument("ApproxFunction::power: c must be > 0");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Power;
  n->c = std::move(c);
  n->nu = std::move(nu);
  return ApproxFunction(std::move(n));
}

ApproxFunction ApproxFunction::exp_family(Rational c, Rational eps, Rational sigma) {
  if (c.sign() <= 0 || eps.sign() <= 0 || sigma.sign() <= 0)
    throw std::invalid_argument("ApproxFunction::exp_family: c, eps, sigma must be > 0");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Exp;
  n->c = std::move(c);
  n->eps = std::move(eps);
  n->sigma = std::move(sigma);
  return ApproxFunction(std::move(n));
}

ApproxFunction ApproxFunction::scaled(const Rational& f) const {
  if (f.sign() <= 0) throw std::invalid_argument("ApproxFunction::scaled: factor must be > 0");
  if (root_->kind == Kind::Power) return power(root_->c * f, root_->nu);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Scale;
  n->factor = Enclosure(f);
  n->factor_label = f.str();
  n->child = root_;
  return with_root(std::move(n));
}

ApproxFunction ApproxFunction::scaled(const Enclosure& f, const std::string& label) const {
  if (!f.is_positive()) throw std::invalid_argument("ApproxFunction::scaled: factor must be > 0");
  if (f.is_point() && label.empty()) return scaled(f.lo());
  auto n = std::make_shared<Node>();
  n->kind = Kind::Scale;
  n->factor = f;
  n->factor_label = label.empty() ? f.str() : label;
  n->child = root_;
  return with_root(std::move(n));
}

ApproxFunction ApproxFunction::power_lifted(long k) const {
  if (k < 2) throw std::invalid_argument("ApproxFunction::power_lifted: k must be >= 2");
  if (root_->kind == Kind::Power)
    return power(root_->c, root_->nu * Rational(k) + Rational(k - 1));
  auto n = std::make_shared<Node>();
  n->kind = Kind::Lift;
  n->deg = k;
  n->child = root_;
  return with_root(std::move(n));
}

ApproxFunction ApproxFunction::transformed_j(long j) const {
  if (j < 1) throw std::invalid_argument("ApproxFunction::transformed_j: j must be >= 1");
  if (j == 1) return *this;
  if (root_->kind == Kind::Power)
    return power(root_->c, (root_->nu - Rational(j) + Rational(1)) / Rational(j));
  auto n = std::make_shared<Node>();
  n->kind = Kind::TransformJ;
  n->deg = j;
  n->child = root_;
  return with_root(std::move(n));
}

ApproxFunction ApproxFunction::disturbed(DeltaSchedule sched) const {
  if (sched.is_zero()) return *this;
  auto n = std::make_shared<Node>();
  n->kind = Kind::Disturb;
  n->sched = std::move(sched);
  n->child = root_;
  return with_root(std::move(n));
}

// ---- evaluation ----

namespace {

Enclosure eval_node(const Node* n, const Enclosure& x, long prec, std::optional<long> step) {
  switch (n->kind) {
    case Kind::Power:
      return rational_power(x, -n->nu, prec).scaled(n->c);
    case Kind::Exp: {
      Enclosure t = rational_power(x, n->sigma, prec + 8).scaled(n->eps);
      Rational lo = exp_neg(t.hi(), prec).lo();
      Rational hi = exp_neg(t.lo(), prec).hi();
      return Enclosure(std::move(lo), std::move(hi)).scaled(n->c);
    }
    case Kind::Scale:
      return eval_node(n->child.get(), x, prec, step) * n->factor;
    case Kind::Lift:
      return eval_node(n->child.get(), x.pow(n->deg), prec, step) * x.pow(1 - n->deg);
    case Kind::TransformJ: {
      Enclosure inner = rational_power(x, Rational(Int(1), Int(n->deg)), prec + 8);
      Enclosure outer = rational_power(x, Rational(Int(n->deg - 1), Int(n->deg)), prec + 8);
      return eval_node(n->child.get(), inner, prec, step) * outer;
    }
    case Kind::Disturb: {
      Enclosure base = eval_node(n->child.get(), x, prec, step);
      if (step) return base.scaled(Rational(1) + n->sched.at(*step));
      // no step index: hull over every step, sound for for-all-n checks
      return base * Enclosure(Rational(1), Rational(1) + n->sched.max_value());
    }
  }
  throw std::logic_error("eval_node: unreachable");
}

}  // namespace

Enclosure ApproxFunction::eval(const Enclosure& x, long prec, std::optional<long> step) const {
  if (x.lo().sign() <= 0) throw std::domain_error("ApproxFunction::eval: requires x > 0");
  return eval_node(root_.get(), x, std::max(prec, 16L), step);
}

Enclosure ApproxFunction::eval(const Rational& x, long prec, std::optional<long> step) const {
  return eval(Enclosure(x), prec, step);
}

bool ApproxFunction::is_power() const { return root_->kind == Kind::Power; }

std::optional<Rational> ApproxFunction::power_coef() const {
  if (!is_power()) return std::nullopt;
  return root_->c;
}

std::optional<Rational> ApproxFunction::power_exponent() const {
  if (!is_power()) return std::nullopt;
  return root_->nu;
}

void ApproxFunction::declare(PropertyId id) {
  if (std::find(declared_.begin(), declared_.end(), id) == declared_.end())
    declared_.push_back(std::move(id));
}

// ---- symbolic property derivation ----

namespace {

Tri tri_of(bool b) { return b ? Tri::True : Tri::False; }

// Whether the tree decays faster than every power (exp core, any wrappers).
bool superpolynomial(const Node* n) {
  switch (n->kind) {
    case Kind::Exp: return true;
    case Kind::Power: return false;
    default: return superpolynomial(n->child.get());
  }
}

// Exponent of the leading power behaviour when only the coefficient is
// uncertain (Scale / Disturb around a closed-form power).
std::optional<Rational> loose_power_exponent(const Node* n) {
  switch (n->kind) {
    case Kind::Power: return n->nu;
    case Kind::Scale:
    case Kind::Disturb: return loose_power_exponent(n->child.get());
    default: return std::nullopt;
  }
}

// True/False when the symbolic form decides the condition exactly;
// Unknown sends the caller to declarations or grid evidence.
Tri derive(const Node* n, const PropertyId& id) {
  using K = PropertyId::Kind;
  if (n->kind == Kind::Power) {
    const Rational& c = n->c;
    const Rational& nu = n->nu;
    switch (id.kind) {
      case K::A1: return tri_of(nu > Rational(1));
      case K::A2:
        if (id.param.sign() <= 0) return Tri::False;
        return tri_of(nu > Rational(1) || (nu == Rational(1) && c < id.param));
      case K::A3:
        return tri_of(nu > Rational(1) || (nu == Rational(1) && c < Rational(Int(1), Int(2))));
      case K::Aprime:
        return tri_of(nu > id.param || (nu == id.param && c <= Rational(1)));
      case K::B1: return tri_of(nu.sign() >= 0);
      case K::B2: return tri_of(nu >= Rational(-1));
      case K::A0: return tri_of(nu > Rational(2 * id.degree - 1));
      case K::B0: return tri_of(nu >= Rational(id.degree - 1));
    }
  }
  if (n->kind == Kind::Exp) {
    switch (id.kind) {
      case K::A1:
      case K::A3:
      case K::Aprime:
      case K::B1:
      case K::B2:
      case K::A0: return Tri::True;
      case K::A2: return tri_of(id.param.sign() > 0);
      case K::B0: return id.degree <= 1 ? Tri::True : Tri::Unknown;
    }
  }
  if (n->kind == Kind::Scale || n->kind == Kind::Disturb) {
    const Node* ch = n->child.get();
    switch (id.kind) {
      // invariant under bounded positive multipliers
      case K::A1:
      case K::A0: return derive(ch, id);
      // same-step / same-factor comparisons cancel the multiplier
      case K::B1:
      case K::B2:
      case K::B0: return derive(ch, id);
      // coefficient-sensitive: only exponent-strict cases transfer
      case K::A2:
      case K::A3:
      case K::Aprime: {
        if (n->kind == Kind::Disturb && n->sched.kind == DeltaSchedule::Kind::Const &&
            ch->kind == Kind::Power) {
          Node folded = *ch;
          folded.c = ch->c * (Rational(1) + n->sched.value);
          return derive(&folded, id);
        }
        auto nu = loose_power_exponent(n);
        if (!nu) return superpolynomial(n) ? Tri::True : Tri::Unknown;
        Rational bar = id.kind == K::Aprime ? id.param : Rational(1);
        if (*nu > bar) return id.kind == K::A2 && id.param.sign() <= 0 ? Tri::False : Tri::True;
        if (*nu < bar) return Tri::False;
        return Tri::Unknown;
      }
    }
  }
  if (n->kind == Kind::Lift || n->kind == Kind::TransformJ) {
    if (superpolynomial(n)) {
      switch (id.kind) {
        case K::A1:
        case K::A3:
        case K::Aprime:
        case K::A0: return Tri::True;
        case K::A2: return tri_of(id.param.sign() > 0);
        default: break;
      }
    }
    if (n->kind == Kind::Lift && (id.kind == K::B1 || id.kind == K::B2))
      return derive(n->child.get(), id);  // transfers through x^k and x^{1-k}
    return Tri::Unknown;
  }
  return Tri::Unknown;
}

}  // namespace

bool ApproxFunction::has_property(const PropertyId& id) const {
  if (is_true(derive(root_.get(), id))) return true;
  return std::find(declared_.begin(), declared_.end(), id) != declared_.end();
}

// ---- finite-range property checks ----

namespace {

// sign of A*X^e1 - B*Y^e2 for positive rationals, exact: raise both sides to
// the common exponent denominator
int cmp_scaled_powers(const Rational& A, const Rational& X, const Rational& e1,
                      const Rational& B, const Rational& Y, const Rational& e2) {
  Int Q = lcm(e1.den(), e2.den());
  long q = exponent_as_long(Q, "cmp");
  long a = exponent_as_long(e1.num() * (Q / e1.den()), "cmp");
  long b = exponent_as_long(e2.num() * (Q / e2.den()), "cmp");
  Rational lhs = A.pow(q) * X.pow(a);
  Rational rhs = B.pow(q) * Y.pow(b);
  return lhs.cmp(rhs);
}

const long kPrecLadder[] = {64, 256, 1024, 4096};

}  // namespace

PropertyReport ApproxFunction::check_property(const PropertyId& id, const Rational& x_lo,
                                              const Rational& x_hi,
                                              const Rational& step) const {
  if (x_lo.sign() <= 0 || step.sign() <= 0 || x_hi < x_lo)
    throw std::invalid_argument("check_property: need 0 < x_lo <= x_hi and step > 0");
  PropertyReport rep;
  rep.id = id;

  std::vector<Rational> grid;
  for (Rational x = x_lo; x <= x_hi; x += step) {
    grid.push_back(x);
    if (grid.size() > 200000) throw std::invalid_argument("check_property: grid too large");
  }

  // Psi(x) OP A*x^{-rho}, strict or not; Unknown only for non-power families
  // at equality, reported as Inconclusive rather than guessed.
  auto cmp_against_power = [&](const Rational& x, const Rational& A, const Rational& rho,
                               bool strict) -> Tri {
    if (is_power()) {
      int s = cmp_scaled_powers(root_->c, x, -root_->nu, A, x, -rho);
      return tri_of(strict ? s < 0 : s <= 0);
    }
    for (long prec : kPrecLadder) {
      Enclosure v = eval(x, prec);
      Enclosure bound = rational_power(Enclosure(x), -rho, prec).scaled(A);
      Tri t = strict ? lt(v, bound) : le(v, bound);
      if (!is_unknown(t)) return t;
    }
    return Tri::Unknown;
  };
  // Psi(x)*mulx <= Psi(y)*muly
  auto cmp_values = [&](const Rational& x, const Rational& mulx, const Rational& y,
                        const Rational& muly) -> Tri {
    if (is_power()) {
      int s = cmp_scaled_powers(root_->c * mulx, x, -root_->nu, root_->c * muly, y, -root_->nu);
      return tri_of(s <= 0);
    }
    for (long prec : kPrecLadder) {
      Tri t = le(eval(x, prec).scaled(mulx), eval(y, prec).scaled(muly));
      if (!is_unknown(t)) return t;
    }
    return Tri::Unknown;
  };

  auto fail_at = [&](const Rational& x, std::optional<Rational> aux = {}) {
    rep.verdict = PropertyReport::Verdict::Fail;
    rep.method = "grid";
    rep.counterexample_x = x;
    rep.counterexample_aux = std::move(aux);
  };
  auto inconclusive_at = [&](const Rational& x) {
    rep.verdict = PropertyReport::Verdict::Inconclusive;
    rep.method = "grid";
    rep.counterexample_x = x;
    rep.note = "comparison undecided at the precision cap";
  };

  using K = PropertyId::Kind;
  if (id.is_asymptotic()) {
    Tri d = derive(root_.get(), id);
    if (!is_unknown(d)) {
      rep.verdict = is_true(d) ? PropertyReport::Verdict::Pass : PropertyReport::Verdict::Fail;
      rep.method = "exact-family";
      rep.note = "decided from the symbolic form";
      return rep;
    }
    if (std::find(declared_.begin(), declared_.end(), id) == declared_.end()) {
      rep.verdict = PropertyReport::Verdict::Undeclared;
      rep.method = "declared+consistent";
      rep.note = "asymptotic condition neither declared nor derivable";
      return rep;
    }
    // consistency: x^e * Psi(x) should shrink along the grid
    Rational e = id.kind == K::A1 ? Rational(1) : Rational(2 * id.degree - 1);
    for (size_t i = 1; i < grid.size(); ++i) {
      Tri t = Tri::Unknown;
      for (long prec : kPrecLadder) {
        Enclosure gi = eval(grid[i], prec) * rational_power(Enclosure(grid[i]), e, prec);
        Enclosure gp = eval(grid[i - 1], prec) * rational_power(Enclosure(grid[i - 1]), e, prec);
        t = le(gi, gp);
        if (!is_unknown(t)) break;
      }
      if (is_false(t)) {
        fail_at(grid[i]);
        rep.note = "declared asymptotic contradicted on the grid";
        return rep;
      }
      if (is_unknown(t)) {
        inconclusive_at(grid[i]);
        return rep;
      }
    }
    rep.verdict = PropertyReport::Verdict::DeclaredConsistent;
    rep.method = "declared+consistent";
    rep.note = "declared; finite range is consistent, not a proof";
    return rep;
  }

  rep.method = "grid";
  switch (id.kind) {
    case K::A2:
    case K::A3: {
      Rational d = id.kind == K::A3 ? Rational(Int(1), Int(2)) : id.param;
      if (d.sign() <= 0) {
        rep.verdict = PropertyReport::Verdict::Fail;
        rep.note = "parameter d must be positive";
        return rep;
      }
      for (const Rational& x : grid) {
        Tri t = cmp_against_power(x, d, Rational(1), /*strict=*/true);
        if (is_false(t)) return fail_at(x), rep;
        if (is_unknown(t)) return inconclusive_at(x), rep;
      }
      break;
    }
    case K::Aprime: {
      if (!certified_above_golden(id.param)) {
        rep.verdict = PropertyReport::Verdict::Fail;
        rep.note = "theta = " + id.param.str() + " is not certified above the golden ratio";
        return rep;
      }
      for (const Rational& x : grid) {
        Tri t = cmp_against_power(x, Rational(1), id.param, /*strict=*/false);
        if (is_false(t)) return fail_at(x), rep;
        if (is_unknown(t)) return inconclusive_at(x), rep;
      }
      rep.note = "theta certified above the golden ratio; bound checked non-strictly";
      break;
    }
    case K::B1: {
      for (size_t i = 1; i < grid.size(); ++i) {
        Tri t = cmp_values(grid[i], Rational(1), grid[i - 1], Rational(1));
        if (is_false(t)) return fail_at(grid[i]), rep;
        if (is_unknown(t)) return inconclusive_at(grid[i]), rep;
      }
      break;
    }
    case K::B2: {
      for (const Rational& x : grid) {
        for (Rational l(2); x * l <= x_hi; l += Rational(1)) {
          Tri t = cmp_values(x * l, Rational(1), x, l);
          if (is_false(t)) return fail_at(x, l), rep;
          if (is_unknown(t)) return inconclusive_at(x), rep;
        }
      }
      break;
    }
    case K::B0: {
      for (size_t i = 0; i < grid.size(); ++i) {
        for (size_t j = i + 1; j < grid.size(); ++j) {
          // Psi(x)/Psi(y) >= (y/x)^{k-1}  <=>  Psi(y)*(y/x)^{k-1} <= Psi(x)
          Rational ratio = (grid[j] / grid[i]).pow(id.degree - 1);
          Tri t = cmp_values(grid[j], ratio, grid[i], Rational(1));
          if (is_false(t)) return fail_at(grid[i], grid[j]), rep;
          if (is_unknown(t)) return inconclusive_at(grid[i]), rep;
        }
      }
      break;
    }
    default:
      throw std::logic_error("check_property: unreachable");
  }
  rep.verdict = PropertyReport::Verdict::Pass;
  return rep;
}

// ---- parsing and printing ----

namespace {

long parse_long_token(std::string_view s, const char* what) {
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw ParseError(std::string(what) + ": bad integer \"" + std::string(s) + "\"");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  size_t at = 0;
  while (true) {
    size_t next = s.find(sep, at);
    if (next == std::string_view::npos) {
      out.push_back(s.substr(at));
      return out;
    }
    out.push_back(s.substr(at, next - at));
    at = next + 1;
  }
}

}  // namespace

ApproxFunction ApproxFunction::parse(std::string_view spec) {
  while (!spec.empty() && std::isspace(static_cast<unsigned char>(spec.front())))
    spec.remove_prefix(1);
  while (!spec.empty() && std::isspace(static_cast<unsigned char>(spec.back())))
    spec.remove_suffix(1);
  auto colon = spec.find(':');
  if (colon == std::string_view::npos || colon == 0)
    throw ParseError("bad function spec \"" + std::string(spec) + "\"");
  std::string_view head = spec.substr(0, colon);
  std::string_view rest = spec.substr(colon + 1);

  if (head == "pow") {
    auto parts = split(rest, ',');
    if (parts.size() != 2) throw ParseError("pow takes c,nu");
    return power(Rational::parse(parts[0]), Rational::parse(parts[1]));
  }
  if (head == "exp") {
    auto parts = split(rest, ',');
    if (parts.size() != 3) throw ParseError("exp takes c,eps,sigma");
    return exp_family(Rational::parse(parts[0]), Rational::parse(parts[1]),
                      Rational::parse(parts[2]));
  }
  auto head_arg_then_inner = [&](const char* what) {
    auto comma = rest.find(',');
    if (comma == std::string_view::npos)
      throw ParseError(std::string(what) + " needs an argument and an inner spec");
    return std::pair(rest.substr(0, comma), rest.substr(comma + 1));
  };
  if (head == "scale") {
    auto [arg, inner] = head_arg_then_inner("scale");
    return parse(inner).scaled(Rational::parse(arg));
  }
  if (head == "psij") {
    auto [arg, inner] = head_arg_then_inner("psij");
    return parse(inner).transformed_j(parse_long_token(arg, "psij"));
  }
  if (head == "disturb") {
    // schedule tokens may contain ':' (const:r) but never ','
    auto [arg, inner] = head_arg_then_inner("disturb");
    return parse(inner).disturbed(DeltaSchedule::parse(arg));
  }
  constexpr std::string_view kLift = "lift";
  if (head.substr(0, kLift.size()) == kLift && head.size() > kLift.size()) {
    long k = parse_long_token(head.substr(kLift.size()), "lift");
    return parse(rest).power_lifted(k);
  }
  throw ParseError("unknown function family \"" + std::string(head) + "\"");
}

namespace {

std::string spec_of(const Node* n) {
  switch (n->kind) {
    case Kind::Power: return "pow:" + n->c.str() + "," + n->nu.str();
    case Kind::Exp: return "exp:" + n->c.str() + "," + n->eps.str() + "," + n->sigma.str();
    case Kind::Scale: return "scale:" + n->factor_label + "," + spec_of(n->child.get());
    case Kind::Lift: return "lift" + std::to_string(n->deg) + ":" + spec_of(n->child.get());
    case Kind::TransformJ:
      return "psij:" + std::to_string(n->deg) + "," + spec_of(n->child.get());
    case Kind::Disturb: return "disturb:" + n->sched.str() + "," + spec_of(n->child.get());
  }
  return "?";
}

std::string formula_of(const Node* n) {
  switch (n->kind) {
    case Kind::Power: {
      std::string s = n->c == Rational(1) ? "" : n->c.str() + "*";
      return s + "x^(-" + n->nu.str() + ")";
    }
    case Kind::Exp: {
      std::string s = n->c == Rational(1) ? "" : n->c.str() + "*";
      return s + "exp(-" + n->eps.str() + "*x^" + n->sigma.str() + ")";
    }
    case Kind::Scale:
      return "(" + n->factor_label + ") * [" + formula_of(n->child.get()) + "]";
    case Kind::Lift:
      return "[" + formula_of(n->child.get()) + "](x^" + std::to_string(n->deg) + ") * x^(1-" +
             std::to_string(n->deg) + ")";
    case Kind::TransformJ:
      return "[" + formula_of(n->child.get()) + "](x^(1/" + std::to_string(n->deg) +
             ")) * x^((" + std::to_string(n->deg) + "-1)/" + std::to_string(n->deg) + ")";
    case Kind::Disturb:
      return "(1+delta_n[" + n->sched.str() + "]) * [" + formula_of(n->child.get()) + "]";
  }
  return "?";
}

}  // namespace

std::string ApproxFunction::spec_string() const { return spec_of(root_.get()); }

std::string ApproxFunction::describe() const { return formula_of(root_.get()); }

}  // namespace simprox
