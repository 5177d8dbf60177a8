#include "simprox/lattice_checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "simprox/approx_function.hpp"
#include "simprox/enclosure.hpp"
#include "simprox/errors.hpp"

namespace simprox {
namespace {

constexpr long kPrecLadder[] = {32, 128, 512, 2048};

struct Membership {
  Tri in = Tri::Unknown;
  Int n{0};
};

// Does some integer N put |zeta*M - N| strictly under the half window?
Membership test_m(const RealNumber& zeta, const Int& m, const Rational& half_window) {
  for (long prec : kPrecLadder) {
    long depth = std::min(prec, zeta.max_depth());
    Enclosure v = zeta.enclosure(depth).scaled(Rational(m));
    Tri cmp = lt(v.dist_to_int(), Enclosure(half_window));
    if (is_false(cmp)) return {Tri::False, Int(0)};
    if (is_true(cmp)) {
      // the half window is at most 1/2, so the nearest integer is unique
      // and the midpoint finds it; a straddling enclosure gets refined
      Int n = v.mid().round();
      if (is_true(lt(v.shifted(-Rational(n)).abs(), Enclosure(half_window))))
        return {Tri::True, std::move(n)};
    }
    if (depth >= zeta.max_depth()) break;
  }
  return {Tri::Unknown, Int(0)};
}

// Rigorous two-sided log2 of a positive rational.  The mantissa truncation,
// the log rounding, and the exponent addition stay far below the slack.
struct Log2Range {
  double lo, hi;
};

Log2Range log2_range(const Rational& r) {
  long ne = 0, de = 0;
  double nm = mpz_get_d_2exp(&ne, r.num().get_mpz_t());
  double dm = mpz_get_d_2exp(&de, r.den().get_mpz_t());
  double v = std::log2(nm) - std::log2(dm) + static_cast<double>(ne - de);
  return {v - 1e-9, v + 1e-9};
}

}  // namespace

TwoSolutionWitness lindep_solutions(const RealNumber& zeta, const Rational& Q) {
  if (Q < Rational(1)) throw PreconditionViolation("lindep_solutions: Q must be >= 1");
  TwoSolutionWitness w;
  w.q_bound = Q;
  Rational half_window = (Rational(2) * Q).reciprocal();
  Int qf = Q.floor();
  for (Int m = -qf; m <= qf; ++m) {
    Membership t = test_m(zeta, m, half_window);
    if (is_unknown(t.in))
      ++w.inconclusive;
    else if (is_true(t.in))
      w.solutions.push_back({m, std::move(t.n)});
  }
  // dependence on a common nonzero pair is transitive in the plane, so one
  // anchor settles every pair; the first breaker forms the counterexample
  const HalfWindowSolution* anchor = nullptr;
  for (const HalfWindowSolution& s : w.solutions) {
    if (s.m == 0 && s.n == 0) continue;
    if (!anchor) {
      anchor = &s;
    } else if (anchor->m * s.n != anchor->n * s.m) {
      w.pairwise_dependent = false;
      w.counterexample = std::make_pair(*anchor, s);
      break;
    }
  }
  return w;
}

VerificationReport dieprop_check(const DigitNumber& d, const Rational& eps, long X) {
  if (!d.has_blocks())
    throw PreconditionViolation("dieprop_check: needs a block construction");
  const std::vector<DigitNumber::Block>& blocks = d.blocks();
  if (blocks.size() < 2)
    throw PreconditionViolation(
        "dieprop_check: needs at least two blocks for a decay rate");
  if (eps.sign() <= 0) throw std::invalid_argument("dieprop_check: eps must be positive");
  if (X < 1) throw std::invalid_argument("dieprop_check: X must be >= 1");

  Rational omega(Int(blocks[1].first), Int(blocks[0].second));
  for (size_t n = 2; n < blocks.size(); ++n)
    omega = std::min(omega, Rational(Int(blocks[n].first), Int(blocks[n - 1].second)));
  Rational q = omega / (omega - Rational(1)) + eps;  // error cutoff x^{-q}

  VerificationReport rep;
  rep.subject = d.describe();
  rep.psi = ApproxFunction::power(Rational(1), q).spec_string();
  rep.k = 1;
  rep.base = d.base();
  std::ostringstream note;
  note << "omega_hat = " << omega.str() << " over steps 1.." << blocks.size() - 1
       << "; eps = " << eps.str();

  // Scale pairs (b^{f_n}, y_n) within range.  The digit tail beyond f_n is
  // strictly under one unit there, so the partial sum gives the exact floor.
  std::vector<std::pair<Int, Int>> scales;
  for (const DigitNumber::Block& bl : blocks) {
    Rational p = Rational(Int(d.base())).pow(bl.second);
    if (p > Rational(Int(X))) break;
    scales.emplace_back(p.num(), (d.partial_sum(bl.second) * p).num());
  }

  rep.sweep.run = true;
  rep.sweep.z_hi = Int(X);
  if (scales.empty()) {
    // below the first scale the structure claim is empty
    rep.vacuous = true;
    rep.sweep.z_lo = Int(X) + 1;
    note << "; the first block scale lies past the range";
    rep.note = note.str();
    return rep;
  }
  rep.sweep.z_lo = scales.front().first;
  rep.set_threshold("first_scale", scales.front().first);

  std::vector<std::pair<long, Enclosure>> zs;  // zeta enclosures per rung
  zs.reserve(4);
  auto zeta_at = [&](long rung) -> const Enclosure& {
    for (const auto& [r, enc] : zs)
      if (r == rung) return enc;
    long depth = std::min(kPrecLadder[rung], d.max_depth());
    zs.emplace_back(rung, d.enclosure(depth));
    return zs.back().second;
  };

  const double qd = q.approx();
  long x_lo = static_cast<long>(mpz_get_si(rep.sweep.z_lo.get_mpz_t()));
  bool witness_reported = false;
  for (long x = x_lo; x <= X; ++x) {
    // cutoff screen in log scale: good means err <= x^{-q}
    Log2Range cut{-qd * std::log2(static_cast<double>(x)) - 1e-9,
                  -qd * std::log2(static_cast<double>(x)) + 1e-9};
    int good = -1;  // 1 good, 0 not, -1 unsettled
    Enclosure err{Rational(0)};
    Int y(0);
    for (long rung = 0; rung < 4 && good < 0; ++rung) {
      Enclosure v = zeta_at(rung).scaled(Rational(Int(x)));
      err = v.dist_to_int();
      if (err.lo().sign() > 0 && log2_range(err.lo()).lo > cut.hi) {
        good = 0;
      } else if (err.hi().is_zero() || log2_range(err.hi()).hi < cut.lo) {
        y = v.mid().round();
        good = 1;
      }
    }
    if (good < 0) {
      ++rep.sweep.inconclusive;
      continue;
    }
    if (good == 0) continue;

    long block_index = 0;
    Int xi(x);
    for (size_t i = 0; i < scales.size(); ++i) {
      if (xi % scales[i].first != 0) continue;
      if (y == (xi / scales[i].first) * scales[i].second) {
        block_index = static_cast<long>(i) + 1;
        break;
      }
    }
    SpecialCheck chk;
    chk.z = xi;
    chk.n = block_index;
    chk.lower = Tri::True;  // the dip below the cutoff is certified
    chk.upper = block_index > 0 ? Tri::True : Tri::False;
    chk.err = err;
    rep.special_checks.push_back(chk);
    if (block_index == 0) {
      rep.sweep.violations.push_back(xi);
      if (!witness_reported) {
        note << "; witness x = " << x << ", y = " << y
             << " is no multiple of a scale pair";
        witness_reported = true;
      }
    }
  }
  rep.precisions.push_back(std::min(kPrecLadder[3], d.max_depth()));
  note << "; " << rep.special_checks.size() << " good approximations";
  if (rep.sweep.violations.empty() && rep.sweep.inconclusive == 0)
    note << ", all multiples of the block scales";
  rep.note = note.str();
  return rep;
}

Verdict primitivity_check(const DigitNumber& d, long n) {
  if (!d.has_blocks())
    throw PreconditionViolation("primitivity_check: needs a block construction");
  const std::vector<DigitNumber::Block>& blocks = d.blocks();
  if (n < 1 || n > static_cast<long>(blocks.size()))
    throw PreconditionViolation("primitivity_check: block index out of range");
  long f = blocks[static_cast<size_t>(n) - 1].second;
  // digit tail beyond f stays strictly under one unit of that scale
  Int y = (d.partial_sum(f) * Rational(Int(d.base())).pow(f)).num();
  return y % Int(d.base()) == Int(d.amplitude()) ? Verdict::Pass : Verdict::Fail;
}

}  // namespace simprox
