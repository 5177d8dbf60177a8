#include "simprox/verify_report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "simprox/errors.hpp"

namespace simprox {

namespace {

constexpr long kPrecLadder[] = {32, 128, 512, 2048};
constexpr long kRungs = 4;

// zeta^j enclosures per precision rung, filled on first use
struct PowerCache {
  const RealNumber* zeta;
  long k;
  std::vector<long> depths;
  std::vector<std::vector<Enclosure>> powers;

  PowerCache(const RealNumber& z, long k_) : zeta(&z), k(k_), powers(kRungs) {
    for (long p : kPrecLadder) depths.push_back(std::min(p, z.max_depth()));
  }
  const std::vector<Enclosure>& at(long rung) {
    std::vector<Enclosure>& v = powers[static_cast<size_t>(rung)];
    if (v.empty()) {
      Enclosure base = zeta->enclosure(depths[static_cast<size_t>(rung)]);
      v.reserve(static_cast<size_t>(k));
      for (long j = 1; j <= k; ++j) v.push_back(base.pow(j));
    }
    return v;
  }
};

Enclosure sim_err(const std::vector<Enclosure>& zeta_powers, const Rational& z) {
  Enclosure err = zeta_powers[0].scaled(z).dist_to_int();
  for (size_t j = 1; j < zeta_powers.size(); ++j)
    err = max_enclosure(err, zeta_powers[j].scaled(z).dist_to_int());
  return err;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::Warning: return "warning";
  }
  return "unknown";
}

void VerificationReport::set_threshold(const std::string& key, const Int& v) {
  for (auto& [k2, old] : thresholds)
    if (k2 == key) {
      old = v;
      return;
    }
  thresholds.emplace_back(key, v);
}

const Int* VerificationReport::threshold(const std::string& key) const {
  for (const auto& [k2, v] : thresholds)
    if (k2 == key) return &v;
  return nullptr;
}

Verdict VerificationReport::verdict() const {
  bool unknown = sweep.inconclusive > 0;
  bool fail = !sweep.violations.empty();
  for (const auto& chk : special_checks) {
    if (!chk.counted) continue;
    if (is_false(chk.lower) || is_false(chk.upper)) fail = true;
    if (is_unknown(chk.lower) || is_unknown(chk.upper)) unknown = true;
  }
  if (fail) return Verdict::Fail;
  if (unknown) return Verdict::Inconclusive;
  return Verdict::Pass;
}

VerificationReport window_check(const RealNumber& zeta, const ApproxFunction& psi,
                                long k, const Rational& c, WindowStyle style,
                                const std::vector<std::pair<long, Int>>& specials,
                                long sweep_max, long z_floor, int jobs) {
  if (k < 1) throw std::invalid_argument("window_check: k must be >= 1");
  if (!(c.sign() > 0 && c < Rational(1)))
    throw PreconditionViolation("window_check: c must lie in (0, 1)");
  if (z_floor < 1) throw std::invalid_argument("window_check: z_floor must be >= 1");
  for (const auto& [n, z] : specials)
    if (z < 1) throw std::invalid_argument("window_check: special points must be >= 1");

  VerificationReport rep;
  rep.subject = zeta.describe();
  rep.psi = psi.spec_string();
  rep.k = k;
  std::ostringstream note;

  // Special points sit far out, where only the deepest enclosure can see;
  // the ladder is left for the psi side.
  if (!specials.empty()) {
    Enclosure zc = zeta.enclosure(zeta.max_depth());
    std::vector<Enclosure> zp;
    zp.reserve(static_cast<size_t>(k));
    for (long j = 1; j <= k; ++j) zp.push_back(zc.pow(j));
    for (const auto& [n, z] : specials) {
      SpecialCheck chk;
      chk.n = n;
      chk.z = z;
      chk.err = sim_err(zp, Rational(z));
      for (long prec : kPrecLadder) {
        Enclosure bound = psi.eval(Rational(z), prec);
        chk.upper = lt(chk.err, bound);
        Enclosure floor_bound = bound.scaled(c);
        chk.lower = style == WindowStyle::StrictBoth ? lt(floor_bound, chk.err)
                                                     : le(floor_bound, chk.err);
        if (!is_unknown(chk.upper) && !is_unknown(chk.lower)) {
          rep.precisions.push_back(prec);
          break;
        }
      }
      rep.special_checks.push_back(chk);
    }

    // least index from which every later check passes; earlier misses stay
    // in the report but do not decide the verdict
    long n_hat = 0;
    for (long i = static_cast<long>(rep.special_checks.size()) - 1; i >= 0; --i) {
      if (!rep.special_checks[static_cast<size_t>(i)].passed()) break;
      n_hat = rep.special_checks[static_cast<size_t>(i)].n;
    }
    if (n_hat != 0) {
      rep.set_threshold("n_hat", Int(n_hat));
      long excluded = 0;
      for (SpecialCheck& chk : rep.special_checks)
        if (chk.n < n_hat && !chk.passed()) {
          chk.counted = false;
          ++excluded;
        }
      if (excluded > 0)
        note << "excluded " << excluded << " window miss(es) below n_hat=" << n_hat
             << "; ";
    }
  }

  if (sweep_max >= z_floor) {
    rep.sweep.run = true;
    rep.sweep.c = c;
    rep.sweep.z_lo = Int(z_floor);
    rep.sweep.z_hi = Int(sweep_max);

    // per-z outcome of the lower window err(z) > c*psi(z): only misses and
    // unsettled points are recorded
    enum { kViolation = 1, kUnsettled = 2 };
    auto scan = [&](long lo, long hi, std::vector<std::pair<long, int>>& out) {
      PowerCache cache(zeta, k);
      for (long z = lo; z <= hi; ++z) {
        int outcome = kUnsettled;
        for (long rung = 0; rung < kRungs; ++rung) {
          Enclosure err = sim_err(cache.at(rung), Rational(Int(z)));
          Enclosure floor_bound = psi.eval(Rational(Int(z)), kPrecLadder[rung]).scaled(c);
          Tri cmp = gt(err, floor_bound);
          if (is_true(cmp)) {
            outcome = 0;
            break;
          }
          if (is_false(cmp)) {
            outcome = kViolation;
            break;
          }
        }
        if (outcome != 0) out.emplace_back(z, outcome);
      }
    };

    long span = sweep_max - z_floor + 1;
    long workers = std::max(1L, std::min<long>(jobs, span));
    std::vector<std::vector<std::pair<long, int>>> found(static_cast<size_t>(workers));
    if (workers == 1) {
      scan(z_floor, sweep_max, found[0]);
    } else {
      std::vector<std::thread> pool;
      long chunk = (span + workers - 1) / workers;
      for (long w = 0; w < workers; ++w) {
        long lo = z_floor + w * chunk;
        long hi = std::min(sweep_max, lo + chunk - 1);
        if (lo > hi) break;
        pool.emplace_back([&, lo, hi, w] { scan(lo, hi, found[static_cast<size_t>(w)]); });
      }
      for (std::thread& t : pool) t.join();
    }

    std::vector<std::pair<long, int>> unclean;
    for (const auto& part : found) unclean.insert(unclean.end(), part.begin(), part.end());

    if (unclean.empty()) {
      rep.set_threshold("z_floor", Int(z_floor));
    } else if (unclean.back().first < sweep_max) {
      // the tail is clean: report the least floor that works and keep the
      // earlier misses out of the verdict
      long clean_from = unclean.back().first + 1;
      rep.set_threshold("z_floor", Int(clean_from));
      rep.sweep.z_lo = Int(clean_from);
      long misses = 0, unsettled = 0;
      for (const auto& [z, kind] : unclean) (kind == kViolation ? misses : unsettled)++;
      note << "sweep clean from z=" << clean_from << " on; below it " << misses
           << " miss(es) and " << unsettled << " unsettled point(s) were excluded; ";
    } else {
      for (const auto& [z, kind] : unclean) {
        if (kind == kViolation)
          rep.sweep.violations.push_back(Int(z));
        else
          ++rep.sweep.inconclusive;
      }
    }
  } else if (specials.empty()) {
    rep.vacuous = true;
    note << "vacuous: no special points and the sweep range is empty; ";
  }

  std::string n = note.str();
  if (n.size() >= 2) n.erase(n.size() - 2);  // drop the trailing separator
  rep.note = n;
  return rep;
}

Verdict hurwitz_guard(const ApproxFunction& psi, const Rational& x_lo,
                      const Rational& x_hi, const Rational& step) {
  if (step.sign() <= 0) throw std::invalid_argument("hurwitz_guard: step must be positive");
  if (x_lo > x_hi) throw std::invalid_argument("hurwitz_guard: empty range");
  // every irrational has infinitely many q with |q zeta - p| <= 1/(sqrt(5) q),
  // so a lower window with psi(x) x certainly >= 1/sqrt(5) across the whole
  // range cannot hold for c near 1; warn, never block
  for (Rational x = x_lo; x <= x_hi; x += step) {
    bool certain_above = false;
    for (long prec : kPrecLadder) {
      Enclosure lhs = psi.eval(x, prec).scaled(x) * sqrt_enclosure(Int(5), prec);
      Tri cmp = ge(lhs, Enclosure(Rational(1)));
      if (is_true(cmp)) {
        certain_above = true;
        break;
      }
      if (is_false(cmp)) return Verdict::Pass;
    }
    if (!certain_above) return Verdict::Pass;  // not certain: stay quiet
  }
  return Verdict::Warning;
}

}  // namespace simprox
