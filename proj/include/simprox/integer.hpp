#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace simprox {

/// Arbitrary-precision signed integer. All exact arithmetic in the library
/// bottoms out here; nothing is ever rounded through floating point.
using Int = mpz_class;

inline Int int_from(long v) { return Int(v); }

/// base^e for e >= 0.
inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Int pow_int(unsigned long base, unsigned long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

/// Floor division (rounds toward -infinity). b must be nonzero.
inline Int fdiv(const Int& a, const Int& b) {
  if (b == 0) throw std::domain_error("fdiv: division by zero");
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Ceiling division. b must be nonzero.
inline Int cdiv(const Int& a, const Int& b) {
  if (b == 0) throw std::domain_error("cdiv: division by zero");
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Non-negative remainder a mod b for b > 0.
inline Int fmod_pos(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

struct RootResult {
  Int root;    // floor(x^{1/k})
  bool exact;  // root^k == x
};

/// Integer k-th root of x >= 0.
inline RootResult iroot(const Int& x, unsigned long k) {
  if (x < 0) throw std::domain_error("iroot: negative radicand");
  if (k == 0) throw std::domain_error("iroot: zeroth root");
  RootResult r;
  r.exact = mpz_root(r.root.get_mpz_t(), x.get_mpz_t(), k) != 0;
  return r;
}

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline bool fits_ulong(const Int& a) { return a.fits_ulong_p(); }

inline std::string to_string(const Int& a) { return a.get_str(); }

}  // namespace simprox
