#include "simprox/enclosure.hpp"

#include <ostream>
#include <stdexcept>

namespace simprox {

std::string to_string(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    default: return "unknown";
  }
}

Enclosure::Enclosure(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ > hi_) throw std::invalid_argument("Enclosure: lo > hi");
}

Enclosure Enclosure::operator-() const { return Enclosure(-hi_, -lo_); }

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
  return Enclosure(a.lo_ + b.lo_, a.hi_ + b.hi_);
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) {
  return Enclosure(a.lo_ - b.hi_, a.hi_ - b.lo_);
}

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  const Rational c1 = a.lo_ * b.lo_;
  const Rational c2 = a.lo_ * b.hi_;
  const Rational c3 = a.hi_ * b.lo_;
  const Rational c4 = a.hi_ * b.hi_;
  Rational lo = c1, hi = c1;
  for (const Rational* c : {&c2, &c3, &c4}) {
    if (*c < lo) lo = *c;
    if (*c > hi) hi = *c;
  }
  return Enclosure(std::move(lo), std::move(hi));
}

Enclosure Enclosure::scaled(const Rational& f) const {
  if (f.sign() >= 0) return Enclosure(lo_ * f, hi_ * f);
  return Enclosure(hi_ * f, lo_ * f);
}

Enclosure Enclosure::shifted(const Rational& s) const {
  return Enclosure(lo_ + s, hi_ + s);
}

Enclosure Enclosure::abs() const {
  if (lo_.sign() >= 0) return *this;
  if (hi_.sign() <= 0) return Enclosure(-hi_, -lo_);
  Rational m = -lo_;
  if (hi_ > m) m = hi_;
  return Enclosure(Rational(0), std::move(m));
}

Enclosure Enclosure::pow(long e) const {
  if (e == 0) return Enclosure(Rational(1));
  if (e < 0) return reciprocal().pow(-e);
  if (e % 2 == 1 || lo_.sign() >= 0) {
    // odd powers and powers of non-negative intervals are monotone
    return Enclosure(lo_.pow(e), hi_.pow(e));
  }
  if (hi_.sign() <= 0) return Enclosure(hi_.pow(e), lo_.pow(e));
  // even power of an interval straddling zero
  Rational m = lo_.pow(e);
  Rational h = hi_.pow(e);
  if (h > m) m = std::move(h);
  return Enclosure(Rational(0), std::move(m));
}

Enclosure Enclosure::reciprocal() const {
  if (lo_.sign() <= 0 && hi_.sign() >= 0)
    throw std::domain_error("Enclosure::reciprocal: interval contains zero");
  return Enclosure(hi_.reciprocal(), lo_.reciprocal());
}

Enclosure Enclosure::dist_to_int() const {
  const Rational half(Int(1), Int(2));
  if (width() >= Rational(1)) return Enclosure(Rational(0), half);
  Rational dlo = lo_.dist_to_int();
  Rational dhi = hi_.dist_to_int();
  Rational dmin = dlo < dhi ? dlo : dhi;
  Rational dmax = dlo < dhi ? dhi : dlo;
  // An integer inside the interval pins the minimum to 0; a half-integer
  // inside pins the maximum to 1/2. Width < 1 allows at most one of each.
  Int fl = lo_.floor();
  bool has_int = lo_.is_integer() || Rational(fl + 1) <= hi_;
  // Width < 1 means [lo, hi] fits in [fl, fl+2), so only two half-integer
  // candidates need checking.
  auto inside = [&](const Rational& p) { return lo_ <= p && p <= hi_; };
  bool has_half = inside(Rational(2 * fl + 1, Int(2))) || inside(Rational(2 * fl + 3, Int(2)));
  if (has_int) dmin = Rational(0);
  if (has_half) dmax = half;
  return Enclosure(std::move(dmin), std::move(dmax));
}

std::string Enclosure::str() const {
  if (is_point()) return lo_.str();
  return "[" + lo_.str() + ", " + hi_.str() + "]";
}

std::ostream& operator<<(std::ostream& os, const Enclosure& e) { return os << e.str(); }

Tri lt(const Enclosure& a, const Enclosure& b) {
  if (a.hi() < b.lo()) return Tri::True;
  if (a.lo() >= b.hi()) return Tri::False;
  return Tri::Unknown;
}

Tri le(const Enclosure& a, const Enclosure& b) {
  if (a.hi() <= b.lo()) return Tri::True;
  if (a.lo() > b.hi()) return Tri::False;
  return Tri::Unknown;
}

Enclosure max_enclosure(const Enclosure& a, const Enclosure& b) {
  Rational lo = a.lo() > b.lo() ? a.lo() : b.lo();
  Rational hi = a.hi() > b.hi() ? a.hi() : b.hi();
  return Enclosure(std::move(lo), std::move(hi));
}

}  // namespace simprox
