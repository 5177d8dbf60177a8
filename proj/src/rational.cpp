#include "simprox/rational.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <stdexcept>

namespace simprox {

Rational::Rational(Int num, Int den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw std::domain_error("Rational: zero denominator");
  reduce();
}

void Rational::reduce() {
  if (mpz_sgn(den_.get_mpz_t()) < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  Int g = gcd(num_, den_);
  if (g != 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::parse(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
  auto check_digits = [](std::string_view t) {
    if (t.empty()) throw std::invalid_argument("Rational::parse: missing digits");
    size_t i = 0;
    if (t[0] == '-') i = 1;
    if (i == t.size()) throw std::invalid_argument("Rational::parse: missing digits");
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i])))
        throw std::invalid_argument("Rational::parse: expected integer, got \"" +
                                    std::string(t) + "\" (decimals are not accepted)");
  };
  auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    check_digits(s);
    return Rational(Int(std::string(s)), Int(1));
  }
  auto ns = s.substr(0, slash);
  auto ds = s.substr(slash + 1);
  check_digits(ns);
  check_digits(ds);
  Int d{std::string(ds)};
  if (d == 0) throw std::invalid_argument("Rational::parse: zero denominator");
  return Rational(Int(std::string(ns)), std::move(d));
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  reduce();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  num_ = num_ * o.den_ - o.num_ * den_;
  den_ *= o.den_;
  reduce();
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  reduce();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  reduce();
  return *this;
}

int Rational::cmp(const Rational& o) const {
  Int l = num_ * o.den_;
  Int r = o.num_ * den_;
  return l == r ? 0 : (l < r ? -1 : 1);
}

Rational Rational::abs() const {
  Rational r = *this;
  if (mpz_sgn(r.num_.get_mpz_t()) < 0) r.num_ = -r.num_;
  return r;
}

Int Rational::floor() const { return fdiv(num_, den_); }

Int Rational::ceil() const { return cdiv(num_, den_); }

Int Rational::round() const {
  // floor(x + 1/2) computed exactly: floor((2 num + den) / (2 den))
  return fdiv(2 * num_ + den_, 2 * den_);
}

Rational Rational::dist_to_int() const {
  Int r = fmod_pos(num_, den_);  // fractional part r/den in [0,1)
  Int other = den_ - r;
  if (r > other) r = std::move(other);
  return Rational(r, den_);
}

Rational Rational::pow(long e) const {
  if (e == 0) return Rational(1);
  bool inv = e < 0;
  unsigned long ue = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  if (inv && num_ == 0) throw std::domain_error("Rational::pow: zero to negative power");
  Rational r;
  r.num_ = pow_int(num_, ue);
  r.den_ = pow_int(den_, ue);
  if (inv) {
    std::swap(r.num_, r.den_);
    if (mpz_sgn(r.den_.get_mpz_t()) < 0) {
      r.num_ = -r.num_;
      r.den_ = -r.den_;
    }
  }
  return r;  // powers of canonical form stay canonical
}

Rational Rational::reciprocal() const {
  if (num_ == 0) throw std::domain_error("Rational::reciprocal: zero");
  Rational r;
  r.num_ = den_;
  r.den_ = num_;
  if (mpz_sgn(r.den_.get_mpz_t()) < 0) {
    r.num_ = -r.num_;
    r.den_ = -r.den_;
  }
  return r;
}

std::string Rational::str() const {
  if (den_ == 1) return num_.get_str();
  return num_.get_str() + "/" + den_.get_str();
}

double Rational::approx() const { return mpq_class(num_, den_).get_d(); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Int strictly_above(const Rational& r) { return r.floor() + 1; }

long min_exponent_above(const Int& b, const Rational& t) {
  if (b < 2) throw std::domain_error("min_exponent_above: base must be >= 2");
  if (t.sign() <= 0) throw std::domain_error("min_exponent_above: t must be positive");
  // Initial guess from bit lengths, then exact adjustment. For t = n/d,
  // b^a > t  <=>  d * b^a > n.
  const Int& n = t.num();
  const Int& d = t.den();
  long bits_n = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2));
  long bits_d = static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2));
  long bits_b = static_cast<long>(mpz_sizeinbase(b.get_mpz_t(), 2));
  long guess = (bits_n - bits_d) / bits_b;
  auto gt = [&](long e) {
    // d * b^e > n, with negative e folded to the other side
    if (e >= 0) return d * pow_int(b, static_cast<unsigned long>(e)) > n;
    return d > n * pow_int(b, static_cast<unsigned long>(-e));
  };
  // Bracket geometrically around the bit-length guess, then bisect.
  long hi = guess;
  long step = 8;
  while (!gt(hi)) {
    hi += step;
    step *= 2;
  }
  long lo = std::min(guess, hi - 1);
  step = 8;
  while (gt(lo)) {
    lo -= step;
    step *= 2;
  }
  while (hi - lo > 1) {
    long mid = lo + (hi - lo) / 2;
    (gt(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace simprox
