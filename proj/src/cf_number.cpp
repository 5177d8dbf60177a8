#include "simprox/cf_number.hpp"

#include <stdexcept>
#include <utility>

namespace simprox {

CFNumber::CFNumber(Int b0, std::vector<Int> quotients) : b0_(std::move(b0)) {
  p_ = {Int(1), b0_};
  q_ = {Int(0), Int(1)};
  quotients_.reserve(quotients.size());
  for (Int& b : quotients) append(std::move(b));
}

void CFNumber::push_convergent(const Int& b) {
  const auto n = p_.size();
  p_.push_back(b * p_[n - 1] + p_[n - 2]);
  q_.push_back(b * q_[n - 1] + q_[n - 2]);
}

void CFNumber::append(Int quotient) {
  if (quotient < 1) throw std::invalid_argument("CFNumber: partial quotient must be >= 1");
  push_convergent(quotient);
  quotients_.push_back(std::move(quotient));
}

CFNumber CFNumber::from_rational(const Rational& x) {
  Int b0 = x.floor();
  CFNumber cf(b0);
  Rational rem = x - Rational(b0);
  while (!rem.is_zero()) {
    Rational inv = rem.reciprocal();
    Int b = inv.floor();
    cf.append(b);
    rem = inv - Rational(b);
  }
  return cf;
}

const Int& CFNumber::p(long n) const {
  if (n < -1 || n > length()) throw std::out_of_range("CFNumber::p: index");
  return p_[static_cast<size_t>(n + 1)];
}

const Int& CFNumber::q(long n) const {
  if (n < -1 || n > length()) throw std::out_of_range("CFNumber::q: index");
  return q_[static_cast<size_t>(n + 1)];
}

Enclosure CFNumber::cylinder(long n) const {
  if (n < 0 || n > length()) throw std::out_of_range("CFNumber::cylinder: index");
  Rational a = convergent(n);
  Rational b(p(n) + p(n - 1), q(n) + q(n - 1));
  return a <= b ? Enclosure(std::move(a), std::move(b)) : Enclosure(std::move(b), std::move(a));
}

Enclosure CFNumber::enclosure(long depth) const {
  if (depth < 0) depth = 0;
  if (depth >= length()) return cylinder(length());
  // Every real extending the prefix lies between consecutive convergents.
  Rational a = convergent(depth);
  Rational b = convergent(depth + 1);
  return a <= b ? Enclosure(std::move(a), std::move(b)) : Enclosure(std::move(b), std::move(a));
}

std::string CFNumber::describe() const {
  std::string s = "[" + to_string(b0_);
  if (!quotients_.empty()) {
    s += ";";
    const size_t shown = quotients_.size() <= 8 ? quotients_.size() : 6;
    for (size_t i = 0; i < shown; ++i) s += (i ? ", " : " ") + to_string(quotients_[i]);
    if (shown < quotients_.size())
      s += ", ... (" + std::to_string(quotients_.size()) + " terms)";
  }
  s += "]";
  return s;
}

}  // namespace simprox
