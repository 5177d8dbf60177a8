#include "simprox/real_number.hpp"

#include <stdexcept>
#include <utility>

namespace simprox {

AlgebraicReal::AlgebraicReal(Rational shift, Rational coef, Int n, unsigned long r)
    : shift_(std::move(shift)), coef_(std::move(coef)), n_(std::move(n)), r_(r) {
  if (r_ == 0) throw std::invalid_argument("AlgebraicReal: root index must be >= 1");
  if (n_ < 0) throw std::invalid_argument("AlgebraicReal: radicand must be >= 0");
}

Enclosure AlgebraicReal::enclosure(long depth) const {
  if (depth < 0) depth = 0;
  if (coef_.is_zero() || n_ == 0) return Enclosure(shift_);
  // floor(n^{1/r} * 2^depth) = floor((n * 2^{r*depth})^{1/r})
  Int scaled_n = n_ << static_cast<unsigned long>(r_ * static_cast<unsigned long>(depth));
  RootResult rr = iroot(scaled_n, r_);
  Int two_d = Int(1) << static_cast<unsigned long>(depth);
  Enclosure root = rr.exact
                       ? Enclosure(Rational(rr.root, two_d))
                       : Enclosure(Rational(rr.root, two_d), Rational(rr.root + 1, two_d));
  return root.scaled(coef_).shifted(shift_);
}

std::string AlgebraicReal::describe() const {
  std::string s = shift_.str() + " + " + coef_.str() + " * " + to_string(n_) + "^(1/" +
                  std::to_string(r_) + ")";
  return s;
}

Enclosure sqrt_enclosure(const Int& n, long prec) {
  return AlgebraicReal(Rational(0), Rational(1), n, 2).enclosure(prec);
}

Enclosure golden_ratio(long prec) {
  const Rational half(Int(1), Int(2));
  return AlgebraicReal(half, half, Int(5), 2).enclosure(prec);
}

}  // namespace simprox
