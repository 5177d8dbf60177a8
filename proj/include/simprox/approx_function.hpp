#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simprox/enclosure.hpp"

namespace simprox {

/// Step-indexed disturbance schedule delta_n for n >= 1, nonnegative and
/// non-increasing with limit 0 (Const keeps a fixed value; it models the
/// paper-style constant disturbance used in worked examples).
struct DeltaSchedule {
  enum class Kind { Zero, InverseShifted, Const };
  Kind kind = Kind::Zero;
  long shift = 1;  // InverseShifted: delta_n = 1/(n+shift), shift >= 0
  Rational value;  // Const

  static DeltaSchedule zero() { return {}; }
  static DeltaSchedule inverse_shifted(long shift);
  static DeltaSchedule constant(Rational r);
  /// "zero" | "harmonic" (1/(n+1)) | "invn" (1/n) | "const:r".
  static DeltaSchedule parse(std::string_view token);

  Rational at(long n) const;
  /// sup over n >= 1; with at(n) this brackets every step.
  Rational max_value() const;
  bool is_zero() const { return kind == Kind::Zero; }
  std::string str() const;
};

/// One of the named growth/regularity conditions on an approximation
/// function, with its parameter where the condition takes one:
///   A1          Psi(x) = o(1/x)
///   A2:d        Psi(x) < d/x from some point on
///   A3          A2 with d = 1/2
///   Aprime:t    Psi(x) <= x^{-t}, paired with t > golden ratio at use sites
///   B1          non-increasing
///   B2          Psi(l*x) <= l*Psi(x) for integers l >= 1
///   A0:k        Psi(x) = o(x^{-2k+1})
///   B0:k        Psi(x)/Psi(y) >= (y/x)^{k-1} for x <= y
struct PropertyId {
  enum class Kind { A1, A2, A3, Aprime, B1, B2, A0, B0 };
  Kind kind = Kind::A1;
  Rational param;   // d for A2, theta for Aprime
  long degree = 0;  // k for A0 / B0

  static PropertyId a1() { return {Kind::A1, {}, 0}; }
  static PropertyId a2(Rational d) { return {Kind::A2, std::move(d), 0}; }
  static PropertyId a3() { return {Kind::A3, {}, 0}; }
  static PropertyId a_prime(Rational theta) { return {Kind::Aprime, std::move(theta), 0}; }
  static PropertyId b1() { return {Kind::B1, {}, 0}; }
  static PropertyId b2() { return {Kind::B2, {}, 0}; }
  static PropertyId a0(long k) { return {Kind::A0, {}, k}; }
  static PropertyId b0(long k) { return {Kind::B0, {}, k}; }
  static PropertyId parse(std::string_view s);

  bool is_asymptotic() const { return kind == Kind::A1 || kind == Kind::A0; }
  std::string str() const;
  friend bool operator==(const PropertyId& a, const PropertyId& b) {
    return a.kind == b.kind && a.param == b.param && a.degree == b.degree;
  }
};

struct PropertyReport {
  enum class Verdict {
    Pass,                // inequality certified on the whole grid
    Fail,                // counterexample found (or parameter invalid)
    DeclaredConsistent,  // asymptotic claim: declared + grid-consistent only
    Undeclared,          // asymptotic claim with no declaration to lean on
    Inconclusive         // a comparison stayed undecided at the precision cap
  };
  PropertyId id;
  Verdict verdict = Verdict::Inconclusive;
  std::string method;  // "exact-power" | "grid" | "declared+consistent"
  std::optional<Rational> counterexample_x;
  std::optional<Rational> counterexample_aux;  // l for B2, y for B0
  std::string note;
  bool passed() const {
    return verdict == Verdict::Pass || verdict == Verdict::DeclaredConsistent;
  }
};
std::string to_string(PropertyReport::Verdict v);

struct ApproxNode;

/// Symbolic approximation function Psi. Immutable expression tree over the
/// families c*x^{-nu} and c*exp(-eps*x^sigma) plus the scale / power-lift /
/// index-transform / disturbance wrappers. Pure power chains simplify to a
/// single closed-form power on construction, which is what makes most
/// evaluations exact and most property checks decidable symbolically.
class ApproxFunction {
 public:
  /// c * x^{-nu}; c > 0, nu any rational (stored exactly).
  static ApproxFunction power(Rational c, Rational nu);
  /// c * exp(-eps * x^sigma); c, eps, sigma > 0.
  static ApproxFunction exp_family(Rational c, Rational eps, Rational sigma);
  /// Grammar: "pow:c,nu" | "exp:c,eps,sigma" | "scale:f,RAW" | "liftK:RAW" |
  /// "psij:J,RAW" | "disturb:SCHED,RAW" (RAW = nested spec).
  static ApproxFunction parse(std::string_view spec);

  ApproxFunction scaled(const Rational& f) const;
  /// Scaling by an enclosed (possibly irrational) positive constant; label
  /// names the constant in spec strings.
  ApproxFunction scaled(const Enclosure& f, const std::string& label) const;
  /// Psi(x^k) * x^{1-k}, k >= 2.
  ApproxFunction power_lifted(long k) const;
  /// Psi(x^{1/j}) * x^{(j-1)/j}; j = 1 is the identity.
  ApproxFunction transformed_j(long j) const;
  /// (1 + delta_n) * Psi, step-indexed.
  ApproxFunction disturbed(DeltaSchedule sched) const;

  /// Enclosure of Psi(x), positive; exact point where the family admits it.
  /// step feeds the disturbance index; without it a disturbed function
  /// evaluates to the hull over all steps (sound for for-all-step checks).
  Enclosure eval(const Rational& x, long prec, std::optional<long> step = {}) const;
  Enclosure eval(const Enclosure& x, long prec, std::optional<long> step = {}) const;

  bool is_power() const;
  std::optional<Rational> power_coef() const;
  std::optional<Rational> power_exponent() const;  // nu of c*x^{-nu}

  /// Caller-asserted asymptotic classes (merged with what the symbolic form
  /// already derives).
  void declare(PropertyId id);
  /// Declared by the caller, or derivable exactly from the symbolic form.
  bool has_property(const PropertyId& id) const;
  const std::vector<PropertyId>& declared() const { return declared_; }

  /// Finite-range verification of the condition over the additive grid
  /// x_lo, x_lo+step, ..., <= x_hi. Asymptotic conditions (A1, A0) are
  /// decided symbolically for powers and otherwise only consistency-checked
  /// against declarations; they are never reported as proven from a grid.
  PropertyReport check_property(const PropertyId& id, const Rational& x_lo,
                                const Rational& x_hi, const Rational& step) const;

  std::string spec_string() const;
  /// Human-readable formula plus the wrapper chain it was built through.
  std::string describe() const;

 private:
  std::shared_ptr<const ApproxNode> root_;
  std::vector<PropertyId> declared_;
  explicit ApproxFunction(std::shared_ptr<const ApproxNode> root);
  ApproxFunction with_root(std::shared_ptr<const ApproxNode> root) const;
};

/// x^e for rational e, enclosed at roughly 2^-prec; exact where possible.
/// Requires x > 0 (every point of an interval argument).
Enclosure rational_power(const Enclosure& x, const Rational& expo, long prec);

/// Enclosure of exp(-t) for rational t >= 0, width about 2^-prec.
/// Throws EvalOverflow when t is too large for any positive lower bound to
/// be representable at sane precision.
Enclosure exp_neg(const Rational& t, long prec);

/// Certifies theta > (1+sqrt5)/2 by refining the golden ratio enclosure.
bool certified_above_golden(const Rational& theta);

}  // namespace simprox
