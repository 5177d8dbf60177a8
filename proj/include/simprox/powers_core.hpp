#pragma once

#include <optional>
#include <vector>

#include "simprox/enclosure.hpp"
#include "simprox/integer.hpp"
#include "simprox/rational.hpp"
#include "simprox/real_number.hpp"

namespace simprox {

// max_{1<=j<=k} j*zeta^{j-1}: the largest slope of t -> t^j on the power
// vector, the factor relating |q*zeta - p| to the simultaneous error.
// Exact for point enclosures. Requires zeta > 0, k >= 1.
Enclosure max_power_derivative(const Enclosure& zeta, long k);
Rational max_power_derivative(const Rational& zeta, long k);

// Simultaneous approximation error of the power vector at a single z:
// err = max_{1<=j<=k} dist(zeta^j * z, Z).
struct SimError {
  Int z;
  std::vector<Int> nearest;  // nearest[j-1] closest to zeta^j z (when decided)
  Enclosure err{Rational(0)};
  long argmax_j = 0;  // smallest j certified to attain the max; 0 if none
  bool decided = false;
};

enum class OnUndecided { Throw, Flag };

// Shared per-depth power table for scanning many z against one zeta.
// Holds a reference to zeta; keep the number alive while the kernel is used.
class SweepKernel {
 public:
  SweepKernel(const RealNumber& zeta, long k);

  // Distance data for one z, refining through the depth ladder until every
  // nearest integer is unambiguous and the argmax is certified, or the
  // final depth is reached.  Throw policy raises InconclusiveComparison
  // instead of returning a flagged entry.
  SimError at(const Int& z, OnUndecided policy = OnUndecided::Throw) const;

  const std::vector<long>& ladder() const { return ladder_; }
  long k() const { return k_; }

 private:
  const std::vector<Enclosure>& powers(long depth) const;

  const RealNumber& zeta_;
  long k_;
  std::vector<long> ladder_;
  mutable std::vector<std::pair<long, std::vector<Enclosure>>> cache_;
};

SimError sim_error(const RealNumber& zeta, long k, const Int& z,
                   OnUndecided policy = OnUndecided::Throw);
SimError sim_error(const Rational& zeta, long k, const Int& z);

// (z, y1, ..., yk) = M * (z0^k, z0^{k-1} y0, ..., y0^k) with gcd(z0, y0) = 1,
// M > 0, z0 > 0.  Good-approximation tuples all have this shape.
struct PrimitiveDecomposition {
  Int M;
  Int z0;
  Int y0;
};

// nullopt when the tuple is not of the primitive-multiple form
std::optional<PrimitiveDecomposition> primitive_decompose(
    long k, const std::vector<Int>& tuple);
std::vector<Int> reconstruct(long k, const PrimitiveDecomposition& pd);

// For zeta = p/q +- d*q^{-k} with d in (0,1/2) and p/q, zeta in (0,1/2),
// the simultaneous error at z = q^k collapses onto the j = 1 term:
//   max_{1<=j<=k} dist(q^k zeta^j, Z) = q^{k-1} |q zeta - p| = d,
// with nearest integers p^j q^{k-j}.  check_error_identity builds zeta,
// checks the hypotheses (including the geometric-sum bound
// |zeta^{j-1} + ... + (p/q)^{j-1}| < 1 for 2 <= j <= k), then verifies the
// equality exactly.
struct ErrorIdentityReport {
  Rational zeta;
  Rational max_err;
  long argmax_j = 0;
  std::vector<Int> nearest;    // actual nearest integers to q^k zeta^j
  std::vector<Int> predicted;  // p^j q^{k-j}
  std::vector<Rational> errs;  // per-j exact distances
  bool holds = false;
};

// throws HypothesisUnmet when a hypothesis fails (d or p/q or zeta outside
// (0,1/2), or a geometric sum reaching 1)
ErrorIdentityReport check_error_identity(const Int& p, const Int& q,
                                         const Rational& d, long k,
                                         bool minus = false);

// Exhaustive oracle: SimError for every z = 1..zmax, in z order.  Undecided
// entries are flagged, never dropped.  jobs > 1 splits the range into blocks
// scanned in parallel and merged back in z order.
std::vector<SimError> error_sweep(const RealNumber& zeta, long k, long zmax,
                                  int jobs = 1, long block = 1 << 16);

// Largest q <= Q with max_j dist(zeta^j q, Z) <= q^{-1/k}; the pigeonhole
// bound guarantees existence for large Q, and q = 1 always qualifies.
struct DirichletWitness {
  Int q;
  std::vector<Int> nearest;
  Enclosure err{Rational(0)};
  long undecided_skipped = 0;  // larger q whose comparison stayed unresolved
};

std::optional<DirichletWitness> dirichlet_witness(const RealNumber& zeta,
                                                  long k, long Q);

}  // namespace simprox
