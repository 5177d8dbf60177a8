#include "simprox/powers_core.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "simprox/errors.hpp"

namespace simprox {

namespace {

void require_k(long k) {
  if (k < 1) throw std::invalid_argument("power degree k must be >= 1");
}

}  // namespace

Rational max_power_derivative(const Rational& zeta, long k) {
  require_k(k);
  if (!(zeta > Rational(0))) throw std::domain_error("max_power_derivative: zeta must be > 0");
  Rational best = Rational(1);  // j = 1 term
  Rational pw = Rational(1);
  for (long j = 2; j <= k; ++j) {
    pw = pw * zeta;  // zeta^{j-1}
    Rational term = Rational(j) * pw;
    if (term > best) best = term;
  }
  return best;
}

Enclosure max_power_derivative(const Enclosure& zeta, long k) {
  require_k(k);
  if (!zeta.is_positive()) throw std::domain_error("max_power_derivative: zeta must be > 0");
  // each j*zeta^{j-1} is increasing on zeta > 0, so the max is too
  return Enclosure(max_power_derivative(zeta.lo(), k),
                   max_power_derivative(zeta.hi(), k));
}

SweepKernel::SweepKernel(const RealNumber& zeta, long k) : zeta_(zeta), k_(k) {
  require_k(k);
  long cap = zeta.max_depth();
  for (long d : {32L, 128L, 512L, 2048L}) ladder_.push_back(std::min(d, cap));
  ladder_.erase(std::unique(ladder_.begin(), ladder_.end()), ladder_.end());
}

const std::vector<Enclosure>& SweepKernel::powers(long depth) const {
  for (const auto& entry : cache_)
    if (entry.first == depth) return entry.second;
  Enclosure base = zeta_.enclosure(depth);
  std::vector<Enclosure> table;
  table.reserve(static_cast<size_t>(k_));
  for (long j = 1; j <= k_; ++j) table.push_back(base.pow(j));
  cache_.emplace_back(depth, std::move(table));
  return cache_.back().second;
}

SimError SweepKernel::at(const Int& z, OnUndecided policy) const {
  if (z < 1) throw std::invalid_argument("sim_error: z must be >= 1");
  SimError out;
  out.z = z;
  const Rational zr{z};
  const Rational half(Int(1), Int(2));
  for (size_t step = 0; step < ladder_.size(); ++step) {
    const auto& table = powers(ladder_[step]);
    out.nearest.clear();
    std::vector<Enclosure> dists;
    dists.reserve(static_cast<size_t>(k_));
    bool all_near_ok = true;
    for (long j = 1; j <= k_; ++j) {
      Enclosure v = table[static_cast<size_t>(j - 1)].scaled(zr);
      dists.push_back(v.dist_to_int());
      out.nearest.push_back(v.mid().round());
      if (!(dists.back().hi() < half || v.is_point())) all_near_ok = false;
    }
    Enclosure err = dists[0];
    for (long j = 2; j <= k_; ++j) err = max_enclosure(err, dists[static_cast<size_t>(j - 1)]);
    out.err = err;
    out.argmax_j = 0;
    for (long j = 1; j <= k_ && out.argmax_j == 0; ++j) {
      bool top = true;
      for (long i = 1; i <= k_ && top; ++i) {
        if (i == j) continue;
        if (!is_true(ge(dists[static_cast<size_t>(j - 1)], dists[static_cast<size_t>(i - 1)])))
          top = false;
      }
      if (top) out.argmax_j = j;
    }
    if (k_ == 1) out.argmax_j = 1;
    out.decided = all_near_ok && out.argmax_j != 0;
    if (out.decided) return out;
  }
  if (policy == OnUndecided::Throw) {
    std::ostringstream msg;
    msg << "sim_error undecided at depth cap for z = " << to_string(z);
    throw InconclusiveComparison(msg.str());
  }
  return out;  // decided = false; argmax_j may be 0
}

SimError sim_error(const RealNumber& zeta, long k, const Int& z, OnUndecided policy) {
  SweepKernel kernel(zeta, k);
  return kernel.at(z, policy);
}

SimError sim_error(const Rational& zeta, long k, const Int& z) {
  RationalReal r(zeta);
  return sim_error(r, k, z, OnUndecided::Throw);
}

std::vector<Int> reconstruct(long k, const PrimitiveDecomposition& pd) {
  require_k(k);
  std::vector<Int> out;
  out.reserve(static_cast<size_t>(k + 1));
  for (long j = 0; j <= k; ++j)
    out.push_back(pd.M * pow_int(pd.z0, k - j) * pow_int(pd.y0, j));
  return out;
}

std::optional<PrimitiveDecomposition> primitive_decompose(long k,
                                                          const std::vector<Int>& tuple) {
  require_k(k);
  if (tuple.size() != static_cast<size_t>(k + 1))
    throw std::invalid_argument("primitive_decompose: tuple must have k+1 entries");
  const Int& z = tuple[0];
  if (z < 1) throw std::invalid_argument("primitive_decompose: z must be >= 1");

  PrimitiveDecomposition pd;
  if (tuple[1] == 0) {
    pd.M = z;
    pd.z0 = 1;
    pd.y0 = 0;
  } else {
    // y1/z reduces to y0/z0 since the M and the shared power cancel
    Int g = gcd(z, tuple[1]);
    pd.z0 = z / g;
    pd.y0 = tuple[1] / g;
    Int zk = pow_int(pd.z0, k);
    if (z % zk != 0) return std::nullopt;
    pd.M = z / zk;
  }
  if (reconstruct(k, pd) != tuple) return std::nullopt;
  return pd;
}

ErrorIdentityReport check_error_identity(const Int& p, const Int& q, const Rational& d,
                                         long k, bool minus) {
  require_k(k);
  if (q < 1) throw std::invalid_argument("check_error_identity: q must be >= 1");
  const Rational half(Int(1), Int(2));
  if (!(d > Rational(0) && d < half))
    throw HypothesisUnmet("check_error_identity: d must lie in (0, 1/2)");
  Rational pq(p, q);
  if (!(pq > Rational(0) && pq < half))
    throw HypothesisUnmet("check_error_identity: p/q must lie in (0, 1/2)");
  Rational shift = d / Rational(pow_int(q, k));
  Rational zeta = minus ? pq - shift : pq + shift;
  if (!(zeta > Rational(0) && zeta < half))
    throw HypothesisUnmet("check_error_identity: zeta must lie in (0, 1/2)");
  // geometric sums zeta^{j-1} + zeta^{j-2}(p/q) + ... + (p/q)^{j-1} must
  // stay below 1; checked explicitly rather than assumed from q large
  for (long j = 2; j <= k; ++j) {
    Rational sum(0);
    for (long i = 0; i <= j - 1; ++i) sum = sum + zeta.pow(j - 1 - i) * pq.pow(i);
    if (!(sum.abs() < Rational(1))) {
      std::ostringstream msg;
      msg << "check_error_identity: geometric sum at j = " << j << " reaches 1";
      throw HypothesisUnmet(msg.str());
    }
  }

  ErrorIdentityReport rep;
  rep.zeta = zeta;
  Int qk = pow_int(q, k);
  for (long j = 1; j <= k; ++j) {
    Rational v = zeta.pow(j) * Rational(qk);
    Int m = v.round();
    rep.nearest.push_back(m);
    rep.predicted.push_back(pow_int(p, j) * pow_int(q, k - j));
    rep.errs.push_back((v - Rational(m)).abs());
  }
  rep.max_err = rep.errs[0];
  rep.argmax_j = 1;
  for (long j = 2; j <= k; ++j) {
    if (rep.errs[static_cast<size_t>(j - 1)] > rep.max_err) {
      rep.max_err = rep.errs[static_cast<size_t>(j - 1)];
      rep.argmax_j = j;
    }
  }
  rep.holds = rep.max_err == d && rep.argmax_j == 1 && rep.nearest == rep.predicted;
  return rep;
}

std::vector<SimError> error_sweep(const RealNumber& zeta, long k, long zmax, int jobs,
                                  long block) {
  require_k(k);
  if (zmax < 0) throw std::invalid_argument("error_sweep: zmax must be >= 0");
  if (block < 1) throw std::invalid_argument("error_sweep: block must be >= 1");
  std::vector<SimError> out(static_cast<size_t>(zmax));
  if (zmax == 0) return out;

  long nblocks = (zmax + block - 1) / block;
  auto scan = [&](long b0) {
    SweepKernel kernel(zeta, k);
    long lo = b0 * block + 1;
    long hi = std::min(zmax, lo + block - 1);
    for (long z = lo; z <= hi; ++z)
      out[static_cast<size_t>(z - 1)] = kernel.at(Int(z), OnUndecided::Flag);
  };

  if (jobs <= 1 || nblocks == 1) {
    for (long b = 0; b < nblocks; ++b) scan(b);
    return out;
  }
  std::atomic<long> next{0};
  auto worker = [&]() {
    for (;;) {
      long b = next.fetch_add(1);
      if (b >= nblocks) return;
      scan(b);
    }
  };
  std::vector<std::thread> pool;
  int nthreads = static_cast<int>(std::min<long>(jobs, nblocks));
  pool.reserve(static_cast<size_t>(nthreads));
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return out;
}

std::optional<DirichletWitness> dirichlet_witness(const RealNumber& zeta, long k, long Q) {
  require_k(k);
  if (Q < 1) throw std::invalid_argument("dirichlet_witness: Q must be >= 1");
  SweepKernel kernel(zeta, k);
  long skipped = 0;
  for (long q = Q; q >= 1; --q) {
    SimError e = kernel.at(Int(q), OnUndecided::Flag);
    // err <= q^{-1/k}  <=>  err^k <= 1/q   (both sides nonnegative)
    Tri ok = le(e.err.pow(k), Enclosure(Rational(Int(1), Int(q))));
    if (is_true(ok)) {
      DirichletWitness w;
      w.q = q;
      w.nearest = e.nearest;
      w.err = e.err;
      w.undecided_skipped = skipped;
      return w;
    }
    if (is_unknown(ok)) ++skipped;
  }
  return std::nullopt;
}

}  // namespace simprox
