// Seeded random instances for property batteries.
#pragma once

#include <cstdint>
#include <random>

#include "prokit/module.hpp"
#include "prokit/ring.hpp"

namespace prokit {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  /// Uniform in [lo, hi].
  long range(long lo, long hi) { return lo + static_cast<long>(eng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool coin() { return (eng_() & 1U) != 0; }
  std::uint64_t next() { return eng_(); }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

/// Z/q[s,t]/(s^a, t^b).
RingPtr monomial_algebra(const Int& q, unsigned a, unsigned b);
/// Z/q[t]/(t^2 - b t - a).
RingPtr quadratic_extension(const Int& q, const Int& a, const Int& b);

/// A random finite commutative ring of order at most max_order (>= 2).
RingPtr random_ring(Rng& rng, long max_order = 64);
Vec random_element(Rng& rng, const FiniteRing& r);
/// Rejection-samples a non-unit; zero if none turns up.
Vec random_nonunit(Rng& rng, const FiniteRing& r);

/// A random finitely generated module over r of order at most max_order:
/// cyclic quotients, ideals, sums, presentations of R^2 and Matlis duals.
FgModule random_module(Rng& rng, const RingPtr& r, long max_order = 256);

}  // namespace prokit
