#include "prokit/random.hpp"

#include <algorithm>

namespace prokit {

RingPtr monomial_algebra(const Int& q, unsigned a, unsigned b) {
  if (q < 2 || a < 1 || b < 1) throw InvalidSpec("monomial_algebra needs q >= 2, a, b >= 1");
  const std::size_t r = std::size_t(a) * b;
  auto idx = [b](unsigned i, unsigned j) { return std::size_t(i) * b + j; };
  RingData d;
  d.orders.assign(r, q);
  d.unit.assign(r, 0);
  d.unit[0] = 1;
  for (unsigned i = 0; i < a; ++i)
    for (unsigned j = 0; j < b; ++j) {
      IntMatrix m(r, r);
      for (unsigned k = 0; i + k < a; ++k)
        for (unsigned l = 0; j + l < b; ++l) m(idx(i + k, j + l), idx(k, l)) = 1;
      d.mult.push_back(std::move(m));
    }
  auto ring = std::make_shared<FiniteRing>(std::move(d), "monomial_algebra(" + q.get_str() + "," +
                                                             std::to_string(a) + "," + std::to_string(b) + ")");
  if (a >= 2) ring->set_named("s", ring->basis(idx(1, 0)));
  if (b >= 2) ring->set_named("t", ring->basis(idx(0, 1)));
  return ring;
}

RingPtr quadratic_extension(const Int& q, const Int& a, const Int& b) {
  if (q < 2) throw InvalidSpec("quadratic_extension needs q >= 2");
  RingData d;
  d.orders = {q, q};
  d.unit = {1, 0};
  d.mult.push_back(IntMatrix::identity(2));
  IntMatrix t(2, 2);
  t(1, 0) = 1;
  t(0, 1) = a;
  t(1, 1) = b;
  d.mult.push_back(std::move(t));
  auto ring = std::make_shared<FiniteRing>(
      std::move(d), "quadratic_extension(" + q.get_str() + "," + a.get_str() + "," + b.get_str() + ")");
  ring->set_named("t", ring->basis(1));
  return ring;
}

Vec random_element(Rng& rng, const FiniteRing& r) {
  Vec v;
  for (const auto& d : r.additive().orders()) v.push_back(Int(rng.range(0, d.get_si() - 1)));
  return v;
}

Vec random_nonunit(Rng& rng, const FiniteRing& r) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    Vec a = random_element(rng, r);
    if (!r.is_unit(a)) return a;
  }
  return r.zero();
}

RingPtr random_ring(Rng& rng, long max_order) {
  if (max_order < 2) throw InvalidSpec("random_ring needs max_order >= 2");
  if (max_order < 4) return zmod(Int(rng.range(2, max_order)));
  switch (rng.range(0, 5)) {
    case 0:
      return zmod(Int(rng.range(2, max_order)));
    case 1: {
      long q = rng.range(2, std::min(8L, max_order));
      unsigned n = 1;
      long p = q;
      while (p * q <= max_order) {
        p *= q;
        ++n;
      }
      if (n < 2) return zmod(Int(q));
      return truncated_polynomial(Int(q), static_cast<unsigned>(rng.range(2, n)));
    }
    case 2: {
      RingPtr a = random_ring(rng, max_order / 2);
      long rest = max_order / a->order().get_si();
      if (rest < 2) return a;
      RingPtr b = random_ring(rng, rest);
      return product({a, b});
    }
    case 3: {
      long q = 2;
      while ((q + 1) * (q + 1) <= max_order && q < 8) ++q;
      q = rng.range(2, q);
      return quadratic_extension(Int(q), Int(rng.range(0, q - 1)), Int(rng.range(0, q - 1)));
    }
    case 4: {
      if (max_order >= 64 && rng.coin()) return monomial_algebra(2, 2, 3);
      if (max_order >= 16) return monomial_algebra(2, 2, 2);
      return zmod(Int(rng.range(2, max_order)));
    }
    default: {
      RingPtr base = random_ring(rng, max_order);
      Vec g = random_element(rng, *base);
      Ideal i(base, {g});
      if (i.is_whole()) return base;
      return quotient(base, i);
    }
  }
}

}  // namespace prokit
