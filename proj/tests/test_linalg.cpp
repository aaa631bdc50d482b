#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "prokit/linalg.hpp"

using namespace prokit;

namespace {

bool is_unimodular(const IntMatrix& u) {
  Int d = determinant(u);
  return d == 1 || d == -1;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

bool is_diagonal_chain(const IntMatrix& d) {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  std::size_t n = std::min(d.rows(), d.cols());
  for (std::size_t t = 0; t < n; ++t) {
    if (d(t, t) < 0) return false;
    if (t + 1 < n) {
      const Int& a = d(t, t);
      const Int& b = d(t + 1, t + 1);
      if (a == 0 && b != 0) return false;
      if (a != 0 && mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) == 0) return false;
    }
  }
  return true;
}

// All elements of a group by odometer enumeration.
std::vector<Vec> enumerate(const FinAbGroup& g) {
  std::vector<Vec> out;
  Vec v = g.zero();
  for (;;) {
    out.push_back(v);
    std::size_t j = 0;
    while (j < v.size()) {
      v[j] += 1;
      if (v[j] < g.orders()[j]) break;
      v[j] = 0;
      ++j;
    }
    if (j == v.size()) break;
  }
  return out;
}

std::set<Vec> span_by_closure(const FinAbGroup& g, const std::vector<Vec>& gens) {
  std::set<Vec> s{g.zero()};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Vec> cur(s.begin(), s.end());
    for (const auto& a : cur)
      for (const auto& b : gens)
        if (s.insert(g.add(a, b)).second) grew = true;
  }
  return s;
}

}  // namespace

TEST_CASE("hnf basics") {
  auto id = hnf(IntMatrix::identity(2));
  CHECK(id.h == IntMatrix::identity(2));
  CHECK(id.u == IntMatrix::identity(2));

  auto z = hnf(IntMatrix(2, 3));
  CHECK(z.h.is_zero());
  CHECK(z.u == IntMatrix::identity(2));
  CHECK(z.rank == 0);

  IntMatrix a{{2, 4}, {6, 8}};
  auto h = hnf(a);
  CHECK(h.u * a == h.h);
  CHECK(is_unimodular(h.u));
  CHECK(h.h == IntMatrix{{2, 0}, {0, 4}});
}

TEST_CASE("snf basics") {
  auto s = snf(IntMatrix::identity(3));
  CHECK(s.d == IntMatrix::identity(3));
  CHECK(s.u == IntMatrix::identity(3));
  CHECK(s.v == IntMatrix::identity(3));

  CHECK(snf(IntMatrix{{6}}).d == IntMatrix{{6}});

  IntMatrix a{{2, 4}, {6, 8}};
  auto t = snf(a);
  CHECK(t.d == IntMatrix{{2, 0}, {0, 4}});
  CHECK(t.u * a * t.v == t.d);
  CHECK(t.u * t.u_inv == IntMatrix::identity(2));
}

TEST_CASE("snf random battery") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    IntMatrix a = random_matrix(rng, r, c, 20);
    auto s = snf(a);
    REQUIRE(s.u * a * s.v == s.d);
    REQUIRE(is_diagonal_chain(s.d));
    REQUIRE(is_unimodular(s.u));
    REQUIRE(is_unimodular(s.v));
    REQUIRE(s.u * s.u_inv == IntMatrix::identity(r));
    if (r == c) {
      Int det = determinant(a);
      Int prod = 1;
      for (std::size_t t = 0; t < r; ++t) prod *= s.d(t, t);
      if (det < 0) det = -det;
      REQUIRE(prod == det);
    }
    auto h = hnf(a);
    REQUIRE(h.u * a == h.h);
    REQUIRE(is_unimodular(h.u));
  }
}

TEST_CASE("cokernel presentations") {
  CHECK(cokernel_presentation(IntMatrix{{2}}, {0}).group.orders() == Vec{2});
  CHECK(cokernel_presentation(IntMatrix{{2, 0}, {0, 4}}, {0, 0}).group.orders() == Vec{2, 4});
  auto ck = cokernel_presentation(IntMatrix{{2, 4}, {6, 8}}, {0, 0});
  CHECK(ck.group.orders() == Vec{2, 4});
  CHECK(cokernel_presentation(IntMatrix{{2, 4}}, {0}).group.orders() == Vec{2});
  CHECK_THROWS_AS(cokernel_presentation(IntMatrix{{0}}, {0}), InfiniteCokernel);
  CHECK_THROWS_AS(cokernel_presentation(IntMatrix(2, 1), {0, 3}), InfiniteCokernel);

  // Presenting a presented group again gives the same invariants.
  FinAbGroup g({6, 4, 10});
  auto p = quotient_group(g, {});
  auto q = quotient_group(p.group, {});
  CHECK(p.group.orders() == Vec{2, 2, 60});
  CHECK(q.group.orders() == p.group.orders());
  CHECK(isomorphic(g, p.group));
}

TEST_CASE("quotient groups") {
  FinAbGroup z8({8});
  auto q = quotient_group(z8, {{4}});
  CHECK(q.group.orders() == Vec{4});
  CHECK(quotient_group(z8, {}).group.orders() == Vec{8});
  CHECK(quotient_group(z8, {{1}}).group.is_trivial());

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    Vec orders;
    std::size_t r = 1 + rng() % 3;
    for (std::size_t j = 0; j < r; ++j) orders.push_back(Int(2 + static_cast<long>(rng() % 6)));
    FinAbGroup g(orders);
    std::vector<Vec> gens;
    std::size_t ng = rng() % 3;
    for (std::size_t k = 0; k < ng; ++k) {
      Vec v;
      for (std::size_t j = 0; j < r; ++j) v.push_back(Int(static_cast<long>(rng() % 12)));
      gens.push_back(g.reduce(v));
    }
    auto span = span_by_closure(g, gens);
    auto ck = quotient_group(g, gens);
    REQUIRE(ck.group.order() * Int(static_cast<long>(span.size())) == g.order());
    auto sub = Subgroup::span(g, gens);
    REQUIRE(sub.order() == Int(static_cast<long>(span.size())));
    for (const auto& x : enumerate(g)) {
      bool in = span.count(x) > 0;
      REQUIRE(sub.contains(x) == in);
      REQUIRE(ck.group.is_zero(ck.project(x)) == in);
    }
    // lift then project is the identity on generators
    for (std::size_t t = 0; t < ck.group.rank(); ++t) {
      Vec e = ck.group.zero();
      e[t] = 1;
      REQUIRE(ck.project(ck.lift_element(e)) == e);
    }
    SubgroupPresentation sp(sub);
    REQUIRE(sp.group().order() == sub.order());
    for (const auto& x : span) REQUIRE(sp.include(sp.coordinates(x)) == x);
  }
}

TEST_CASE("kernels and preimages") {
  FinAbGroup z8({8});
  GroupHom two(z8, z8, IntMatrix{{2}});
  auto k = kernel(two);
  CHECK(k.order() == 2);
  CHECK(k.contains({4}));
  CHECK_FALSE(k.contains({2}));

  GroupHom id(z8, z8, IntMatrix{{1}});
  CHECK(preimage(id, {5}) == std::optional<Vec>(Vec{5}));

  FinAbGroup z4({4});
  GroupHom zero(z4, z4, IntMatrix{{0}});
  CHECK(kernel(zero).is_whole());
  CHECK_FALSE(preimage(two, {3}).has_value());
  CHECK_THROWS_AS(preimage(two, {1, 2}), DimensionMismatch);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 80; ++trial) {
    auto rand_group = [&] {
      Vec o;
      std::size_t r = 1 + rng() % 3;
      for (std::size_t j = 0; j < r; ++j) o.push_back(Int(2 + static_cast<long>(rng() % 5)));
      return FinAbGroup(o);
    };
    FinAbGroup s = rand_group(), t = rand_group();
    // Well-defined random map: column j lands in the d_j-torsion of t.
    IntMatrix m(t.rank(), s.rank());
    for (std::size_t j = 0; j < s.rank(); ++j)
      for (std::size_t i = 0; i < t.rank(); ++i) {
        Int g = gcd(s.orders()[j], t.orders()[i]);
        m(i, j) = (t.orders()[i] / g) * Int(static_cast<long>(rng() % 7));
      }
    GroupHom f(s, t, m);
    REQUIRE(f.is_well_defined());
    auto ker = kernel(f);
    auto img = image(f);
    std::set<Vec> images;
    long kernel_count = 0;
    for (const auto& x : enumerate(s)) {
      Vec y = f.apply(x);
      images.insert(y);
      bool z = t.is_zero(y);
      REQUIRE(ker.contains(x) == z);
      kernel_count += z;
    }
    REQUIRE(ker.order() == kernel_count);
    REQUIRE(img.order() == Int(static_cast<long>(images.size())));
    for (const auto& y : enumerate(t)) {
      auto x = preimage(f, y);
      REQUIRE(x.has_value() == (images.count(y) > 0));
      if (x) REQUIRE(f.apply(*x) == y);
    }
    auto target_sub = Subgroup::span(t, {t.reduce(m.column(0))});
    auto pb = pullback(f, target_sub);
    for (const auto& x : enumerate(s)) REQUIRE(pb.contains(x) == target_sub.contains(f.apply(x)));
    auto meet = ker.intersect(pb);
    for (const auto& x : enumerate(s)) REQUIRE(meet.contains(x) == (ker.contains(x) && pb.contains(x)));
  }
}

TEST_CASE("subgroup canonical form") {
  FinAbGroup g({2, 4});
  auto a = Subgroup::span(g, {{1, 2}});
  auto b = Subgroup::span(g, {{1, 2}, {0, 0}, {1, 2}});
  CHECK(a == b);
  CHECK(Subgroup::span(g, {}) == Subgroup::zero(g));
  CHECK(Subgroup::span(g, {{1, 0}, {0, 1}}) == Subgroup::whole(g));
  CHECK(g.invariant_factors() == Vec{2, 4});
  FinAbGroup h({4, 2});
  CHECK_FALSE(h.is_canonical());
  CHECK(h.invariant_factors() == Vec{2, 4});
}
