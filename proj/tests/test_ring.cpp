#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "prokit/random.hpp"
#include "prokit/ring.hpp"

using namespace prokit;

namespace {

Vec v(std::initializer_list<long> xs) {
  Vec out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("constructors") {
  auto z6 = zmod(6);
  CHECK(z6->additive().orders() == v({6}));
  CHECK(z6->one() == v({1}));
  CHECK_THROWS_AS(zmod(1), InvalidSpec);

  auto t3 = truncated_two_power(3);
  CHECK(t3->additive().orders() == v({2, 4, 8}));
  CHECK(t3->order() == 64);
  CHECK(t3->named().at("x") == v({0, 2, 2}));
  CHECK(t3->named().at("one") == v({1, 1, 1}));

  auto p = product({zmod(2), zmod(3)});
  CHECK(p->order() == 6);
  CHECK(p->one() == v({1, 1}));
  CHECK(tuple_element(*p, {v({1}), v({2})}) == v({1, 2}));

  auto tp = truncated_polynomial(2, 3);
  Vec x = tp->named().at("x");
  CHECK(tp->pow(x, 2) == v({0, 0, 1}));
  CHECK(tp->is_zero(tp->pow(x, 3)));

  CHECK_THROWS_AS(quotient(zmod(6), Ideal(zmod(6), {v({5})})), InvalidSpec);
  auto q = quotient(zmod(12), Ideal(zmod(12), {v({8})}));
  CHECK(q->order() == 4);
}

TEST_CASE("axiom diagnostics") {
  CHECK(check_ring_axioms(zmod(12)->data()).empty());
  CHECK(check_ring_axioms(product({zmod(4), truncated_polynomial(3, 2)})->data()).empty());

  RingData bad{{4}, {IntMatrix{{3}}}, {1}};
  auto failures = check_ring_axioms(bad);
  bool unit_failure = false;
  for (const auto& f : failures) unit_failure |= f.law == "unit";
  CHECK(unit_failure);
  CHECK_THROWS_AS(FiniteRing{bad}, AxiomViolation);

  // Non-commutative structure on (Z/2)^2: e0 e1 = e1, e1 e0 = 0.
  RingData nc{{2, 2}, {IntMatrix{{1, 0}, {0, 1}}, IntMatrix{{0, 0}, {0, 0}}}, {1, 0}};
  nc.mult[0] = IntMatrix{{1, 0}, {0, 1}};
  nc.mult[1] = IntMatrix{{0, 0}, {0, 0}};
  bool comm = false;
  for (const auto& f : check_ring_axioms(nc)) comm |= f.law == "commutativity";
  CHECK(comm);

  // Multiplication not compatible with additive orders: Z/2 x Z/3 with e0*e1 = e1.
  RingData wd{{2, 3}, {IntMatrix{{1, 0}, {0, 1}}, IntMatrix{{0, 0}, {1, 1}}}, {1, 0}};
  bool wdf = false;
  for (const auto& f : check_ring_axioms(wd)) wdf |= f.law == "well-definedness";
  CHECK(wdf);
}

TEST_CASE("fitting split examples") {
  auto z12 = zmod(12);
  auto s = fitting_split(*z12, v({2}));
  CHECK(s.c == 2);
  CHECK(s.e == v({4}));
  auto u = fitting_split(*z12, v({5}));
  CHECK(u.c == 0);
  CHECK(u.e == v({1}));
  auto z8 = zmod(8);
  auto n = fitting_split(*z8, v({2}));
  CHECK(n.c == 3);
  CHECK(n.e == v({0}));
}

TEST_CASE("localization examples") {
  auto z12 = zmod(12);
  auto l = localize(z12, v({2}));
  CHECK(l.ring->order() == 3);
  CHECK(l.idempotent == v({4}));
  CHECK(l.ring->is_unit(l.project(v({2}))));
  auto same = localize(z12, v({7}));
  CHECK(same.ring->order() == 12);
  CHECK(localize(zmod(8), v({2})).ring->is_zero_ring());
}

TEST_CASE("covering examples") {
  auto z6 = zmod(6);
  auto c = is_covering(*z6, {v({3}), v({4})});
  REQUIRE(c.covers);
  Vec sum = z6->add(z6->mul(c.coefficients[0], v({3})), z6->mul(c.coefficients[1], v({4})));
  CHECK(sum == v({1}));
  CHECK(is_covering(*z6, {v({1})}).covers);
  CHECK_FALSE(is_covering(*z6, {v({2})}).covers);
}

TEST_CASE("ideal stabilization examples") {
  auto z12 = zmod(12);
  auto s = ideal_stabilization(Ideal(z12, {v({2})}));
  CHECK(s.c == 2);
  CHECK(s.e == v({4}));
  auto w = ideal_stabilization(Ideal::whole(z12));
  CHECK(w.c == 0);
  CHECK(w.e == v({1}));
  auto n = ideal_stabilization(Ideal(zmod(8), {v({2})}));
  CHECK(n.c == 3);
  CHECK(n.e == v({0}));
}

TEST_CASE("primitive idempotent examples") {
  std::vector<Vec> z6{v({3}), v({4})};
  CHECK(primitive_idempotents(zmod(6)) == z6);
  CHECK(primitive_idempotents(zmod(8)) == std::vector<Vec>{v({1})});
  std::vector<Vec> z12{v({4}), v({9})};
  CHECK(primitive_idempotents(zmod(12)) == z12);
  // F_2 x F_4 has one basis element that does not split under Fitting alone.
  auto f4 = quadratic_extension(2, 1, 1);
  CHECK(oracle::is_local_by_enumeration(*f4));
  CHECK(primitive_idempotents(product({zmod(2), f4})).size() == 2);
  CHECK(primitive_idempotents(product({f4, f4})).size() == 2);
}

TEST_CASE("random rings against enumeration") {
  Rng rng(20240601);
  for (int trial = 0; trial < 120; ++trial) {
    RingPtr r = random_ring(rng, 64);
    REQUIRE(check_ring_axioms(r->data()).empty());
    Vec x = random_element(rng, *r);

    auto fs = fitting_split(*r, x);
    REQUIRE(fs.c == oracle::fitting_index(*r, x));
    REQUIRE(oracle::ring_mul(*r, fs.e, fs.e) == fs.e);
    REQUIRE(oracle::principal_set(*r, fs.e) == oracle::principal_set(*r, oracle::ring_pow(*r, x, fs.c)));

    // Localizing twice at f is the same as once.
    auto l1 = localize(r, x);
    auto l2 = localize(l1.ring, l1.project(x));
    REQUIRE(l2.ring->order() == l1.ring->order());
    if (!l1.ring->is_zero_ring()) REQUIRE(oracle::is_unit(*l1.ring, l1.project(x)));

    auto prims = primitive_idempotents(r);
    Vec sum = r->zero();
    Int prod = 1;
    for (std::size_t a = 0; a < prims.size(); ++a) {
      sum = r->add(sum, prims[a]);
      for (std::size_t b = a + 1; b < prims.size(); ++b) REQUIRE(r->is_zero(r->mul(prims[a], prims[b])));
      auto factor = localize(r, prims[a]).ring;
      REQUIRE(oracle::is_local_by_enumeration(*factor));
      REQUIRE(is_local_ring(factor));
      prod *= factor->order();
    }
    REQUIRE(sum == r->one());
    REQUIRE(prod == r->order());
    // Count of local factors equals the number of primitive idempotents found by enumeration.
    auto all_idem = oracle::idempotents(*r);
    REQUIRE(all_idem.size() == (std::size_t(1) << prims.size()));

    Ideal i(r, {x});
    auto st = ideal_stabilization(i);
    Ideal ic = i.power(st.c);
    REQUIRE(ic * i == ic);
    for (const auto& g : ic.generators()) REQUIRE(r->mul(st.e, g) == g);
    if (st.c > 0) REQUIRE_FALSE(i.power(st.c - 1) == ic);

    Vec y = random_element(rng, *r);
    auto cov = is_covering(*r, {x, y});
    bool oracle_cover = false;
    for (const auto& a : oracle::elements(r->additive())) {
      for (const auto& b : oracle::elements(r->additive()))
        if (r->add(oracle::ring_mul(*r, a, x), oracle::ring_mul(*r, b, y)) == r->one()) {
          oracle_cover = true;
          break;
        }
      if (oracle_cover) break;
    }
    REQUIRE(cov.covers == oracle_cover);
    if (cov.covers) {
      // Diagonal map R -> R_x + R_y is injective.
      auto lx = localize(r, x), ly = localize(r, y);
      for (const auto& a : oracle::elements(r->additive())) {
        if (r->is_zero(a)) continue;
        bool zero_both = lx.ring->is_zero(lx.project(a)) && ly.ring->is_zero(ly.project(a));
        REQUIRE_FALSE(zero_both);
      }
    }
  }
}
