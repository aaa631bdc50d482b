#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "module_oracles.hpp"
#include "prokit/analysis.hpp"
#include "prokit/random.hpp"

using namespace prokit;

namespace {

Vec v(std::initializer_list<long> xs) {
  Vec out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

std::vector<unsigned> row(const Profile& p, unsigned i) {
  std::vector<unsigned> out;
  for (unsigned n = 1; n <= p.n_max; ++n) out.push_back(p.at(i, n).m.value_or(0));
  return out;
}

std::vector<unsigned> shifted(unsigned n_max, unsigned c) {
  std::vector<unsigned> out;
  for (unsigned n = 1; n <= n_max; ++n) out.push_back(n + c);
  return out;
}

// x^{(e)} M as a set: additive span of all x_j^e y.
oracle::ElemSet prefix_power_set(const FgModule& m, const std::vector<Vec>& pre, unsigned e) {
  std::vector<Vec> gens;
  for (const auto& y : oracle::elements(m.group()))
    for (const auto& x : pre) gens.push_back(oracle::act(m, oracle::ring_pow(*m.ring(), x, e), y));
  return oracle::additive_closure(m.group(), gens);
}

bool lipman_by_enumeration(const FgModule& m, const std::vector<Vec>& xs, unsigned i, unsigned n, unsigned level) {
  std::vector<Vec> pre(xs.begin(), xs.begin() + (i - 1));
  const FiniteRing& r = *m.ring();
  auto left = oracle::colon_set(m, prefix_power_set(m, pre, level), oracle::ring_pow(r, xs[i - 1], level));
  auto right = oracle::colon_set(m, prefix_power_set(m, pre, n), oracle::ring_pow(r, xs[i - 1], level - n));
  return std::includes(right.begin(), right.end(), left.begin(), left.end());
}

// Minimal m for I^m : x^m inside I^n : x^{m-n} in R, by enumeration.
unsigned cartier_by_enumeration(const RingPtr& r, const Vec& g, const Vec& x, unsigned n) {
  auto ideal_power = [&](unsigned e) { return oracle::principal_set(*r, oracle::ring_pow(*r, g, e)); };
  auto colon = [&](const oracle::ElemSet& s, unsigned e) {
    oracle::ElemSet out;
    for (const auto& y : oracle::elements(r->additive()))
      if (s.count(oracle::ring_mul(*r, oracle::ring_pow(*r, x, e), y))) out.insert(y);
    return out;
  };
  for (unsigned m = n;; ++m) {
    auto left = colon(ideal_power(m), m), right = colon(ideal_power(n), m - n);
    if (std::includes(right.begin(), right.end(), left.begin(), left.end())) return m;
  }
}

}  // namespace

TEST_CASE("bounded torsion index examples") {
  FgModule r8 = FgModule::regular(zmod(8));
  auto t = bounded_torsion_index(r8, v({2}));
  CHECK(t.c == 3);
  CHECK(t.chain == std::vector<Int>{2, 4, 8});
  CHECK(bounded_torsion_index(r8, v({3})).c == 0);
  auto t3 = truncated_two_power(3);
  FgModule m3 = FgModule::regular(t3);
  auto tt = bounded_torsion_index(m3, t3->named().at("x"));
  CHECK(tt.c == 3);
  CHECK(tt.chain.back() == m3.order());
}

TEST_CASE("profile examples") {
  FgModule r8 = FgModule::regular(zmod(8));
  auto lip = lipman_profile(r8, {v({2})}, 4, 10);
  CHECK(row(lip, 1) == shifted(4, 3));
  CHECK(row(gm_profile(r8, {v({2})}, 4, 10), 1) == shifted(4, 3));
  CHECK(row(weak_profile(r8, {v({2})}, 4, 10, 1), 1) == shifted(4, 3));

  auto t3 = truncated_two_power(3);
  FgModule m3 = FgModule::regular(t3);
  Vec x = t3->named().at("x"), one = t3->one();
  auto a = lipman_profile(m3, {one, x}, 3, 12);
  CHECK(row(a, 1) == shifted(3, 0));
  CHECK(row(a, 2) == shifted(3, 0));
  auto b = lipman_profile(m3, {x, one}, 3, 12);
  CHECK(row(b, 1) == shifted(3, 3));
  CHECK(row(b, 2) == shifted(3, 0));

  auto t4 = truncated_two_power(4);
  CHECK(weak_profile(FgModule::regular(t4), {t4->named().at("x")}, 1, 12, 1).at(1, 1).m == 5u);

  FgModule r12 = FgModule::regular(zmod(12));
  auto g = gm_profile(r12, {v({3}), v({2})}, 3, 7);
  for (unsigned i = 1; i <= 2; ++i)
    for (unsigned n = 1; n <= 3; ++n) {
      REQUIRE(g.at(i, n).conclusive());
      CHECK(*g.at(i, n).m <= n + 4);
    }

  // Unit anywhere: weak entries equal n.
  auto w = weak_profile(r12, {v({5}), v({2})}, 3, 10, 2);
  CHECK(row(w, 1) == shifted(3, 0));
  CHECK(row(w, 2) == shifted(3, 0));

  // Inconclusive entries carry one certificate per examined m.
  auto cut = lipman_profile(r8, {v({2})}, 2, 4);
  CHECK_FALSE(cut.conclusive());
  CHECK(cut.at(1, 1).m == 1u + 3u);
  CHECK_FALSE(cut.at(1, 2).conclusive());
  CHECK(cut.at(1, 2).bound == 4);
  REQUIRE(cut.certificates.size() == 3);
  for (const auto& c : cut.certificates) {
    CHECK(c.n == 2);
    CHECK_FALSE(lipman_holds(r8, {v({2})}, 1, 2, c.m));
    // the element lies in the left colon but its multiple is nonzero in the target quotient
    CHECK(r8.group().is_zero(r8.act(zmod(8)->pow(v({2}), c.m), c.element)));
    CHECK_FALSE(r8.group().is_zero(r8.act(zmod(8)->pow(v({2}), c.m - 2), c.element)));
  }
  CHECK_THROWS_AS(weak_profile(r8, {v({2})}, 2, 4, 0), std::invalid_argument);
}

TEST_CASE("bound transfer") {
  auto t3 = truncated_two_power(3);
  FgModule m3 = FgModule::regular(t3);
  std::vector<Vec> xs{t3->named().at("x"), t3->one()};
  auto lip = lipman_profile(m3, xs, 3, 20);
  auto gm = gm_profile(m3, xs, 6, 20);
  auto out = verify_bound_transfer(lip, gm);
  CHECK(out.passed());

  FgModule r12 = FgModule::regular(zmod(12));
  std::vector<Vec> ys{v({3}), v({2})};
  CHECK(verify_bound_transfer(lipman_profile(r12, ys, 3, 12), gm_profile(r12, ys, 6, 14)).passed());
  CHECK_THROWS_AS(verify_bound_transfer(lipman_profile(r12, ys, 3, 2), gm_profile(r12, ys, 3, 2)), InsufficientBound);
}

TEST_CASE("power stability") {
  FgModule r8 = FgModule::regular(zmod(8));
  auto out = power_stability_check(r8, {v({2})}, {2}, 3);
  CHECK(out.passed());
  REQUIRE(out.profiles.size() == 2);
  CHECK(row(out.profiles[1].second, 1) == shifted(3, 2));
  auto same = power_stability_check(r8, {v({2})}, {1}, 3);
  CHECK(row(same.profiles[0].second, 1) == row(same.profiles[1].second, 1));
  CHECK(power_stability_check(FgModule::regular(zmod(12)), {v({2})}, {3}, 3).passed());
}

TEST_CASE("injective criteria") {
  FgModule r8 = FgModule::regular(zmod(8));
  auto a = injective_criterion(r8, {v({2})}, CriterionMode::proregular);
  CHECK(a.passed());
  CHECK(a.fact_value("cech_h1_vanishes_1") == true);
  CHECK(injective_criterion(r8, {v({3})}, CriterionMode::proregular).passed());
  auto z12 = zmod(12);
  auto b = injective_criterion(FgModule::regular(z12), {v({2}), v({3})}, CriterionMode::weak);
  CHECK(b.passed());
  CHECK(b.fact_value("cech_h1_vanishes") == true);
  CHECK(b.fact_value("cech_h2_vanishes") == true);
}

TEST_CASE("regular then bounded") {
  FgModule r8 = FgModule::regular(zmod(8));
  auto a = regular_then_bounded(r8, {v({3})}, v({2}));
  CHECK(a.fact_value("regular") == true);
  CHECK(a.passed());
  auto b = regular_then_bounded(r8, {}, v({2}));
  CHECK(b.passed());
  CHECK(b.notes.front() == "y-torsion index of M/xM: 3");
  CHECK(regular_then_bounded(FgModule::regular(zmod(12)), {v({5})}, v({2})).passed());
  auto c = regular_then_bounded(r8, {v({2})}, v({3}));
  CHECK(c.fact_value("regular") == false);
  CHECK(c.fact_value("hypothesis_failed") == true);
}

TEST_CASE("local-global") {
  auto z6 = zmod(6);
  auto a = local_global_check(FgModule::regular(z6), {v({2})}, {v({3}), v({4})}, 3);
  CHECK(a.passed());
  CHECK(row(a.profiles[0].second, 1) == shifted(3, 1));
  auto b = local_global_check(FgModule::regular(z6), {v({2})}, {v({1})}, 3);
  CHECK(b.passed());
  CHECK(row(b.profiles[0].second, 1) == row(b.profiles[2].second, 1));
  auto c = local_global_check(FgModule::regular(zmod(12)), {v({2})}, {}, 3);
  CHECK(c.passed());
  CHECK(c.name == "local_global_maximal");
  CHECK_THROWS_AS(local_global_check(FgModule::regular(z6), {v({2})}, {v({2})}, 2), NotCovering);
}

TEST_CASE("cartier condition") {
  auto z12 = zmod(12);
  auto a = cartier_check(Ideal(z12, {v({3})}), v({2}), 4, 10);
  CHECK(row(a.profiles[0].second, 1) == shifted(4, 0));
  CHECK(a.fact_value("b_divisibility") == true);
  CHECK(a.passed());
  auto w = cartier_check(Ideal::whole(z12), v({2}), 3, 8);
  CHECK(row(w.profiles[0].second, 1) == shifted(3, 0));

  auto z8 = zmod(8);
  auto b = cartier_check(Ideal(z8, {v({2})}), v({2}), 5, 12);
  CHECK(b.passed());
  for (unsigned n = 1; n <= 5; ++n)
    CHECK(b.profiles[0].second.at(1, n).m == cartier_by_enumeration(z8, v({2}), v({2}), n));
  CHECK(row(b.profiles[0].second, 1) == std::vector<unsigned>{2, 4, 6, 7, 8});
}

TEST_CASE("effective cartier") {
  auto z12 = zmod(12);
  CHECK(is_effective_cartier(Ideal::whole(z12), {v({1})}).fact_value("effective") == true);
  auto b = is_effective_cartier(Ideal(z12, {v({2})}), {v({3}), v({4})});
  CHECK(b.fact_value("effective") == false);
  CHECK(b.fact_value("chart_1") == false);
  CHECK(b.fact_value("chart_2") == true);
  CHECK(is_effective_cartier(Ideal(zmod(6), {v({5})}), {v({1})}).fact_value("effective") == true);
  CHECK_THROWS_AS(is_effective_cartier(Ideal(z12, {v({2})}), {v({2})}), NotCovering);
}

TEST_CASE("random profiles against enumeration") {
  Rng rng(31337);
  for (int trial = 0; trial < 40; ++trial) {
    RingPtr r = random_ring(rng, 32);
    FgModule m = random_module(rng, r, 64);
    std::size_t k = std::size_t(rng.range(1, 3));
    std::vector<Vec> xs;
    for (std::size_t t = 0; t < k; ++t) xs.push_back(random_element(rng, *r));
    const unsigned n_max = 2, m_max = default_m_max(m, k, n_max);

    auto lip = lipman_profile(m, xs, n_max, m_max);
    REQUIRE(lip.conclusive());
    for (unsigned i = 1; i <= k; ++i)
      for (unsigned n = 1; n <= n_max; ++n) {
        unsigned w = *lip.at(i, n).m;
        REQUIRE(lipman_by_enumeration(m, xs, i, n, w));
        if (w > n) REQUIRE_FALSE(lipman_by_enumeration(m, xs, i, n, w - 1));
        REQUIRE(lipman_multiplication_zero(m, xs, i, n, w));
        if (w > n) REQUIRE_FALSE(lipman_multiplication_zero(m, xs, i, n, w - 1));
        // upward closed
        REQUIRE(lipman_holds(m, xs, i, n, w + 2));
      }

    auto tor = bounded_torsion_index(m, xs[0]);
    auto single = lipman_profile(m, {xs[0]}, 3, 3 + tor.c + 2);
    REQUIRE(row(single, 1) == shifted(3, tor.c));
    REQUIRE(row(gm_profile(m, {xs[0]}, 3, 3 + tor.c + 2), 1) == row(single, 1));

    // Parallel kernels agree with the serial reference.
    REQUIRE(serial::lipman_profile(m, xs, n_max, m_max).entries.size() == lip.entries.size());
    auto sl = serial::lipman_profile(m, xs, n_max, m_max);
    auto sg = serial::gm_profile(m, xs, n_max, m_max);
    auto sw = serial::weak_profile(m, xs, n_max, m_max, unsigned(k));
    auto pg = gm_profile(m, xs, n_max, m_max, 2);
    auto pw = weak_profile(m, xs, n_max, m_max, unsigned(k), 2);
    for (std::size_t t = 0; t < lip.entries.size(); ++t) {
      REQUIRE(sl.entries[t].m == lip.entries[t].m);
      REQUIRE(sg.entries[t].m == pg.entries[t].m);
      REQUIRE(sw.entries[t].m == pw.entries[t].m);
    }

    // Cartier condition on a principal ideal against enumeration.
    if (r->order() <= 16) {
      Vec g = random_element(rng, *r);
      auto c = cartier_check(Ideal(r, {g}), xs[0], 2, 2 + 2 * ceil_log2(r->order()) + 2);
      REQUIRE(c.passed());
      for (unsigned n = 1; n <= 2; ++n)
        REQUIRE(c.profiles[0].second.at(1, n).m == cartier_by_enumeration(r, g, xs[0], n));
    }
  }
}
