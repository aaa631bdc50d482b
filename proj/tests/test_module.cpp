#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "module_oracles.hpp"
#include "prokit/complex.hpp"
#include "prokit/random.hpp"

using namespace prokit;

namespace {

Vec v(std::initializer_list<long> xs) {
  Vec out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

FgModule cyclic(const RingPtr& r, std::initializer_list<long> rel) {
  return module_from_presentation(r, 1, {{v(rel)}});
}

bool same_set(const Submodule& s, const oracle::ElemSet& e) {
  if (s.order() != Int(e.size())) return false;
  for (const auto& g : s.generators())
    if (!e.count(g)) return false;
  return true;
}

}  // namespace

TEST_CASE("presentations and submodules") {
  auto z4 = zmod(4);
  CHECK(cyclic(z4, {2}).order() == 2);
  CHECK(FgModule::free(z4, 3).order() == 64);

  auto z8 = zmod(8);
  FgModule m = FgModule::regular(z8);
  Submodule n = generated_submodule(m, {v({4})});
  Submodule c = colon_submodule(m, n, v({2}), 1);
  CHECK(c.order() == 4);
  CHECK(c.contains(v({2})));
  CHECK_FALSE(c.contains(v({1})));

  auto z12 = zmod(12);
  FgModule r12 = FgModule::regular(z12);
  CHECK(torsion_submodule(r12, Ideal(z12, {v({2})})).order() == 4);
  CHECK(torsion_submodule(r12, Ideal(z12, {v({3})})).order() == 3);
  CHECK(annihilator_submodule(r12, v({4})).order() == 4);

  CHECK(FgModule(z8, FinAbGroup(v({4})), {IntMatrix{{1}}}).check().empty());
  CHECK_THROWS_AS(FgModule(z4, FinAbGroup(v({2})), {IntMatrix{{0}}}), ModuleAxiomViolation);
  CHECK_THROWS_AS(FgModule(z4, FinAbGroup(v({8})), {IntMatrix{{1}}}), ModuleAxiomViolation);
}

TEST_CASE("functor examples") {
  auto z4 = zmod(4);
  auto z12 = zmod(12);
  FgModule z2 = cyclic(z4, {2});
  CHECK(hom_module(z2, FgModule::regular(z4)).module.order() == 2);
  CHECK(tensor_module(cyclic(z12, {2}), cyclic(z12, {3})).module.is_zero());
  CHECK(tensor_module(FgModule::regular(z4), z2).module.order() == 2);

  FgModule r12 = FgModule::regular(z12);
  FgModule d = matlis_dual(r12);
  CHECK(d.order() == 12);
  CHECK(d.check().empty());
  CHECK(matlis_dual(cyclic(z12, {4})).order() == 4);
  ModuleHom ev = double_dual_evaluation(r12);
  CHECK(ev.is_equivariant());

  Completion comp = adic_completion(r12, Ideal(z12, {v({2})}));
  CHECK(comp.module.order() == 4);
  CHECK(comp.c == 2);

  LocalizedModule lm = localize_module(r12, localize(z12, v({2})));
  CHECK(lm.module.order() == 3);
  CHECK(lm.module.check().empty());
}

TEST_CASE("derived functor examples") {
  auto z4 = zmod(4);
  FgModule z2 = cyclic(z4, {2});
  CHECK(tor(z2, z2, 1).order() == 2);
  CHECK(tor(z2, z2, 2).order() == 2);
  CHECK(ext(z2, z2, 1).order() == 2);
  CHECK(tor(z2, z2, 0).order() == 2);
  CHECK(ext(z2, FgModule::regular(z4), 0).order() == 2);
  CHECK(tor(FgModule::regular(z4), z2, 1).is_zero());

  auto z12 = zmod(12);
  FgModule r12 = FgModule::regular(z12);
  Ideal two(z12, {v({2})});
  CHECK(local_cohomology(r12, two, 0).order() == 4);
  CHECK(local_cohomology(r12, two, 1).is_zero());
}

TEST_CASE("complexes and homology") {
  auto z8 = zmod(8);
  FgModule r = FgModule::regular(z8);
  // R --4--> R --2--> R: homology at the middle is (0 : 2) / 4R = {0,4}/{0,4} = 0.
  ModuleHom m4(r, r, IntMatrix{{4}}), m2(r, r, IntMatrix{{2}});
  ChainComplex c(z8, 0, {r, r, r}, {m2, m4});
  CHECK(homology(c, 1).module.is_zero());
  CHECK(homology(c, 0).module.order() == 2);
  CHECK(homology(c, 2).module.order() == 4);
  CHECK_THROWS_AS(ChainComplex(z8, 0, {r, r, r}, {m2, m2}), ComplexError);

  // Multiplication by 2 on the complex is a chain map; it induces zero on H_0 = Z/2.
  std::map<int, ModuleHom> comps{{0, m2}, {1, m2}, {2, m2}};
  ComplexMap f(c, c, comps);
  auto h0 = homology(c, 0);
  CHECK(induced_map(f.component(0), h0, h0).is_zero());
  ModuleHom three(r, r, IntMatrix{{3}});
  auto h2 = homology(c, 2);
  CHECK_FALSE(induced_map(three, h2, h2).is_zero());
  std::map<int, ModuleHom> bad{{0, m2}, {1, three}};
  CHECK_THROWS_AS(ComplexMap(c, c, bad), ComplexError);
}

TEST_CASE("random modules against enumeration") {
  Rng rng(977);
  int hom_checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    RingPtr r = random_ring(rng, 32);
    FgModule m = random_module(rng, r, 128);
    REQUIRE(m.check().empty());
    REQUIRE(m.order() <= 128);
    Vec x = random_element(rng, *r);
    Vec y = random_element(rng, *r);
    unsigned e = unsigned(rng.range(1, 3));
    auto mel = oracle::elements(m.group());
    const Vec& g0 = mel[std::size_t(rng.range(0, long(mel.size()) - 1))];

    Submodule n = generated_submodule(m, {g0});
    auto nset = oracle::module_set(m, {g0});
    REQUIRE(same_set(n, nset));
    REQUIRE(same_set(colon_submodule(m, n, x, e), oracle::colon_set(m, nset, r->pow(x, e))));
    REQUIRE(same_set(torsion_submodule(m, Ideal(r, {x, y})), oracle::torsion_set(m, {x, y})));
    REQUIRE(same_set(power_image(m, {x, y}, {e, 1}), oracle::module_set(m, [&] {
                       std::vector<Vec> gs;
                       for (const auto& z : mel) {
                         gs.push_back(oracle::act(m, r->pow(x, e), z));
                         gs.push_back(oracle::act(m, y, z));
                       }
                       return gs;
                     }())));

    auto q = quotient_module(m, n);
    REQUIRE(q.module.check().empty());
    REQUIRE(q.module.order() * n.order() == m.order());
    REQUIRE(q.projection().is_equivariant());
    auto sm = submodule_as_module(m, n);
    REQUIRE(sm.module.check().empty());
    REQUIRE(sm.inclusion().is_equivariant());
    REQUIRE(kernel(sm.inclusion()).is_zero());

    // M (x) R/xR = M/xM, and Tor_0 agrees.
    FgModule rx = quotient_module(FgModule::regular(r), Subgroup::span_columns(r->additive(), r->mult_matrix(x))).module;
    std::vector<Vec> xm;
    for (const auto& z : mel) xm.push_back(oracle::act(m, x, z));
    Int expect = m.order() / Int(oracle::additive_closure(m.group(), xm).size());
    REQUIRE(tensor_module(m, rx).module.order() == expect);
    REQUIRE(tensor_module(rx, m).module.order() == expect);
    REQUIRE(tor(m, rx, 0).order() == expect);
    // Tor_1 is balanced.
    REQUIRE(tor(m, rx, 1).order() == tor(rx, m, 1).order());

    // Matlis dual: same order, a valid module, reflexive.
    FgModule d = matlis_dual(m);
    REQUIRE(d.check().empty());
    REQUIRE(d.order() == m.order());
    REQUIRE(double_dual_evaluation(m).is_equivariant());

    if (oracle::hom_search_size(m, rx) <= 20000) {
      auto h = hom_module(m, rx);
      REQUIRE(h.module.check().empty());
      REQUIRE(h.module.order() == Int(oracle::hom_count(m, rx)));
      REQUIRE(ext(m, rx, 0).order() == h.module.order());
      ++hom_checked;
    }
    if (oracle::hom_search_size(rx, m) <= 20000) {
      auto h = hom_module(rx, m);
      REQUIRE(h.module.order() == Int(oracle::hom_count(rx, m)));
      // Hom(R/xR, M) = 0 :_M x.
      REQUIRE(h.module.order() == annihilator_submodule(m, x).order());
      ++hom_checked;
    }

    // H^0_I(M) = Gamma_I(M); Ext^i(R, M) = 0 for i >= 1.
    Ideal ix(r, {x});
    REQUIRE(local_cohomology(m, ix, 0).order() == torsion_submodule(m, ix).order());
    REQUIRE(ext(FgModule::regular(r), m, 1).is_zero());
  }
  CHECK(hom_checked > 40);
}
