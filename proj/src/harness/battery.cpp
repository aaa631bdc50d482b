#include "prokit/battery.hpp"

#include "prokit/checks.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <stdexcept>

namespace prokit {

Instance random_instance(Rng& rng, long ring_max, long module_max, std::size_t k_max) {
  Instance out;
  out.ring = random_ring(rng, ring_max);
  out.module = random_module(rng, out.ring, module_max);
  std::size_t k = std::size_t(rng.range(1, long(k_max)));
  for (std::size_t t = 0; t < k; ++t)
    out.xs.push_back(rng.range(0, 3) == 0 ? random_element(rng, *out.ring) : random_nonunit(rng, *out.ring));
  return out;
}

std::vector<Vec> random_covering(Rng& rng, const RingPtr& r) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    std::vector<Vec> fs;
    for (long t = rng.range(1, 3); t > 0; --t) fs.push_back(random_element(rng, *r));
    if (is_covering(*r, fs).covers) return fs;
  }
  return primitive_idempotents(r);
}

namespace {

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct Failures : std::vector<std::string> {
  std::vector<std::string> tags;  // tallied across instances
};
using InstanceFn = std::function<void(Rng&, Failures&)>;

void expect(Failures& f, bool ok, const std::string& what) {
  if (!ok) f.push_back(what);
}

IntMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c, long bound) {
  IntMatrix a(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a(i, j) = rng.range(-bound, bound);
  return a;
}

void snf_instance(Rng& rng, Failures& f) {
  std::size_t r = std::size_t(rng.range(1, 6)), c = std::size_t(rng.range(1, 6));
  IntMatrix a = random_matrix(rng, r, c, 20);
  SmithForm s = snf(a);
  expect(f, s.u * a * s.v == s.d, "D != U A V");
  bool chain = true;
  std::size_t diag = std::min(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (i != j && s.d(i, j) != 0) chain = false;
  for (std::size_t i = 0; i < diag; ++i) {
    if (s.d(i, i) < 0) chain = false;
    if (i + 1 < diag) {
      const Int& a0 = s.d(i, i);
      const Int& a1 = s.d(i + 1, i + 1);
      if (a0 == 0 ? a1 != 0 : !mpz_divisible_p(a1.get_mpz_t(), a0.get_mpz_t())) chain = false;
    }
  }
  expect(f, chain, "diagonal is not a divisibility chain");
  if (r == c) {
    Int det = abs(determinant(a));
    Int prod = 1;
    for (std::size_t i = 0; i < r; ++i) prod *= s.d(i, i);
    if (det != 0) expect(f, prod == det, "|det| != product of invariant factors");
  }
}

void require(Failures& f, const CheckOutcome& o) {
  if (!o.passed()) {
    std::string failed;
    for (const auto& [key, ok] : o.checks)
      if (!ok) failed += (failed.empty() ? "" : ", ") + key;
    f.push_back(o.name + " failed: " + failed);
  } else if (o.inconclusive) {
    f.push_back(o.name + " inconclusive");
  }
}

void colon_instance(Rng& rng, Failures& f) {
  Instance in = random_instance(rng);
  require(f, colon_identification_check(in.module, in.xs, unsigned(rng.range(1, 4)), 4));
}

void single_element_instance(Rng& rng, Failures& f) {
  Instance in = random_instance(rng, 64, 256, 1);
  require(f, single_element_law_check(in.module, in.xs[0]));
  f.tags.push_back("torsion_index_" + std::to_string(bounded_torsion_index(in.module, in.xs[0]).c));
}

void bound_transfer_instance(Rng& rng, Failures& f) {
  Instance in = random_instance(rng);
  require(f, bound_transfer_check(in.module, in.xs));
}

void finite_proregular_instance(Rng& rng, Failures& f) {
  Instance in = random_instance(rng);
  require(f, finite_proregular_check(in.module, in.xs));
}

void vanishing_instance(Rng& rng, Failures& f) {
  Instance in = random_instance(rng);
  require(f, cech_vanishing_check(in.module, in.xs));
}

void injective_instance(Rng& rng, Failures& f) {
  Instance in = random_instance(rng);
  for (auto mode : {CriterionMode::proregular, CriterionMode::weak})
    require(f, injective_criterion(in.module, in.xs, mode));
}

void hom_injective_instance(Rng& rng, Failures& f) {
  RingPtr r = random_ring(rng, 32);
  std::vector<Vec> xs;
  for (long j = rng.range(1, 2); j > 0; --j) xs.push_back(random_nonunit(rng, *r));
  require(f, hom_injective_check(r, xs));
}

void local_global_instance(Rng& rng, Failures& f) {
  Instance in = random_instance(rng);
  std::vector<Vec> cover = random_covering(rng, in.ring);
  for (const auto& c : {cover, std::vector<Vec>{}}) require(f, local_global_check(in.module, in.xs, c, 3));
}

void cartier_instance(Rng& rng, Failures& f) {
  RingPtr r = random_ring(rng, 64);
  std::vector<Vec> gens;
  for (long j = rng.range(1, 2); j > 0; --j) gens.push_back(random_nonunit(rng, *r));
  Vec x = rng.coin() ? random_element(rng, *r) : random_nonunit(rng, *r);
  const unsigned n_max = 3;
  CheckOutcome o = cartier_check(Ideal(r, gens), x, n_max, n_max + 3 * ceil_log2(r->order()));
  require(f, o);
  f.tags.push_back(o.fact_value("a_colon_condition") == true ? "a_holds" : "a_fails");
}

void tor_instance(Rng& rng, Failures& f) {
  RingPtr r = random_ring(rng, 32);
  FgModule m = random_module(rng, r, 64);
  FgModule n = random_module(rng, r, 64);
  std::vector<Vec> xs;
  for (long j = rng.range(1, 2); j > 0; --j) xs.push_back(random_nonunit(rng, *r));
  require(f, tor_compare_check(m, n, xs, {0, 1}));
}

struct Battery {
  BatteryInfo info;
  InstanceFn fn;
};

const std::vector<Battery>& registry() {
  static const std::vector<Battery> all{
      {{"snf", 200, "Smith form D = U A V, divisibility chain, |det| = product"}, snf_instance},
      {{"colon_identification", 100, "colon quotient vs Koszul homology isomorphism and transition square"},
       colon_instance},
      {{"single_element_law", 100, "lipman (1,n) = n + torsion index; gm equals lipman"}, single_element_instance},
      {{"bound_transfer", 50, "gm(i,n) <= i lip(i,n) and lip(i,n) <= gm(i,i n)"}, bound_transfer_instance},
      {{"finite_proregular", 100, "lipman, gm and weak profiles conclusive in the default budget"},
       finite_proregular_instance},
      {{"homological_vanishing", 100, "Cech (co)homology vanishing and degree-0 comparisons"}, vanishing_instance},
      {{"injective", 100, "injective-dual criteria hold and agree with profiles"}, injective_instance},
      {{"hom_injective", 20, "Cech homology of Hom(E, E) vanishes in positive degrees"}, hom_injective_instance},
      {{"local_global", 50, "diagonal injectivity and global witness = max of local witnesses"},
       local_global_instance},
      {{"cartier", 50, "colon condition (a) iff divisibility condition (b)"}, cartier_instance},
      {{"tor_compare", 20, "Cech homology of M (x) L vs Tor of the completion, degrees 0 and 1"}, tor_instance},
  };
  return all;
}

}  // namespace

const std::vector<BatteryInfo>& batteries() {
  static const std::vector<BatteryInfo> infos = [] {
    std::vector<BatteryInfo> out;
    for (const auto& b : registry()) out.push_back(b.info);
    return out;
  }();
  return infos;
}

CheckOutcome run_battery(const std::string& name, std::uint64_t seed, std::size_t count) {
  auto it = std::find_if(registry().begin(), registry().end(), [&](const Battery& b) { return b.info.name == name; });
  if (it == registry().end()) throw std::invalid_argument("unknown battery '" + name + "'");
  if (count == 0) count = it->info.default_count;
  auto t0 = std::chrono::steady_clock::now();

  std::vector<Failures> failures(count);
  const long total = long(count);
#pragma omp parallel for schedule(dynamic)
  for (long t = 0; t < total; ++t) {
    Rng rng(mix(seed ^ mix(std::uint64_t(t))));
    try {
      it->fn(rng, failures[std::size_t(t)]);
    } catch (const std::exception& e) {
      failures[std::size_t(t)].push_back(std::string("exception: ") + e.what());
    }
  }

  CheckOutcome out;
  out.name = "battery:" + name;
  std::size_t failed = 0;
  for (std::size_t t = 0; t < count; ++t) {
    if (failures[t].empty()) continue;
    if (failed < 5) out.notes.push_back("instance " + std::to_string(t) + ": " + failures[t].front());
    ++failed;
  }
  out.notes.insert(out.notes.begin(), "instances: " + std::to_string(count) + ", failures: " + std::to_string(failed));
  std::map<std::string, std::size_t> tally;
  for (const auto& fs : failures)
    for (const auto& tag : fs.tags) ++tally[tag];
  for (const auto& [tag, n] : tally) out.notes.push_back(tag + ": " + std::to_string(n));
  out.check("zero_failures", failed == 0);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace prokit
