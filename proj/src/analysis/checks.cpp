#include "prokit/checks.hpp"

#include <chrono>

namespace prokit {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

unsigned budget(const FgModule& m, std::size_t k, unsigned n_max, unsigned m_max) {
  return m_max ? m_max : default_m_max(m, k, n_max);
}

}  // namespace

CheckOutcome single_element_law_check(const FgModule& m, const Vec& x, unsigned n_max, unsigned m_max, int jobs) {
  auto t0 = Clock::now();
  CheckOutcome out;
  out.name = "single_element_law";
  const std::vector<Vec> xs{x};
  m_max = budget(m, 1, n_max, m_max);
  unsigned c = bounded_torsion_index(m, x).c;
  out.notes.push_back("torsion index: " + std::to_string(c));
  Profile lip = lipman_profile(m, xs, n_max, m_max, jobs);
  Profile gm = gm_profile(m, xs, n_max, m_max, jobs);
  bool law = true;
  for (unsigned n = 1; n <= n_max; ++n) {
    if (n + c > m_max) {
      out.inconclusive = true;
      continue;
    }
    law = law && lip.at(1, n).m == n + c;
  }
  out.check("lipman_is_n_plus_torsion_index", law);
  out.check("gm_equals_lipman", gm.entries == lip.entries);
  out.profiles.emplace_back("lipman", std::move(lip));
  out.profiles.emplace_back("gm", std::move(gm));
  out.seconds = since(t0);
  return out;
}

CheckOutcome bound_transfer_check(const FgModule& m, const std::vector<Vec>& xs, unsigned n_max, unsigned m_max,
                                  int jobs) {
  auto t0 = Clock::now();
  const unsigned k = unsigned(xs.size());
  m_max = budget(m, k, k * n_max, m_max);
  Profile lip = lipman_profile(m, xs, n_max, m_max, jobs);
  Profile gm = gm_profile(m, xs, k * n_max, m_max, jobs);
  CheckOutcome out;
  try {
    out = verify_bound_transfer(lip, gm);
  } catch (const InsufficientBound& e) {
    out.name = "bound_transfer";
    out.inconclusive = true;
    out.notes.push_back(std::string("insufficient bound: ") + e.what());
    out.profiles.emplace_back("lipman", std::move(lip));
    out.profiles.emplace_back("gm", std::move(gm));
  }
  out.seconds = since(t0);
  return out;
}

CheckOutcome finite_proregular_check(const FgModule& m, const std::vector<Vec>& xs, unsigned n_max, unsigned m_max,
                                     int jobs) {
  auto t0 = Clock::now();
  const unsigned k = unsigned(xs.size());
  m_max = budget(m, k, n_max, m_max);
  CheckOutcome out;
  out.name = "finite_proregular";
  Profile lip = lipman_profile(m, xs, n_max, m_max, jobs);
  Profile gm = gm_profile(m, xs, n_max, m_max, jobs);
  Profile weak = weak_profile(m, xs, n_max, m_max, k, jobs);
  out.check("lipman_conclusive", lip.conclusive());
  out.check("gm_conclusive", gm.conclusive());
  out.check("weak_conclusive", weak.conclusive());
  out.check("lipman_implies_weak", !lip.conclusive() || weak.conclusive());
  out.profiles.emplace_back("lipman", std::move(lip));
  out.profiles.emplace_back("gm", std::move(gm));
  out.profiles.emplace_back("weak", std::move(weak));
  out.seconds = since(t0);
  return out;
}

CheckOutcome cech_vanishing_check(const FgModule& m, const std::vector<Vec>& xs) {
  auto t0 = Clock::now();
  CheckOutcome out;
  out.name = "cech_vanishing";
  const unsigned k = unsigned(xs.size());
  Ideal ix(m.ring(), xs);
  for (unsigned i = 1; i <= k; ++i) {
    out.check("cech_cohomology_" + std::to_string(i) + "_zero", cech_cohomology(xs, m, i).is_zero());
    out.check("cech_homology_" + std::to_string(i) + "_zero", cech_homology(xs, m, i).is_zero());
  }
  FgModule h0 = cech_cohomology(xs, m, 0);
  FgModule gamma = submodule_as_module(m, torsion_submodule(m, ix)).module;
  out.check("cech_h0_is_torsion", same_invariants(h0, gamma));
  out.check("torsion_is_local_h0", same_invariants(gamma, local_cohomology(m, ix, 0)));
  out.check("cech_h_0_is_completion", same_invariants(cech_homology(xs, m, 0), adic_completion(m, ix).module));
  out.notes.push_back("torsion: " + describe(gamma));
  out.seconds = since(t0);
  return out;
}

CheckOutcome colon_identification_check(const FgModule& m, const std::vector<Vec>& xs, unsigned n,
                                        unsigned level_max) {
  auto t0 = Clock::now();
  CheckOutcome out;
  out.name = "colon_identification";
  if (xs.empty()) throw std::invalid_argument("colon identification needs a nonempty sequence");
  std::vector<Vec> prefix(xs.begin(), xs.end() - 1);
  std::vector<unsigned> levels;
  for (unsigned l = n; l <= level_max; ++l) levels.push_back(l);
  try {
    ColonIdentification id = colon_identification(prefix, xs.back(), n, m, levels);
    out.check("isomorphism", id.verified);
    out.check("squares_commute", id.square_levels == levels);
    out.notes.push_back("colon quotient: " + describe(id.lhs));
  } catch (const IdentificationFailure& e) {
    out.check("isomorphism", false);
    out.notes.push_back(e.what());
  }
  out.seconds = since(t0);
  return out;
}

CheckOutcome tor_compare_check(const FgModule& m, const FgModule& n, const std::vector<Vec>& xs,
                               const std::vector<unsigned>& degrees, unsigned resolution_length) {
  auto t0 = Clock::now();
  CheckOutcome out;
  out.name = "cech_tor_compare";
  for (unsigned i : degrees) {
    TorComparison t = cech_tor_compare(m, n, xs, i, resolution_length);
    out.check("isomorphic_" + std::to_string(i), t.isomorphic);
    out.notes.push_back("degree " + std::to_string(i) + ": " + describe(t.lhs) + " vs " + describe(t.rhs));
  }
  out.seconds = since(t0);
  return out;
}

CheckOutcome hom_injective_check(const RingPtr& r, const std::vector<Vec>& xs) {
  auto t0 = Clock::now();
  CheckOutcome out;
  out.name = "hom_injective";
  FgModule e = matlis_dual(FgModule::regular(r));
  FgModule h = hom_module(e, e).module;
  for (unsigned i = 1; i <= xs.size(); ++i)
    out.check("cech_homology_" + std::to_string(i) + "_zero", cech_homology(xs, h, i).is_zero());
  out.seconds = since(t0);
  return out;
}

}  // namespace prokit
