#include "prokit/analysis.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <exception>

namespace prokit {

std::string to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::lipman:
      return "lipman";
    case ProfileKind::greenlees_may:
      return "gm";
    case ProfileKind::weak:
      return "weak";
    case ProfileKind::cartier:
      return "cartier";
  }
  return "?";
}

std::optional<ProfileKind> profile_kind_from_string(const std::string& s) {
  for (auto k : {ProfileKind::lipman, ProfileKind::greenlees_may, ProfileKind::weak, ProfileKind::cartier})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

bool Profile::conclusive() const { return inconclusive_count() == 0; }

std::size_t Profile::inconclusive_count() const {
  return std::size_t(std::count_if(entries.begin(), entries.end(), [](const Witness& w) { return !w.conclusive(); }));
}

bool CheckOutcome::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

Status CheckOutcome::status() const {
  if (!passed()) return Status::counterexample;
  if (inconclusive) return Status::inconclusive;
  return Status::pass;
}

namespace {

std::optional<bool> lookup(const std::vector<std::pair<std::string, bool>>& v, const std::string& key) {
  for (const auto& [k, b] : v)
    if (k == key) return b;
  return std::nullopt;
}

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

}  // namespace

std::optional<bool> CheckOutcome::fact_value(const std::string& key) const { return lookup(facts, key); }
std::optional<bool> CheckOutcome::check_value(const std::string& key) const { return lookup(checks, key); }

unsigned default_m_max(const FgModule& m, std::size_t k, unsigned n_max) {
  return n_max + ceil_log2(m.order()) * unsigned(k + 1);
}

std::vector<Vec> all_elements(const FinAbGroup& g) {
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

TorsionIndex bounded_torsion_index(const FgModule& m, const Vec& x) {
  TorsionIndex out;
  const FiniteRing& r = *m.ring();
  Int prev = 1;
  for (unsigned j = 1;; ++j) {
    Int o = annihilator_submodule(m, r.pow(x, j)).order();
    if (o == prev) break;
    out.chain.push_back(o);
    prev = o;
    out.c = j;
  }
  return out;
}

// ------------------------------------------------------------ inclusion tests

namespace {

struct ColonPair {
  Submodule left, right, target;  // target: the level-n prefix image
};

std::vector<Vec> prefix_of(const std::vector<Vec>& xs, unsigned i) {
  return std::vector<Vec>(xs.begin(), xs.begin() + std::ptrdiff_t(i - 1));
}

ColonPair lipman_pair(const FgModule& m, const std::vector<Vec>& xs, unsigned i, unsigned n, unsigned level) {
  auto pre = prefix_of(xs, i);
  const Vec& x = xs[i - 1];
  Submodule top = power_image(m, pre, std::vector<unsigned>(pre.size(), level));
  Submodule low = power_image(m, pre, std::vector<unsigned>(pre.size(), n));
  return {colon_submodule(m, top, x, level), colon_submodule(m, low, x, level - n), low};
}

ColonPair gm_pair(const FgModule& m, const std::vector<Vec>& xs, unsigned i, unsigned n, unsigned level) {
  Ideal pre(m.ring(), prefix_of(xs, i));
  const Vec& x = xs[i - 1];
  Submodule top = ideal_power_image(m, pre, level);
  Submodule low = ideal_power_image(m, pre, n);
  return {colon_submodule(m, top, x, level), colon_submodule(m, low, x, level - n), low};
}

std::optional<Vec> first_outside(const Submodule& a, const Submodule& b) {
  for (const auto& g : a.generators())
    if (!b.contains(g)) return g;
  return std::nullopt;
}

void check_position(const std::vector<Vec>& xs, unsigned i, unsigned n, unsigned level) {
  if (i < 1 || i > xs.size()) throw std::out_of_range("sequence position out of range");
  if (n < 1 || level < n) throw std::invalid_argument("need 1 <= n <= m");
}

}  // namespace

bool lipman_holds(const FgModule& m, const std::vector<Vec>& xs, unsigned i, unsigned n, unsigned level) {
  return !lipman_violation(m, xs, i, n, level);
}

std::optional<Vec> lipman_violation(const FgModule& m, const std::vector<Vec>& xs, unsigned i, unsigned n,
                                    unsigned level) {
  check_position(xs, i, n, level);
  if (m.is_zero()) return std::nullopt;
  ColonPair p = lipman_pair(m, xs, i, n, level);
  return first_outside(p.left, p.right);
}

bool lipman_multiplication_zero(const FgModule& m, const std::vector<Vec>& xs, unsigned i, unsigned n,
                                unsigned level) {
  check_position(xs, i, n, level);
  if (m.is_zero()) return true;
  ColonPair p = lipman_pair(m, xs, i, n, level);
  Vec f = m.ring()->pow(xs[i - 1], level - n);
  return scaled_submodule(m, f, p.left).is_subset_of(p.target);
}

bool gm_holds(const FgModule& m, const std::vector<Vec>& xs, unsigned i, unsigned n, unsigned level) {
  return !gm_violation(m, xs, i, n, level);
}

std::optional<Vec> gm_violation(const FgModule& m, const std::vector<Vec>& xs, unsigned i, unsigned n,
                                unsigned level) {
  check_position(xs, i, n, level);
  if (m.is_zero()) return std::nullopt;
  ColonPair p = gm_pair(m, xs, i, n, level);
  return first_outside(p.left, p.right);
}

// ------------------------------------------------------------------- profiles

namespace {

struct ProfileJob {
  ProfileKind kind;
  unsigned rows, n_max, m_max;
  const FgModule* mod;
  const std::vector<Vec>* xs;

  std::optional<Vec> violation(unsigned i, unsigned n, unsigned level) const {
    switch (kind) {
      case ProfileKind::lipman:
        return lipman_violation(*mod, *xs, i, n, level);
      case ProfileKind::greenlees_may:
        return gm_violation(*mod, *xs, i, n, level);
      default:
        return pro_zero_violation(*xs, *mod, i, n, level);
    }
  }

  Witness entry(unsigned i, unsigned n) const {
    Witness w;
    w.bound = m_max;
    for (unsigned level = n; level <= m_max; ++level)
      if (!violation(i, n, level)) {
        w.m = level;
        break;
      }
    return w;
  }

  Profile assemble(std::vector<Witness> entries) const {
    Profile p;
    p.kind = kind;
    p.rows = rows;
    p.n_max = n_max;
    p.m_max = m_max;
    p.entries = std::move(entries);
    for (unsigned i = 1; i <= rows; ++i)
      for (unsigned n = 1; n <= n_max; ++n) {
        if (p.at(i, n).conclusive()) continue;
        for (unsigned level = n; level <= m_max; ++level)
          if (auto v = violation(i, n, level)) p.certificates.push_back({"violating-element", i, n, level, *v});
      }
    return p;
  }

  Profile run_serial() const {
    std::vector<Witness> e;
    for (unsigned i = 1; i <= rows; ++i)
      for (unsigned n = 1; n <= n_max; ++n) e.push_back(entry(i, n));
    return assemble(std::move(e));
  }

  Profile run_parallel(int jobs) const {
    const long total = long(rows) * long(n_max);
    std::vector<Witness> e(static_cast<std::size_t>(total));
    std::exception_ptr error;
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long t = 0; t < total; ++t) {
      try {
        e[std::size_t(t)] = entry(unsigned(t / n_max) + 1, unsigned(t % n_max) + 1);
      } catch (...) {
#pragma omp critical(prokit_profile_error)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    return assemble(std::move(e));
  }
};

void check_bounds(unsigned n_max, unsigned m_max) {
  if (n_max < 1 || m_max < 1) throw std::invalid_argument("profile bounds must be positive");
}

}  // namespace

Profile lipman_profile(const FgModule& m, const std::vector<Vec>& xs, unsigned n_max, unsigned m_max, int jobs) {
  check_bounds(n_max, m_max);
  return ProfileJob{ProfileKind::lipman, unsigned(xs.size()), n_max, m_max, &m, &xs}.run_parallel(jobs);
}

Profile gm_profile(const FgModule& m, const std::vector<Vec>& xs, unsigned n_max, unsigned m_max, int jobs) {
  check_bounds(n_max, m_max);
  return ProfileJob{ProfileKind::greenlees_may, unsigned(xs.size()), n_max, m_max, &m, &xs}.run_parallel(jobs);
}

Profile weak_profile(const FgModule& m, const std::vector<Vec>& xs, unsigned n_max, unsigned m_max, unsigned i_max,
                     int jobs) {
  check_bounds(n_max, m_max);
  if (i_max < 1) throw std::invalid_argument("weak profile needs i_max >= 1");
  return ProfileJob{ProfileKind::weak, i_max, n_max, m_max, &m, &xs}.run_parallel(jobs);
}

namespace serial {

Profile lipman_profile(const FgModule& m, const std::vector<Vec>& xs, unsigned n_max, unsigned m_max) {
  check_bounds(n_max, m_max);
  return ProfileJob{ProfileKind::lipman, unsigned(xs.size()), n_max, m_max, &m, &xs}.run_serial();
}

Profile gm_profile(const FgModule& m, const std::vector<Vec>& xs, unsigned n_max, unsigned m_max) {
  check_bounds(n_max, m_max);
  return ProfileJob{ProfileKind::greenlees_may, unsigned(xs.size()), n_max, m_max, &m, &xs}.run_serial();
}

Profile weak_profile(const FgModule& m, const std::vector<Vec>& xs, unsigned n_max, unsigned m_max, unsigned i_max) {
  check_bounds(n_max, m_max);
  if (i_max < 1) throw std::invalid_argument("weak profile needs i_max >= 1");
  return ProfileJob{ProfileKind::weak, i_max, n_max, m_max, &m, &xs}.run_serial();
}

}  // namespace serial

// --------------------------------------------------------------------- checks

CheckOutcome verify_bound_transfer(const Profile& lip, const Profile& gm) {
  auto t0 = Clock::now();
  if (lip.rows != gm.rows) throw std::invalid_argument("profiles have different lengths");
  CheckOutcome out;
  out.name = "bound_transfer";
  bool upper = true, lower = true;
  std::size_t scaled = 0;
  for (unsigned i = 1; i <= lip.rows; ++i)
    for (unsigned n = 1; n <= std::min(lip.n_max, gm.n_max); ++n) {
      const Witness& l = lip.at(i, n);
      const Witness& g = gm.at(i, n);
      if (!l.conclusive() || !g.conclusive())
        throw InsufficientBound("entry (" + std::to_string(i) + "," + std::to_string(n) + ") is inconclusive");
      if (*g.m > i * *l.m) {
        upper = false;
        out.certificates.push_back({"gm-exceeds-scaled-lipman", i, n, *g.m, {}});
      }
      if (i * n <= gm.n_max) {
        const Witness& gs = gm.at(i, i * n);
        if (!gs.conclusive())
          throw InsufficientBound("entry (" + std::to_string(i) + "," + std::to_string(i * n) +
                                  ") is inconclusive");
        ++scaled;
        if (*l.m > *gs.m) {
          lower = false;
          out.certificates.push_back({"lipman-exceeds-scaled-gm", i, n, *l.m, {}});
        }
      }
    }
  out.check("gm_le_i_lipman", upper);
  out.check("lipman_le_gm_at_i_n", lower);
  out.notes.push_back("scaled comparisons: " + std::to_string(scaled));
  out.seconds = since(t0);
  return out;
}

CheckOutcome power_stability_check(const FgModule& m, const std::vector<Vec>& xs, const std::vector<unsigned>& exps,
                                   unsigned n_max) {
  auto t0 = Clock::now();
  if (exps.size() != xs.size()) throw std::invalid_argument("one exponent per element");
  unsigned sum = 0;
  for (auto e : exps) {
    if (e < 1) throw std::invalid_argument("exponents must be positive");
    sum += e;
  }
  const FiniteRing& r = *m.ring();
  std::vector<Vec> ys;
  for (std::size_t j = 0; j < xs.size(); ++j) ys.push_back(r.pow(xs[j], exps[j]));
  const unsigned lg = ceil_log2(m.order());
  const unsigned m_max = n_max + lg * (1 + sum);
  CheckOutcome out;
  out.name = "power_stability";
  Profile base = lipman_profile(m, xs, n_max, m_max);
  Profile powered = lipman_profile(m, ys, n_max, m_max);
  out.check("base_conclusive", base.conclusive());
  out.check("powered_conclusive", powered.conclusive());
  bool within = true;
  for (const auto* p : {&base, &powered})
    for (unsigned i = 1; i <= p->rows; ++i)
      for (unsigned n = 1; n <= n_max; ++n)
        if (p->at(i, n).conclusive() && *p->at(i, n).m > n + lg) within = false;
  out.fact("within_log_bound", within);
  out.profiles.emplace_back("base", std::move(base));
  out.profiles.emplace_back("powered", std::move(powered));
  out.seconds = since(t0);
  return out;
}

CheckOutcome injective_criterion(const FgModule& m, const std::vector<Vec>& xs, CriterionMode mode, unsigned n_max) {
  auto t0 = Clock::now();
  const RingPtr& r = m.ring();
  FgModule e = matlis_dual(FgModule::regular(r));
  FgModule h = hom_module(m, e).module;
  CheckOutcome out;
  out.name = mode == CriterionMode::proregular ? "injective_criterion_proregular" : "injective_criterion_weak";
  bool verdict = true;
  const unsigned k = unsigned(xs.size());
  if (mode == CriterionMode::proregular) {
    for (unsigned i = 1; i <= k; ++i) {
      Ideal before(r, prefix_of(xs, i));
      Ideal upto(r, prefix_of(xs, i + 1));
      Submodule d = torsion_submodule(h, before);
      SubmoduleModule dm = submodule_as_module(h, d);
      bool vanish = cech_cohomology({xs[i - 1]}, dm.module, 1).is_zero();
      Homology quot = subquotient(h, d, torsion_submodule(h, upto));
      bool divisible = is_divisible(quot.module, xs[i - 1]);
      out.fact("cech_h1_vanishes_" + std::to_string(i), vanish);
      out.fact("quotient_divisible_" + std::to_string(i), divisible);
      verdict = verdict && vanish && divisible;
    }
    Profile p = lipman_profile(m, xs, n_max, default_m_max(m, k, n_max));
    out.fact("profile_conclusive", p.conclusive());
    out.check("criterion_holds", verdict);
    out.check("consistent_with_profile", verdict == p.conclusive());
    out.profiles.emplace_back("lipman", std::move(p));
  } else {
    for (unsigned i = 1; i <= k; ++i) {
      bool vanish = cech_cohomology(xs, h, i).is_zero();
      out.fact("cech_h" + std::to_string(i) + "_vanishes", vanish);
      verdict = verdict && vanish;
    }
    std::optional<Profile> p;
    if (k > 0) p = weak_profile(m, xs, n_max, default_m_max(m, k, n_max), k);
    bool conclusive = !p || p->conclusive();
    out.fact("profile_conclusive", conclusive);
    out.check("criterion_holds", verdict);
    out.check("consistent_with_profile", verdict == conclusive);
    if (p) out.profiles.emplace_back("weak", std::move(*p));
  }
  out.seconds = since(t0);
  return out;
}

CheckOutcome regular_then_bounded(const FgModule& m, const std::vector<Vec>& xs, const Vec& y, unsigned n_max) {
  auto t0 = Clock::now();
  const RingPtr& r = m.ring();
  CheckOutcome out;
  out.name = "regular_then_bounded";
  bool regular = true;
  for (unsigned i = 1; i <= xs.size(); ++i) {
    Submodule pre = power_image(m, prefix_of(xs, i), std::vector<unsigned>(i - 1, 1));
    QuotientModule q = quotient_module(m, pre);
    regular = regular && annihilator_submodule(q.module, xs[i - 1]).is_zero();
  }
  Ideal ix(r, xs);
  QuotientModule mx = quotient_module(m, ideal_power_image(m, ix, 1));
  TorsionIndex ti = bounded_torsion_index(mx.module, y);
  out.fact("regular", regular);
  out.fact("bounded_y_torsion", true);
  out.notes.push_back("y-torsion index of M/xM: " + std::to_string(ti.c));
  if (!regular) {
    out.fact("hypothesis_failed", true);
    out.seconds = since(t0);
    return out;
  }
  std::vector<Vec> seq = xs;
  seq.push_back(y);
  Profile p = lipman_profile(m, seq, n_max, default_m_max(m, seq.size(), n_max));
  out.check("profile_conclusive", p.conclusive());
  const Int base = mx.module.order();
  const unsigned k = unsigned(xs.size());
  for (unsigned n = 1; n <= 3; ++n) {
    Int layer = ideal_power_image(m, ix, n).order() / ideal_power_image(m, ix, n + 1).order();
    Int bn;
    mpz_bin_uiui(bn.get_mpz_t(), k + n - 1, n);
    Int expect;
    mpz_pow_ui(expect.get_mpz_t(), base.get_mpz_t(), bn.get_ui());
    out.check("layer_cardinality_" + std::to_string(n), layer == expect);
  }
  out.profiles.emplace_back("lipman", std::move(p));
  out.seconds = since(t0);
  return out;
}

CheckOutcome local_global_check(const FgModule& m, const std::vector<Vec>& xs, const std::vector<Vec>& covering,
                                unsigned n_max, unsigned i_max) {
  auto t0 = Clock::now();
  const RingPtr& r = m.ring();
  CheckOutcome out;
  out.name = covering.empty() ? "local_global_maximal" : "local_global";
  std::vector<Vec> fs = covering.empty() ? primitive_idempotents(r) : covering;
  if (!is_covering(*r, fs).covers) throw NotCovering("elements do not generate the unit ideal");
  const unsigned k = unsigned(xs.size());
  if (i_max == 0) i_max = std::max(1u, k);
  const unsigned m_max = default_m_max(m, k, n_max);

  std::vector<LocalizedModule> locs;
  std::vector<std::vector<Vec>> local_xs;
  Subgroup joint = Subgroup::whole(m.group());
  for (const auto& f : fs) {
    Localization loc = localize(r, f);
    locs.push_back(localize_module(m, loc));
    joint = joint.intersect(kernel(GroupHom(m.group(), locs.back().module.group(), locs.back().map.projection)));
    std::vector<Vec> ys;
    for (const auto& x : xs) ys.push_back(loc.project(x));
    local_xs.push_back(std::move(ys));
  }
  out.check("diagonal_injective", joint.is_zero());

  auto compare = [&](const Profile& global, const std::vector<Profile>& local, const std::string& key) {
    bool ok = true;
    for (unsigned i = 1; i <= global.rows; ++i)
      for (unsigned n = 1; n <= n_max; ++n) {
        unsigned mx = n;
        bool all = global.at(i, n).conclusive();
        for (const auto& p : local) {
          all = all && p.at(i, n).conclusive();
          if (p.at(i, n).conclusive()) mx = std::max(mx, *p.at(i, n).m);
        }
        if (!all) {
          out.inconclusive = true;
          continue;
        }
        if (*global.at(i, n).m != mx) {
          ok = false;
          out.certificates.push_back({"global-differs-from-local-max", i, n, *global.at(i, n).m, {}});
        }
      }
    out.check(key, ok);
  };

  if (k > 0) {
    Profile lip = lipman_profile(m, xs, n_max, m_max);
    Profile weak = weak_profile(m, xs, n_max, m_max, i_max);
    std::vector<Profile> llip, lweak;
    for (std::size_t j = 0; j < locs.size(); ++j) {
      llip.push_back(lipman_profile(locs[j].module, local_xs[j], n_max, m_max));
      lweak.push_back(weak_profile(locs[j].module, local_xs[j], n_max, m_max, i_max));
    }
    compare(lip, llip, "lipman_global_is_local_max");
    compare(weak, lweak, "weak_global_is_local_max");
    out.profiles.emplace_back("lipman_global", std::move(lip));
    out.profiles.emplace_back("weak_global", std::move(weak));
    for (std::size_t j = 0; j < locs.size(); ++j) {
      out.profiles.emplace_back("lipman_local_" + std::to_string(j + 1), std::move(llip[j]));
      out.profiles.emplace_back("weak_local_" + std::to_string(j + 1), std::move(lweak[j]));
    }
  }
  out.seconds = since(t0);
  return out;
}

CheckOutcome cartier_check(const Ideal& i, const Vec& x, unsigned n_max, unsigned m_max) {
  auto t0 = Clock::now();
  const RingPtr& r = i.ring();
  if (n_max < 1 || m_max < 1) throw std::invalid_argument("bounds must be positive");
  CheckOutcome out;
  out.name = "cartier";
  FgModule reg = FgModule::regular(r);
  QuotientModule ri = quotient_module(reg, i.span());
  TorsionIndex ti = bounded_torsion_index(ri.module, x);
  out.fact("bounded_torsion", true);
  out.notes.push_back("x-torsion index of R/I: " + std::to_string(ti.c));
  out.fact("effective_cartier_on_trivial_cover", *is_effective_cartier(i, {r->one()}).fact_value("effective"));

  Profile p;
  p.kind = ProfileKind::cartier;
  p.rows = 1;
  p.n_max = n_max;
  p.m_max = m_max;
  for (unsigned n = 1; n <= n_max; ++n) {
    Witness w;
    w.bound = m_max;
    Submodule low = ideal_power_image(reg, i, n);
    for (unsigned level = n; level <= m_max; ++level) {
      Submodule left = colon_submodule(reg, ideal_power_image(reg, i, level), x, level);
      auto v = first_outside(left, colon_submodule(reg, low, x, level - n));
      if (!v) {
        w.m = level;
        break;
      }
      p.certificates.push_back({"violating-element", 1, n, level, *v});
    }
    if (w.conclusive())
      std::erase_if(p.certificates, [n](const Certificate& c) { return c.n == n; });
    p.entries.push_back(w);
  }
  bool a = p.conclusive();

  FgModule e = matlis_dual(reg);
  Submodule gi = torsion_submodule(e, i);
  Submodule gix = torsion_submodule(e, i + Ideal(r, {x}));
  bool b = gi == scaled_submodule(e, x, gi) + gix;
  out.fact("a_colon_condition", a);
  out.fact("b_divisibility", b);
  out.check("a_iff_b", a == b);
  out.profiles.emplace_back("cartier", std::move(p));
  out.seconds = since(t0);
  return out;
}

CheckOutcome is_effective_cartier(const Ideal& i, const std::vector<Vec>& covering) {
  auto t0 = Clock::now();
  const RingPtr& r = i.ring();
  if (!is_covering(*r, covering).covers) throw NotCovering("elements do not generate the unit ideal");
  CheckOutcome out;
  out.name = "effective_cartier";
  bool all = true, units = true;
  for (std::size_t j = 0; j < covering.size(); ++j) {
    Localization loc = localize(r, covering[j]);
    const FiniteRing& rf = *loc.ring;
    bool chart = rf.is_zero_ring();
    if (!chart) {
      std::vector<Vec> gens;
      for (const auto& g : i.generators()) gens.push_back(loc.project(g));
      Ideal jf(loc.ring, gens);
      SubgroupPresentation pres(jf.span());
      for (const auto& c : all_elements(pres.group())) {
        Vec g = rf.reduce(pres.include(c));
        if (!(principal_span(rf, g) == jf.span())) continue;
        if (!kernel(GroupHom(rf.additive(), rf.additive(), rf.mult_matrix(g))).is_zero()) continue;
        chart = true;
        units = units && rf.is_unit(g);
        break;
      }
    }
    out.fact("chart_" + std::to_string(j + 1), chart);
    all = all && chart;
  }
  out.fact("effective", all);
  out.check("nonzerodivisor_generators_are_units", units);
  out.notes.push_back("over a finite ring a non-zerodivisor is a unit, so a chart passes only when I generates it");
  out.seconds = since(t0);
  return out;
}

}  // namespace prokit
