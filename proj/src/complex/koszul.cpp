#include "prokit/koszul.hpp"

#include <algorithm>

namespace prokit {

std::vector<std::vector<std::size_t>> subsets(std::size_t k, std::size_t j) {
  std::vector<std::vector<std::size_t>> out;
  if (j > k) return out;
  std::vector<std::size_t> s(j);
  for (std::size_t t = 0; t < j; ++t) s[t] = t;
  for (;;) {
    out.push_back(s);
    std::size_t t = j;
    while (t > 0 && s[t - 1] == k - j + t - 1) --t;
    if (t == 0) break;
    ++s[t - 1];
    for (std::size_t u = t; u < j; ++u) s[u] = s[u - 1] + 1;
  }
  return out;
}

std::vector<Vec> power_sequence(const FiniteRing& r, const std::vector<Vec>& xs, unsigned n) {
  std::vector<Vec> out;
  for (const auto& x : xs) out.push_back(r.pow(x, n));
  return out;
}

namespace {

std::size_t subset_index(const std::vector<std::vector<std::size_t>>& list, const std::vector<std::size_t>& s) {
  return std::size_t(std::lower_bound(list.begin(), list.end(), s) - list.begin());
}

// d_j : K_j -> K_{j-1}
IntMatrix koszul_differential(const std::vector<Vec>& xs, const FgModule& m, std::size_t j) {
  const std::size_t k = xs.size();
  auto src = subsets(k, j), tgt = subsets(k, j - 1);
  std::vector<IntMatrix> acts;
  for (const auto& x : xs) acts.push_back(m.action_of(x));
  std::vector<std::vector<IntMatrix>> blocks(tgt.size(), std::vector<IntMatrix>(src.size()));
  for (std::size_t s = 0; s < src.size(); ++s)
    for (std::size_t p = 0; p < j; ++p) {
      auto face = src[s];
      face.erase(face.begin() + std::ptrdiff_t(p));
      std::size_t t = subset_index(tgt, face);
      blocks[t][s] = p % 2 == 0 ? acts[src[s][p]] : acts[src[s][p]].scaled(-1);
    }
  return block_matrix(blocks, std::vector<std::size_t>(tgt.size(), m.rank()),
                      std::vector<std::size_t>(src.size(), m.rank()));
}

// Degree-j component of K(x^m) -> K(x^n).
IntMatrix transition_matrix(const std::vector<Vec>& xs, unsigned m, unsigned n, const FgModule& mod, std::size_t j) {
  const FiniteRing& r = *mod.ring();
  auto list = subsets(xs.size(), j);
  std::vector<std::vector<IntMatrix>> blocks(list.size(), std::vector<IntMatrix>(list.size()));
  for (std::size_t s = 0; s < list.size(); ++s) {
    Vec f = r.one();
    for (auto i : list[s]) f = r.mul(f, r.pow(xs[i], m - n));
    blocks[s][s] = mod.action_of(f);
  }
  std::vector<std::size_t> ranks(list.size(), mod.rank());
  return block_matrix(blocks, ranks, ranks);
}

}  // namespace

ChainComplex koszul_complex(const std::vector<Vec>& xs, const FgModule& m) {
  const std::size_t k = xs.size();
  std::vector<FgModule> mods;
  std::vector<ModuleHom> diffs;
  for (std::size_t j = 0; j <= k; ++j) mods.push_back(direct_power(m, subsets(k, j).size()));
  for (std::size_t j = 1; j <= k; ++j) diffs.emplace_back(mods[j], mods[j - 1], koszul_differential(xs, m, j));
  return ChainComplex(m.ring(), 0, std::move(mods), std::move(diffs));
}

ComplexMap koszul_transition(const std::vector<Vec>& xs, unsigned m, unsigned n, const FgModule& mod) {
  if (m < n) throw std::invalid_argument("koszul_transition needs m >= n");
  const FiniteRing& r = *mod.ring();
  ChainComplex src = koszul_complex(power_sequence(r, xs, m), mod);
  ChainComplex tgt = koszul_complex(power_sequence(r, xs, n), mod);
  std::map<int, ModuleHom> comps;
  for (std::size_t j = 0; j <= xs.size(); ++j)
    comps[int(j)] = ModuleHom(src.module(int(j)), tgt.module(int(j)), transition_matrix(xs, m, n, mod, j));
  return ComplexMap(src, tgt, std::move(comps));
}

std::optional<Vec> pro_zero_violation(const std::vector<Vec>& xs, const FgModule& m, unsigned i, unsigned n,
                                      unsigned level) {
  if (i < 1) throw std::invalid_argument("pro_zero needs i >= 1");
  if (i > xs.size() || m.is_zero()) return std::nullopt;
  const FiniteRing& r = *m.ring();
  const std::size_t k = xs.size();
  FgModule ki = direct_power(m, subsets(k, i).size());
  Submodule boundaries = Subgroup::zero(ki.group());
  if (i < k)
    boundaries = image(GroupHom(direct_power(m, subsets(k, i + 1).size()).group(), ki.group(),
                                koszul_differential(power_sequence(r, xs, n), m, i + 1)));
  FgModule below = direct_power(m, subsets(k, i - 1).size());
  Subgroup cycles =
      kernel(GroupHom(ki.group(), below.group(), koszul_differential(power_sequence(r, xs, level), m, i)));
  IntMatrix phi = transition_matrix(xs, level, n, m, i);
  for (const auto& z : cycles.generators())
    if (!boundaries.contains(ki.group().reduce(phi * z))) return z;
  return std::nullopt;
}

Witness pro_zero_index(const std::vector<Vec>& xs, const FgModule& m, unsigned i, unsigned n, unsigned m_max) {
  Witness w;
  w.bound = m_max;
  for (unsigned mm = n; mm <= m_max; ++mm)
    if (!pro_zero_violation(xs, m, i, n, mm)) {
      w.m = mm;
      break;
    }
  return w;
}

// ---------------------------------------------------------- colon identification

namespace {

struct ColonSides {
  Submodule xn;
  QuotientModule q;  // M / x^n M
  Homology lhs;      // (x^n M : y^n) / x^n M inside M
  Homology rhs;      // H_1(y^n; M / x^n M)
  ModuleHom iota;
};

ColonSides colon_sides(const std::vector<Vec>& prefix, const Vec& y, unsigned n, const FgModule& m) {
  const FiniteRing& r = *m.ring();
  ColonSides s;
  s.xn = power_image(m, prefix, std::vector<unsigned>(prefix.size(), n));
  s.lhs = subquotient(m, colon_submodule(m, s.xn, y, n), s.xn);
  s.q = quotient_module(m, s.xn);
  s.rhs = homology(koszul_complex({r.pow(y, n)}, s.q.module), 1);
  IntMatrix mat(s.rhs.module.rank(), s.lhs.module.rank());
  for (std::size_t t = 0; t < s.lhs.module.rank(); ++t) {
    Vec e = s.lhs.module.group().zero();
    e[t] = 1;
    mat.set_column(t, s.rhs.class_of(s.q.map.project(s.lhs.representative(e))));
  }
  s.iota = ModuleHom(s.lhs.module, s.rhs.module, mat);
  return s;
}

}  // namespace

ColonIdentification colon_identification(const std::vector<Vec>& prefix, const Vec& y, unsigned n,
                                         const FgModule& m, const std::vector<unsigned>& levels) {
  if (n < 1) throw std::invalid_argument("colon_identification needs n >= 1");
  const FiniteRing& r = *m.ring();
  ColonSides base = colon_sides(prefix, y, n, m);
  ColonIdentification out{base.lhs.module, base.rhs.module, base.iota, false, {}};
  if (!base.iota.is_well_defined() || !base.iota.is_equivariant())
    throw IdentificationFailure("canonical map is not a module homomorphism");
  if (!kernel(base.iota).is_zero() || !image(base.iota).is_whole())
    throw IdentificationFailure("canonical map is not bijective: " + describe(out.lhs) + " vs " + describe(out.rhs));

  for (unsigned lvl : levels) {
    if (lvl < n) throw std::invalid_argument("square levels must be >= n");
    ColonSides top = colon_sides(prefix, y, lvl, m);
    Vec ymn = r.pow(y, lvl - n);
    for (std::size_t t = 0; t < top.lhs.module.rank(); ++t) {
      Vec e = top.lhs.module.group().zero();
      e[t] = 1;
      Vec elem = top.lhs.representative(e);
      // multiplication by y^{m-n} on colon quotients, then identification
      Vec left = base.iota.apply(base.lhs.class_of(m.act(ymn, elem)));
      // identification, then the Koszul transition on H_1(y; H_0(x; M))
      Vec cyc = top.rhs.representative(top.iota.apply(e));
      Vec lifted = top.q.map.lift_element(cyc);
      Vec right = base.rhs.class_of(base.q.map.project(m.act(ymn, lifted)));
      if (left != right)
        throw IdentificationFailure("square does not commute at m = " + std::to_string(lvl) +
                                    ", n = " + std::to_string(n));
    }
    out.square_levels.push_back(lvl);
  }
  out.verified = true;
  return out;
}

// ----------------------------------------------------------------------- Čech

ChainComplex cech_complex(const std::vector<Vec>& xs, const FgModule& m) {
  const FiniteRing& r = *m.ring();
  const std::size_t k = xs.size();
  std::vector<Vec> idem;
  for (const auto& x : xs) idem.push_back(fitting_split(r, x).e);

  // Summand for S: M / (1 - e_S) M.
  std::vector<std::vector<QuotientModule>> parts(k + 1);
  std::vector<std::vector<std::vector<std::size_t>>> lists(k + 1);
  std::vector<FgModule> cochains(k + 1);
  for (std::size_t p = 0; p <= k; ++p) {
    lists[p] = subsets(k, p);
    std::vector<FgModule> mods;
    for (const auto& s : lists[p]) {
      Vec e = r.one();
      for (auto i : s) e = r.mul(e, idem[i]);
      parts[p].push_back(
          quotient_module(m, Subgroup::span_columns(m.group(), m.action_of(r.sub(r.one(), e)))));
      mods.push_back(parts[p].back().module);
    }
    cochains[p] = direct_sum(mods);
  }

  auto ranks = [&](std::size_t p) {
    std::vector<std::size_t> out;
    for (const auto& q : parts[p]) out.push_back(q.module.rank());
    return out;
  };
  // delta^p : C^p -> C^{p+1}
  std::vector<ModuleHom> delta;
  for (std::size_t p = 0; p < k; ++p) {
    std::vector<std::vector<IntMatrix>> blocks(lists[p + 1].size(), std::vector<IntMatrix>(lists[p].size()));
    for (std::size_t t = 0; t < lists[p + 1].size(); ++t)
      for (std::size_t q = 0; q <= p; ++q) {
        auto face = lists[p + 1][t];
        face.erase(face.begin() + std::ptrdiff_t(q));
        std::size_t s = subset_index(lists[p], face);
        IntMatrix b = parts[p + 1][t].map.projection * parts[p][s].map.lift;
        blocks[t][s] = q % 2 == 0 ? b : b.scaled(-1);
      }
    delta.emplace_back(cochains[p], cochains[p + 1], block_matrix(blocks, ranks(p + 1), ranks(p)));
  }

  std::vector<FgModule> mods;
  std::vector<ModuleHom> diffs;
  for (std::size_t idx = 0; idx <= k; ++idx) mods.push_back(cochains[k - idx]);
  for (std::size_t idx = 0; idx < k; ++idx) diffs.push_back(delta[k - idx - 1]);
  return ChainComplex(m.ring(), -int(k), std::move(mods), std::move(diffs));
}

FgModule cech_cohomology(const std::vector<Vec>& xs, const FgModule& m, unsigned i) {
  return homology(cech_complex(xs, m), -int(i)).module;
}

// ------------------------------------------------------------ inverse systems

InverseSystem::InverseSystem(std::vector<FgModule> modules, std::vector<ModuleHom> down)
    : modules_(std::move(modules)), down_(std::move(down)) {
  if (modules_.empty()) throw std::invalid_argument("inverse system needs at least one module");
  if (down_.size() + 1 != modules_.size()) throw std::invalid_argument("inverse system needs N-1 transitions");
  for (std::size_t n = 0; n < down_.size(); ++n)
    if (down_[n].source.rank() != modules_[n + 1].rank() || down_[n].target.rank() != modules_[n].rank())
      throw DimensionMismatch("transition " + std::to_string(n + 2) + " -> " + std::to_string(n + 1));
}

ModuleHom InverseSystem::transition(unsigned m, unsigned n) const {
  if (m < n || n < 1 || m > n_max()) throw std::out_of_range("transition indices");
  ModuleHom t = ModuleHom::identity(module(n));
  for (unsigned j = n + 1; j <= m; ++j) t = t.compose_after(down_[j - 2]);
  return t;
}

StableLimit stable_limit(const InverseSystem& s, unsigned window) {
  const unsigned big = s.n_max();
  std::vector<std::optional<Submodule>> stable(big + 1);
  for (unsigned n = 1; n <= big; ++n) {
    std::vector<Submodule> images;
    ModuleHom t = ModuleHom::identity(s.module(n));
    images.push_back(image(t));
    for (unsigned m = n + 1; m <= big; ++m) {
      t = t.compose_after(s.transition(m, m - 1));
      images.push_back(image(t));
    }
    std::size_t from = images.size() - 1;
    while (from > 0 && images[from - 1] == images.back()) --from;
    if (images.size() - 1 - from >= window) stable[n] = images.back();
  }
  unsigned last = 0;
  while (last + 1 <= big && stable[last + 1]) ++last;
  if (last == 0) throw NotStabilized("no eventual image stabilized within " + std::to_string(big) + " steps");
  unsigned start = last;
  while (start > 1 && stable[start - 1]->order() == stable[last]->order()) --start;
  if (last - start + 1 < window)
    throw NotStabilized("stabilized image orders still changing at index " + std::to_string(last));
  for (unsigned n = start; n < last; ++n) {
    ModuleHom t = s.transition(n + 1, n);
    std::vector<Vec> imgs;
    for (const auto& g : stable[n + 1]->generators()) imgs.push_back(t.apply(g));
    if (!(Subgroup::span(s.module(n).group(), imgs) == *stable[n]))
      throw std::logic_error("Mittag-Leffler surjectivity fails at index " + std::to_string(n));
  }
  return {submodule_as_module(s.module(start), *stable[start]).module, start, *stable[start]};
}

InverseSystem koszul_homology_system(const std::vector<Vec>& xs, const FgModule& m, unsigned i, unsigned n_max) {
  const FiniteRing& r = *m.ring();
  std::vector<Homology> hs;
  for (unsigned n = 1; n <= n_max; ++n) hs.push_back(homology(koszul_complex(power_sequence(r, xs, n), m), int(i)));
  std::vector<FgModule> mods;
  std::vector<ModuleHom> down;
  for (const auto& h : hs) mods.push_back(h.module);
  for (unsigned n = 1; n < n_max; ++n) {
    FgModule ki = hs[n].cycles.ambient;
    ModuleHom phi(ki, hs[n - 1].cycles.ambient, transition_matrix(xs, n + 1, n, m, i));
    down.push_back(induced_map(phi, hs[n], hs[n - 1]));
  }
  return InverseSystem(std::move(mods), std::move(down));
}

FgModule cech_homology(const std::vector<Vec>& xs, const FgModule& m, unsigned i) {
  if (i > xs.size()) return FgModule::zero(m.ring());
  unsigned big = std::max(4u, ceil_log2(m.order()) + 3);
  for (int attempt = 0;; ++attempt) {
    try {
      return stable_limit(koszul_homology_system(xs, m, i, big)).module;
    } catch (const NotStabilized&) {
      if (attempt == 3) throw;
      big *= 2;
    }
  }
}

// ------------------------------------------------------------- Tor comparison

TorComparison cech_tor_compare(const FgModule& m, const FgModule& n, const std::vector<Vec>& xs, unsigned i,
                               unsigned resolution_length) {
  if (resolution_length <= i) throw std::invalid_argument("resolution length must exceed the degree");
  const RingPtr& r = m.ring();
  ChainComplex x = tensor_resolution(free_resolution(n, resolution_length), m);
  const int top = x.highest();
  const unsigned window = 2;
  const unsigned cap = 2 * (ceil_log2(m.order()) + 2) + window;

  auto powers = [&](unsigned e) {
    std::vector<Submodule> out;
    for (int j = 0; j <= top; ++j)
      out.push_back(power_image(x.module(j), xs, std::vector<unsigned>(xs.size(), e)));
    return out;
  };
  std::vector<std::vector<Submodule>> chain;
  for (unsigned e = 1; e <= cap + window; ++e) chain.push_back(powers(e));
  unsigned stable_at = 0;
  for (unsigned e = 1; e <= cap && stable_at == 0; ++e) {
    bool ok = true;
    for (unsigned w = 1; ok && w <= window; ++w) ok = chain[e - 1] == chain[e - 1 + w];
    if (ok) stable_at = e;
  }
  if (stable_at == 0) throw NotStabilized("quotients by powers did not stabilize");

  const auto& sub = chain[stable_at - 1];
  std::vector<QuotientModule> qs;
  std::vector<FgModule> mods;
  for (int j = 0; j <= top; ++j) {
    qs.push_back(quotient_module(x.module(j), sub[std::size_t(j)]));
    mods.push_back(qs.back().module);
  }
  std::vector<ModuleHom> diffs;
  for (int j = 1; j <= top; ++j)
    diffs.emplace_back(mods[std::size_t(j)], mods[std::size_t(j - 1)],
                       qs[std::size_t(j - 1)].map.projection * x.differential(j).matrix *
                           qs[std::size_t(j)].map.lift);
  ChainComplex limit(r, 0, std::move(mods), std::move(diffs));

  TorComparison out;
  out.lhs = homology(limit, int(i)).module;
  out.rhs = tor(adic_completion(m, Ideal(r, xs)).module, n, i);
  out.isomorphic = same_invariants(out.lhs, out.rhs);
  return out;
}

}  // namespace prokit
