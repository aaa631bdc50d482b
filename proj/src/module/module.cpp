#include <sstream>

#include "prokit/module.hpp"

namespace prokit {

// ------------------------------------------------------------------ FgModule

FgModule::FgModule(RingPtr ring, FinAbGroup group, std::vector<IntMatrix> actions) {
  *this = unchecked(std::move(ring), std::move(group), std::move(actions));
  auto failures = check();
  if (!failures.empty()) {
    std::string msg = "module laws fail:";
    for (const auto& f : failures) msg += "\n  " + f;
    throw ModuleAxiomViolation(msg);
  }
}

FgModule FgModule::unchecked(RingPtr ring, FinAbGroup group, std::vector<IntMatrix> actions) {
  FgModule m;
  for (auto& a : actions) a = reduce_rows(std::move(a), group.orders());
  m.rep_ = std::make_shared<const Rep>(Rep{std::move(ring), std::move(group), std::move(actions)});
  return m;
}

FgModule FgModule::zero(RingPtr ring) {
  std::vector<IntMatrix> acts(ring->rank(), IntMatrix(0, 0));
  return unchecked(std::move(ring), FinAbGroup(), std::move(acts));
}

FgModule FgModule::free(RingPtr ring, std::size_t rank) {
  std::vector<IntMatrix> acts;
  const std::size_t r = ring->rank();
  for (std::size_t i = 0; i < r; ++i) {
    IntMatrix a(r * rank, r * rank);
    for (std::size_t b = 0; b < rank; ++b)
      for (std::size_t s = 0; s < r; ++s)
        for (std::size_t t = 0; t < r; ++t) a(b * r + s, b * r + t) = ring->mult(i)(s, t);
    acts.push_back(std::move(a));
  }
  FinAbGroup g = FinAbGroup::power(ring->additive(), rank);
  return unchecked(std::move(ring), std::move(g), std::move(acts));
}

IntMatrix FgModule::action_of(const Vec& a) const {
  const std::size_t n = rank();
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    const IntMatrix& m = rep_->actions[i];
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t)
        if (m(s, t) != 0) out(s, t) += a[i] * m(s, t);
  }
  return reduce_rows(std::move(out), group().orders());
}

std::vector<std::string> FgModule::check() const {
  std::vector<std::string> out;
  const FiniteRing& r = *ring();
  const std::size_t k = r.rank();
  const std::size_t n = rank();
  if (actions().size() != k) {
    out.push_back("need one action matrix per ring basis element");
    return out;
  }
  for (std::size_t i = 0; i < k; ++i)
    if (action(i).rows() != n || action(i).cols() != n) out.push_back("action " + std::to_string(i) + " has wrong shape");
  if (!out.empty()) return out;
  const Vec& ord = group().orders();
  for (std::size_t i = 0; i < k; ++i) {
    if (!GroupHom(group(), group(), action(i)).is_well_defined())
      out.push_back("action " + std::to_string(i) + " is not well defined on the group");
    if (!reduce_rows(action(i).scaled(r.additive().orders()[i]), ord).is_zero())
      out.push_back("additive order of ring basis element " + std::to_string(i) + " does not kill its action");
  }
  if (action_of(r.one()) != IntMatrix::identity(n)) out.push_back("unit does not act as identity");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      IntMatrix lhs = reduce_rows(action(i) * action(j), ord);
      IntMatrix rhs = action_of(r.mult(i).column(j));
      if (lhs != rhs)
        out.push_back("action(" + std::to_string(i) + ") o action(" + std::to_string(j) +
                      ") differs from the action of their product");
    }
  return out;
}

// ----------------------------------------------------------------- ModuleHom

ModuleHom::ModuleHom(FgModule s, FgModule t, IntMatrix m)
    : source(std::move(s)), target(std::move(t)), matrix(std::move(m)) {
  if (matrix.rows() != target.rank() || matrix.cols() != source.rank())
    throw DimensionMismatch("module map matrix is " + std::to_string(matrix.rows()) + "x" +
                            std::to_string(matrix.cols()) + ", expected " + std::to_string(target.rank()) +
                            "x" + std::to_string(source.rank()));
  matrix = reduce_rows(std::move(matrix), target.group().orders());
}

ModuleHom ModuleHom::identity(const FgModule& m) { return ModuleHom(m, m, IntMatrix::identity(m.rank())); }

ModuleHom ModuleHom::zero(const FgModule& s, const FgModule& t) {
  return ModuleHom(s, t, IntMatrix(t.rank(), s.rank()));
}

bool ModuleHom::is_equivariant() const {
  const auto& ord = target.group().orders();
  for (std::size_t k = 0; k < source.actions().size(); ++k)
    if (reduce_rows(target.action(k) * matrix, ord) != reduce_rows(matrix * source.action(k), ord)) return false;
  return true;
}

ModuleHom ModuleHom::compose_after(const ModuleHom& first) const {
  return ModuleHom(first.source, target, matrix * first.matrix);
}

IntMatrix block_matrix(const std::vector<std::vector<IntMatrix>>& blocks, const std::vector<std::size_t>& row_ranks,
                       const std::vector<std::size_t>& col_ranks) {
  std::size_t rows = 0, cols = 0;
  for (auto r : row_ranks) rows += r;
  for (auto c : col_ranks) cols += c;
  IntMatrix out(rows, cols);
  std::size_t ro = 0;
  for (std::size_t i = 0; i < row_ranks.size(); ++i) {
    std::size_t co = 0;
    for (std::size_t j = 0; j < col_ranks.size(); ++j) {
      const IntMatrix& b = blocks[i][j];
      if (b.rows() != 0 || b.cols() != 0) {
        if (b.rows() != row_ranks[i] || b.cols() != col_ranks[j]) throw DimensionMismatch("block shape");
        for (std::size_t s = 0; s < b.rows(); ++s)
          for (std::size_t t = 0; t < b.cols(); ++t) out(ro + s, co + t) = b(s, t);
      }
      co += col_ranks[j];
    }
    ro += row_ranks[i];
  }
  return out;
}

FgModule direct_sum(const std::vector<FgModule>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct sum of no modules");
  RingPtr ring = parts[0].ring();
  Vec orders;
  std::vector<std::size_t> ranks;
  for (const auto& p : parts) {
    orders.insert(orders.end(), p.group().orders().begin(), p.group().orders().end());
    ranks.push_back(p.rank());
  }
  std::vector<IntMatrix> acts;
  for (std::size_t k = 0; k < ring->rank(); ++k) {
    std::vector<std::vector<IntMatrix>> blocks(parts.size(), std::vector<IntMatrix>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) blocks[i][i] = parts[i].action(k);
    acts.push_back(block_matrix(blocks, ranks, ranks));
  }
  return FgModule::unchecked(ring, FinAbGroup(orders), std::move(acts));
}

FgModule direct_power(const FgModule& m, std::size_t s) {
  if (s == 0) return FgModule::zero(m.ring());
  return direct_sum(std::vector<FgModule>(s, m));
}

// ---------------------------------------------------------------- submodules

Submodule generated_submodule(const FgModule& m, const std::vector<Vec>& gens) {
  std::vector<Vec> cols;
  for (const auto& g : gens)
    for (const auto& a : m.actions()) cols.push_back(a * g);
  return Subgroup::span(m.group(), cols);
}

namespace {

void append_columns(std::vector<Vec>& cols, const IntMatrix& a) {
  for (std::size_t j = 0; j < a.cols(); ++j) cols.push_back(a.column(j));
}

}  // namespace

Submodule power_image(const FgModule& m, const std::vector<Vec>& xs, const std::vector<unsigned>& exps) {
  if (xs.size() != exps.size()) throw DimensionMismatch("power_image: one exponent per element");
  const FiniteRing& r = *m.ring();
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < xs.size(); ++j) append_columns(cols, m.action_of(r.pow(xs[j], exps[j])));
  return Subgroup::span(m.group(), cols);
}

Submodule ideal_power_image(const FgModule& m, const Ideal& i, unsigned n) {
  std::vector<Vec> cols;
  for (const auto& g : i.power(n).generators()) append_columns(cols, m.action_of(g));
  return Subgroup::span(m.group(), cols);
}

Submodule scaled_submodule(const FgModule& m, const Vec& a, const Submodule& n) {
  IntMatrix act = m.action_of(a);
  std::vector<Vec> cols;
  for (const auto& g : n.generators()) cols.push_back(act * g);
  return Subgroup::span(m.group(), cols);
}

Submodule colon_submodule(const FgModule& m, const Submodule& n, const Vec& x, unsigned e) {
  IntMatrix act = m.action_of(m.ring()->pow(x, e));
  return pullback(GroupHom(m.group(), m.group(), act), n);
}

Submodule annihilator_submodule(const FgModule& m, const Vec& a) {
  return kernel(GroupHom(m.group(), m.group(), m.action_of(a)));
}

Submodule torsion_submodule(const FgModule& m, const Ideal& i) {
  return annihilator_submodule(m, ideal_stabilization(i).e);
}

bool is_divisible(const FgModule& q, const Vec& x) {
  return image(GroupHom(q.group(), q.group(), q.action_of(x))).is_whole();
}

ModuleHom QuotientModule::projection() const { return ModuleHom(source, module, map.projection); }

QuotientModule quotient_module(const FgModule& m, const Submodule& n) {
  Cokernel ck = quotient_group(n);
  std::vector<IntMatrix> acts;
  for (const auto& a : m.actions()) acts.push_back(ck.projection * a * ck.lift);
  FgModule q = FgModule::unchecked(m.ring(), ck.group, std::move(acts));
  return {m, q, ck};
}

ModuleHom SubmoduleModule::inclusion() const { return ModuleHom(module, ambient, presentation.inclusion()); }

SubmoduleModule submodule_as_module(const FgModule& m, const Submodule& n) {
  SubgroupPresentation sp(n);
  const std::size_t s = sp.group().rank();
  std::vector<IntMatrix> acts;
  for (const auto& a : m.actions()) {
    IntMatrix b(s, s);
    IntMatrix img = a * sp.inclusion();
    for (std::size_t t = 0; t < s; ++t) b.set_column(t, sp.coordinates(img.column(t)));
    acts.push_back(std::move(b));
  }
  FgModule sub = FgModule::unchecked(m.ring(), sp.group(), std::move(acts));
  return {m, sub, sp};
}

Submodule kernel(const ModuleHom& f) { return kernel(f.as_group_hom()); }
Submodule image(const ModuleHom& f) { return image(f.as_group_hom()); }

FgModule module_from_presentation(const RingPtr& r, std::size_t s, const std::vector<std::vector<Vec>>& relations) {
  FgModule f = FgModule::free(r, s);
  std::vector<Vec> rels;
  for (const auto& row : relations) {
    if (row.size() != s) throw DimensionMismatch("relation has wrong number of entries");
    Vec v;
    for (const auto& e : row) {
      if (e.size() != r->rank()) throw DimensionMismatch("relation entry is not a ring element");
      Vec red = r->reduce(e);
      v.insert(v.end(), red.begin(), red.end());
    }
    rels.push_back(std::move(v));
  }
  return quotient_module(f, generated_submodule(f, rels)).module;
}

// ------------------------------------------------------------------ functors

FgModule matlis_dual(const FgModule& m) {
  const Vec& d = m.group().orders();
  const std::size_t n = m.rank();
  std::vector<IntMatrix> acts;
  for (const auto& a : m.actions()) {
    IntMatrix b(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Int t = a(k, j) * d[j];
        if (mpz_divisible_p(t.get_mpz_t(), d[k].get_mpz_t()) == 0)
          throw std::logic_error("matlis_dual: action not well defined");
        b(j, k) = t / d[k];
      }
    acts.push_back(std::move(b));
  }
  return FgModule::unchecked(m.ring(), m.group(), std::move(acts));
}

ModuleHom double_dual_evaluation(const FgModule& m) {
  FgModule dd = matlis_dual(matlis_dual(m));
  return ModuleHom(m, dd, IntMatrix::identity(m.rank()));
}

IntMatrix HomModule::to_matrix(const Vec& coords) const {
  Vec h = inside.include(coords);
  IntMatrix phi(target.rank(), source.rank());
  for (std::size_t s = 0; s < slots.size(); ++s) {
    auto [i, j] = slots[s];
    phi(i, j) = h[s] * (target.group().orders()[i] / hom_z.group().orders()[s]);
  }
  return reduce_rows(std::move(phi), target.group().orders());
}

namespace {

// Hom_Z coordinates of a matrix, or nothing when it is not a homomorphism.
std::optional<Vec> hom_z_coords(const IntMatrix& phi, const FgModule& src, const FgModule& tgt,
                                const std::vector<std::pair<std::size_t, std::size_t>>& slots) {
  std::vector<std::vector<long>> slot_of(tgt.rank(), std::vector<long>(src.rank(), -1));
  for (std::size_t s = 0; s < slots.size(); ++s) slot_of[slots[s].first][slots[s].second] = long(s);
  Vec out(slots.size(), 0);
  for (std::size_t i = 0; i < tgt.rank(); ++i) {
    const Int& b = tgt.group().orders()[i];
    for (std::size_t j = 0; j < src.rank(); ++j) {
      Int val = mod(phi(i, j), b);
      long s = slot_of[i][j];
      if (s < 0) {
        if (val != 0) return std::nullopt;
        continue;
      }
      Int g = gcd(src.group().orders()[j], b);
      Int q = b / g;
      if (mpz_divisible_p(val.get_mpz_t(), q.get_mpz_t()) == 0) return std::nullopt;
      out[std::size_t(s)] = val / q;
    }
  }
  return out;
}

}  // namespace

std::optional<Vec> HomModule::from_matrix(const IntMatrix& phi) const {
  auto c = hom_z_coords(phi, source, target, slots);
  if (!c || !inside.subgroup().contains(*c)) return std::nullopt;
  return inside.coordinates(*c);
}

HomModule hom_module(const FgModule& m, const FgModule& n) {
  HomModule out;
  out.source = m;
  out.target = n;
  const Vec& a = m.group().orders();
  const Vec& b = n.group().orders();
  Vec orders;
  for (std::size_t i = 0; i < n.rank(); ++i)
    for (std::size_t j = 0; j < m.rank(); ++j) {
      Int g = gcd(a[j], b[i]);
      if (g < 2) continue;
      out.slots.emplace_back(i, j);
      orders.push_back(g);
    }
  FinAbGroup hz(orders);
  const std::size_t h = out.slots.size();
  auto generator_matrix = [&](std::size_t s) {
    IntMatrix phi(n.rank(), m.rank());
    auto [i, j] = out.slots[s];
    phi(i, j) = b[i] / orders[s];
    return phi;
  };

  // Action through the source: phi -> phi o A_k.
  std::vector<IntMatrix> acts;
  for (std::size_t k = 0; k < m.actions().size(); ++k) {
    IntMatrix act(h, h);
    for (std::size_t s = 0; s < h; ++s) {
      auto c = hom_z_coords(generator_matrix(s) * m.action(k), m, n, out.slots);
      if (!c) throw std::logic_error("hom_module: composite is not a homomorphism");
      act.set_column(s, *c);
    }
    acts.push_back(std::move(act));
  }
  out.hom_z = FgModule::unchecked(m.ring(), hz, std::move(acts));

  // Equivariance defect phi -> (B_k phi - phi A_k)_k in N^(rank M * K).
  const std::size_t kk = m.actions().size();
  FinAbGroup defect_group = FinAbGroup::power(n.group(), m.rank() * kk);
  IntMatrix defect(defect_group.rank(), h);
  for (std::size_t s = 0; s < h; ++s) {
    IntMatrix phi = generator_matrix(s);
    std::size_t row = 0;
    for (std::size_t k = 0; k < kk; ++k) {
      IntMatrix d = n.action(k) * phi - phi * m.action(k);
      for (std::size_t j = 0; j < m.rank(); ++j)
        for (std::size_t i = 0; i < n.rank(); ++i) defect(row++, s) = d(i, j);
    }
  }
  Subgroup equivariant = kernel(GroupHom(hz, defect_group, defect));
  SubmoduleModule sm = submodule_as_module(out.hom_z, equivariant);
  out.module = sm.module;
  out.inside = sm.presentation;
  return out;
}

Vec TensorModule::pure(const Vec& a, const Vec& b) const {
  Vec t(slots.size(), 0);
  for (std::size_t s = 0; s < slots.size(); ++s) t[s] = a[slots[s].first] * b[slots[s].second];
  return map.project(t);
}

TensorModule tensor_module(const FgModule& m, const FgModule& n) {
  TensorModule out;
  out.left = m;
  out.right = n;
  const Vec& a = m.group().orders();
  const Vec& b = n.group().orders();
  Vec orders;
  std::vector<std::vector<long>> slot_of(m.rank(), std::vector<long>(n.rank(), -1));
  for (std::size_t j = 0; j < m.rank(); ++j)
    for (std::size_t i = 0; i < n.rank(); ++i) {
      Int g = gcd(a[j], b[i]);
      if (g < 2) continue;
      slot_of[j][i] = long(out.slots.size());
      out.slots.emplace_back(j, i);
      orders.push_back(g);
    }
  FinAbGroup tz(orders);
  const std::size_t t = out.slots.size();
  const std::size_t kk = m.actions().size();
  std::vector<IntMatrix> left_acts, right_acts;
  for (std::size_t k = 0; k < kk; ++k) {
    IntMatrix l(t, t), r(t, t);
    for (std::size_t s = 0; s < t; ++s) {
      auto [j, i] = out.slots[s];
      for (std::size_t l2 = 0; l2 < m.rank(); ++l2)
        if (slot_of[l2][i] >= 0) l(std::size_t(slot_of[l2][i]), s) += m.action(k)(l2, j);
      for (std::size_t i2 = 0; i2 < n.rank(); ++i2)
        if (slot_of[j][i2] >= 0) r(std::size_t(slot_of[j][i2]), s) += n.action(k)(i2, i);
    }
    left_acts.push_back(reduce_rows(std::move(l), orders));
    right_acts.push_back(reduce_rows(std::move(r), orders));
  }
  std::vector<Vec> rels;
  for (std::size_t k = 0; k < kk; ++k) {
    IntMatrix d = left_acts[k] - right_acts[k];
    for (std::size_t s = 0; s < t; ++s) rels.push_back(d.column(s));
  }
  FgModule tensor_z = FgModule::unchecked(m.ring(), tz, left_acts);
  QuotientModule q = quotient_module(tensor_z, Subgroup::span(tz, rels));
  out.module = q.module;
  out.map = q.map;
  return out;
}

Completion adic_completion(const FgModule& m, const Ideal& i) {
  Stabilization st = ideal_stabilization(i);
  Submodule em = Subgroup::span_columns(m.group(), m.action_of(st.e));
  QuotientModule q = quotient_module(m, em);
  return {m, q.module, q.map, st.c, st.e};
}

LocalizedModule localize_module(const FgModule& m, const Localization& loc) {
  const FiniteRing& r = *m.ring();
  Submodule kill = Subgroup::span_columns(m.group(), m.action_of(r.sub(r.one(), loc.idempotent)));
  Cokernel ck = quotient_group(kill);
  std::vector<IntMatrix> acts;
  for (std::size_t t = 0; t < loc.ring->rank(); ++t) {
    Vec lt = r.reduce(loc.map.lift.column(t));
    acts.push_back(ck.projection * m.action_of(lt) * ck.lift);
  }
  return {m, FgModule::unchecked(loc.ring, ck.group, std::move(acts)), ck};
}

std::vector<Vec> module_fingerprint(const FgModule& m) {
  std::vector<Vec> fp{m.group().invariant_factors()};
  for (const auto& a : m.actions()) {
    GroupHom h(m.group(), m.group(), a);
    fp.push_back(SubgroupPresentation(kernel(h)).group().invariant_factors());
    fp.push_back(SubgroupPresentation(image(h)).group().invariant_factors());
  }
  return fp;
}

bool same_invariants(const FgModule& a, const FgModule& b) {
  if (a.ring() != b.ring() && a.ring()->data().orders != b.ring()->data().orders) return false;
  return module_fingerprint(a) == module_fingerprint(b);
}

std::string describe(const FgModule& m) {
  std::ostringstream os;
  os << "order " << m.order().get_str() << ", invariants " << to_string(m.group().invariant_factors());
  return os.str();
}

}  // namespace prokit
