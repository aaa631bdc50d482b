#include "prokit/complex.hpp"

namespace prokit {

// -------------------------------------------------------------- ChainComplex

ChainComplex::ChainComplex(RingPtr ring, int lowest, std::vector<FgModule> modules,
                           std::vector<ModuleHom> differentials)
    : ring_(std::move(ring)), lowest_(lowest), modules_(std::move(modules)), diffs_(std::move(differentials)) {
  std::size_t expect = modules_.empty() ? 0 : modules_.size() - 1;
  if (diffs_.size() != expect) throw ComplexError("complex needs one differential between adjacent modules");
  for (std::size_t k = 0; k < diffs_.size(); ++k) {
    if (diffs_[k].source.rank() != modules_[k + 1].rank() || diffs_[k].target.rank() != modules_[k].rank())
      throw ComplexError("differential out of degree " + std::to_string(lowest_ + int(k) + 1) + " has wrong shape");
  }
  for (std::size_t k = 0; k + 1 < diffs_.size(); ++k) {
    IntMatrix dd = reduce_rows(diffs_[k].matrix * diffs_[k + 1].matrix, modules_[k].group().orders());
    if (!dd.is_zero())
      throw ComplexError("d o d is nonzero out of degree " + std::to_string(lowest_ + int(k) + 2));
  }
}

FgModule ChainComplex::module(int i) const {
  if (i < lowest_ || i > highest()) return FgModule::zero(ring_);
  return modules_[std::size_t(i - lowest_)];
}

ModuleHom ChainComplex::differential(int i) const {
  if (i > lowest_ && i <= highest()) return diffs_[std::size_t(i - lowest_ - 1)];
  return ModuleHom::zero(module(i), module(i - 1));
}

// ---------------------------------------------------------------- ComplexMap

ComplexMap::ComplexMap(ChainComplex source, ChainComplex target, std::map<int, ModuleHom> components)
    : source_(std::move(source)), target_(std::move(target)), comps_(std::move(components)) {
  int lo = std::min(source_.lowest(), target_.lowest());
  int hi = std::max(source_.highest(), target_.highest());
  for (int i = lo; i <= hi + 1; ++i) {
    ModuleHom gi = component(i);
    ModuleHom gi1 = component(i - 1);
    if (gi.source.rank() != source_.module(i).rank() || gi.target.rank() != target_.module(i).rank())
      throw ComplexError("chain map component in degree " + std::to_string(i) + " has wrong shape");
    IntMatrix left = gi1.matrix * source_.differential(i).matrix;
    IntMatrix right = target_.differential(i).matrix * gi.matrix;
    const auto& ord = target_.module(i - 1).group().orders();
    if (reduce_rows(left, ord) != reduce_rows(right, ord))
      throw ComplexError("chain map does not commute with the differential out of degree " + std::to_string(i));
  }
}

ModuleHom ComplexMap::component(int i) const {
  auto it = comps_.find(i);
  if (it != comps_.end()) return it->second;
  return ModuleHom::zero(source_.module(i), target_.module(i));
}

ComplexMap ComplexMap::compose_after(const ComplexMap& first) const {
  std::map<int, ModuleHom> c;
  int lo = std::min(first.source().lowest(), target_.lowest());
  int hi = std::max(first.source().highest(), target_.highest());
  for (int i = lo; i <= hi; ++i) c[i] = component(i).compose_after(first.component(i));
  return ComplexMap(first.source(), target_, std::move(c));
}

// ------------------------------------------------------------------ homology

Vec Homology::class_of(const Vec& cycle) const {
  return classes.map.project(cycles.presentation.coordinates(cycle));
}

Vec Homology::representative(const Vec& cls) const {
  return cycles.presentation.include(cycles.module.group().reduce(classes.map.lift_element(cls)));
}

Homology homology(const ChainComplex& c, int i) {
  return subquotient(c.module(i), kernel(c.differential(i)), image(c.differential(i + 1)));
}

Homology subquotient(const FgModule& x, const Submodule& z, const Submodule& b) {
  SubmoduleModule zm = submodule_as_module(x, z);
  std::vector<Vec> bcoords;
  for (const auto& g : b.generators()) bcoords.push_back(zm.presentation.coordinates(g));
  QuotientModule q = quotient_module(zm.module, Subgroup::span(zm.module.group(), bcoords));
  return {q.module, zm, b, q};
}

ModuleHom induced_map(const ModuleHom& f, const Homology& src, const Homology& tgt) {
  const std::size_t s = src.module.rank();
  IntMatrix m(tgt.module.rank(), s);
  for (std::size_t t = 0; t < s; ++t) {
    Vec e = src.module.group().zero();
    e[t] = 1;
    m.set_column(t, tgt.class_of(f.apply(src.representative(e))));
  }
  return ModuleHom(src.module, tgt.module, m);
}

// ---------------------------------------------------------------- resolutions

std::vector<Vec> greedy_generators(const FgModule& m, const Submodule& n) {
  std::vector<Vec> gens;
  Submodule cur = Subgroup::zero(m.group());
  for (const auto& g : n.generators()) {
    if (cur.contains(g)) continue;
    gens.push_back(g);
    cur = cur + generated_submodule(m, {g});
    if (cur == n) break;
  }
  return gens;
}

ModuleHom free_cover(const FgModule& m, const std::vector<Vec>& gens) {
  const RingPtr& r = m.ring();
  FgModule f = FgModule::free(r, gens.size());
  IntMatrix mat(m.rank(), f.rank());
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (std::size_t b = 0; b < r->rank(); ++b) mat.set_column(k * r->rank() + b, m.action(b) * gens[k]);
  return ModuleHom(f, m, mat);
}

namespace {

std::vector<Vec> split_blocks(const Vec& v, std::size_t block) {
  std::vector<Vec> out;
  for (std::size_t o = 0; o < v.size(); o += block)
    out.emplace_back(v.begin() + std::ptrdiff_t(o), v.begin() + std::ptrdiff_t(o + block));
  return out;
}

}  // namespace

FreeResolution free_resolution(const FgModule& m, unsigned length) {
  FreeResolution out;
  const RingPtr& r = m.ring();
  std::vector<FgModule> mods;
  std::vector<ModuleHom> diffs;
  ModuleHom prev = free_cover(m, greedy_generators(m, Subgroup::whole(m.group())));
  out.augmentation = prev;
  mods.push_back(prev.source);
  out.ranks.push_back(prev.source.rank() / std::max<std::size_t>(r->rank(), 1));
  out.ring_entries.emplace_back();
  for (unsigned j = 1; j <= length; ++j) {
    const FgModule& f = prev.source;
    std::vector<Vec> gens = greedy_generators(f, kernel(prev));
    ModuleHom d = free_cover(f, gens);
    std::size_t s_prev = out.ranks.back();
    std::vector<std::vector<Vec>> entries(s_prev, std::vector<Vec>(gens.size()));
    for (std::size_t k = 0; k < gens.size(); ++k) {
      auto blocks = split_blocks(gens[k], r->rank());
      for (std::size_t l = 0; l < s_prev; ++l) entries[l][k] = blocks[l];
    }
    out.ring_entries.push_back(std::move(entries));
    out.ranks.push_back(gens.size());
    mods.push_back(d.source);
    diffs.push_back(d);
    prev = d;
  }
  out.complex = ChainComplex(r, 0, std::move(mods), std::move(diffs));
  return out;
}

ChainComplex tensor_resolution(const FreeResolution& f, const FgModule& n) {
  const std::size_t len = f.ranks.size();
  std::vector<FgModule> mods;
  for (auto s : f.ranks) mods.push_back(direct_power(n, s));
  std::vector<ModuleHom> diffs;
  for (std::size_t j = 1; j < len; ++j) {
    const auto& a = f.ring_entries[j];
    std::vector<std::vector<IntMatrix>> blocks(f.ranks[j - 1], std::vector<IntMatrix>(f.ranks[j]));
    for (std::size_t l = 0; l < f.ranks[j - 1]; ++l)
      for (std::size_t k = 0; k < f.ranks[j]; ++k) blocks[l][k] = n.action_of(a[l][k]);
    IntMatrix m = block_matrix(blocks, std::vector<std::size_t>(f.ranks[j - 1], n.rank()),
                               std::vector<std::size_t>(f.ranks[j], n.rank()));
    diffs.emplace_back(mods[j], mods[j - 1], m);
  }
  return ChainComplex(n.ring(), 0, std::move(mods), std::move(diffs));
}

ChainComplex hom_resolution(const FreeResolution& f, const FgModule& n) {
  const std::size_t len = f.ranks.size();
  const int lowest = -int(len) + 1;
  std::vector<FgModule> mods;  // index k <-> cochain degree len-1-k
  for (std::size_t k = 0; k < len; ++k) mods.push_back(direct_power(n, f.ranks[len - 1 - k]));
  std::vector<ModuleHom> diffs;
  for (std::size_t k = 0; k + 1 < len; ++k) {
    // from cochain degree j = len-2-k to j+1
    std::size_t j = len - 2 - k;
    const auto& a = f.ring_entries[j + 1];
    std::vector<std::vector<IntMatrix>> blocks(f.ranks[j + 1], std::vector<IntMatrix>(f.ranks[j]));
    for (std::size_t kk = 0; kk < f.ranks[j + 1]; ++kk)
      for (std::size_t l = 0; l < f.ranks[j]; ++l) blocks[kk][l] = n.action_of(a[l][kk]);
    IntMatrix m = block_matrix(blocks, std::vector<std::size_t>(f.ranks[j + 1], n.rank()),
                               std::vector<std::size_t>(f.ranks[j], n.rank()));
    diffs.emplace_back(mods[k + 1], mods[k], m);
  }
  return ChainComplex(n.ring(), lowest, std::move(mods), std::move(diffs));
}

FgModule tor(const FgModule& m, const FgModule& n, unsigned i) {
  FreeResolution f = free_resolution(m, i + 1);
  return homology(tensor_resolution(f, n), int(i)).module;
}

FgModule ext(const FgModule& m, const FgModule& n, unsigned i) {
  FreeResolution f = free_resolution(m, i + 1);
  return homology(hom_resolution(f, n), -int(i)).module;
}

FgModule local_cohomology(const FgModule& m, const Ideal& i, unsigned degree) {
  const RingPtr& r = m.ring();
  Stabilization st = ideal_stabilization(i);
  FgModule reg = FgModule::regular(r);
  FgModule quot = quotient_module(reg, Subgroup::span_columns(r->additive(), r->mult_matrix(st.e))).module;
  return ext(quot, m, degree);
}

}  // namespace prokit
