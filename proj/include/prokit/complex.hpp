// Bounded chain complexes of finite modules, homology, free resolutions and
// the derived functors built from them.
//
// Indexing is homological: d_i : X_i -> X_{i-1}. Cochain complexes are stored
// in non-positive degrees, so C^p sits at degree -p.
#pragma once

#include <map>
#include <vector>

#include "prokit/module.hpp"

namespace prokit {

class ComplexError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ChainComplex {
 public:
  ChainComplex() = default;
  /// modules[k] sits in degree lowest + k; differentials[k] : X_{lowest+k+1} -> X_{lowest+k}.
  /// Throws ComplexError unless every d o d vanishes.
  ChainComplex(RingPtr ring, int lowest, std::vector<FgModule> modules, std::vector<ModuleHom> differentials);

  const RingPtr& ring() const { return ring_; }
  int lowest() const { return lowest_; }
  int highest() const { return lowest_ + int(modules_.size()) - 1; }
  FgModule module(int i) const;
  ModuleHom differential(int i) const;

 private:
  RingPtr ring_;
  int lowest_ = 0;
  std::vector<FgModule> modules_;
  std::vector<ModuleHom> diffs_;
};

class ComplexMap {
 public:
  ComplexMap() = default;
  /// components[k] sits in degree lowest + k of the common support. Throws
  /// ComplexError unless the map commutes with the differentials.
  ComplexMap(ChainComplex source, ChainComplex target, std::map<int, ModuleHom> components);

  const ChainComplex& source() const { return source_; }
  const ChainComplex& target() const { return target_; }
  ModuleHom component(int i) const;
  ComplexMap compose_after(const ComplexMap& first) const;  // this o first

 private:
  ChainComplex source_;
  ChainComplex target_;
  std::map<int, ModuleHom> comps_;
};

struct Homology {
  FgModule module;
  SubmoduleModule cycles;
  Subgroup boundaries;
  QuotientModule classes;

  Vec class_of(const Vec& cycle) const;
  Vec representative(const Vec& cls) const;
};

Homology homology(const ChainComplex& c, int i);
/// big / small for submodules small <= big of x, in the same shape as homology.
Homology subquotient(const FgModule& x, const Submodule& big, const Submodule& small);
/// Map induced on homology, between already computed homology objects.
ModuleHom induced_map(const ModuleHom& f, const Homology& src, const Homology& tgt);

/// Greedy R-module generators of a submodule: a generator is kept when it is
/// not already in the span of the previous ones.
std::vector<Vec> greedy_generators(const FgModule& m, const Submodule& n);

/// R^s -> M sending the k-th free generator to gens[k].
ModuleHom free_cover(const FgModule& m, const std::vector<Vec>& gens);

struct FreeResolution {
  ChainComplex complex;                 // F_L -> ... -> F_0 in degrees 0..L
  ModuleHom augmentation;               // F_0 -> M
  std::vector<std::size_t> ranks;       // free ranks s_j
  // ring_entries[j][l][k]: coefficient of generator l of F_{j-1} in d_j(generator k of F_j)
  std::vector<std::vector<std::vector<Vec>>> ring_entries;
};

FreeResolution free_resolution(const FgModule& m, unsigned length);

/// F (x) N as a complex of sums of N.
ChainComplex tensor_resolution(const FreeResolution& f, const FgModule& n);
/// Hom(F, N) as a cochain complex of sums of N.
ChainComplex hom_resolution(const FreeResolution& f, const FgModule& n);

FgModule tor(const FgModule& m, const FgModule& n, unsigned i);
FgModule ext(const FgModule& m, const FgModule& n, unsigned i);
/// H^i_I(M) = Ext^i(R/I^c, M) with I^c the stable power of I.
FgModule local_cohomology(const FgModule& m, const Ideal& i, unsigned degree);

}  // namespace prokit
