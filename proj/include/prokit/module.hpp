// Finitely generated modules over finite rings.
//
// A module is a finite abelian group plus one action matrix per ring basis
// element. Submodules are subgroups closed under all actions; since every
// constructor below produces closed spans, a Submodule is just the Hermite
// normalized Subgroup.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "prokit/ring.hpp"

namespace prokit {

class ModuleAxiomViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Submodule = Subgroup;

class FgModule {
 public:
  FgModule() = default;
  /// Validated construction; throws ModuleAxiomViolation.
  FgModule(RingPtr ring, FinAbGroup group, std::vector<IntMatrix> actions);
  /// No validation; for internal constructions that are correct by design.
  static FgModule unchecked(RingPtr ring, FinAbGroup group, std::vector<IntMatrix> actions);

  static FgModule zero(RingPtr ring);
  static FgModule free(RingPtr ring, std::size_t rank);
  static FgModule regular(RingPtr ring) { return free(std::move(ring), 1); }

  const RingPtr& ring() const { return rep_->ring; }
  const FinAbGroup& group() const { return rep_->group; }
  std::size_t rank() const { return rep_->group.rank(); }
  Int order() const { return rep_->group.order(); }
  bool is_zero() const { return rep_->group.is_trivial(); }

  const IntMatrix& action(std::size_t i) const { return rep_->actions[i]; }
  const std::vector<IntMatrix>& actions() const { return rep_->actions; }
  IntMatrix action_of(const Vec& a) const;
  Vec act(const Vec& a, const Vec& m) const { return group().reduce(action_of(a) * m); }

  /// Every failed module law, empty when the structure is valid.
  std::vector<std::string> check() const;

 private:
  struct Rep {
    RingPtr ring;
    FinAbGroup group;
    std::vector<IntMatrix> actions;
  };
  std::shared_ptr<const Rep> rep_;
};

struct ModuleHom {
  FgModule source;
  FgModule target;
  IntMatrix matrix;

  ModuleHom() = default;
  ModuleHom(FgModule s, FgModule t, IntMatrix m);
  static ModuleHom identity(const FgModule& m);
  static ModuleHom zero(const FgModule& s, const FgModule& t);

  GroupHom as_group_hom() const { return GroupHom(source.group(), target.group(), matrix); }
  Vec apply(const Vec& x) const { return target.group().reduce(matrix * x); }
  bool is_well_defined() const { return as_group_hom().is_well_defined(); }
  bool is_equivariant() const;
  bool is_zero() const { return matrix.is_zero(); }
  ModuleHom compose_after(const ModuleHom& first) const;  // this o first
};

FgModule direct_sum(const std::vector<FgModule>& parts);
/// M^s, the zero module when s = 0.
FgModule direct_power(const FgModule& m, std::size_t s);
/// Block matrix map between direct sums; blocks[i][j] : parts_src[j] -> parts_tgt[i].
IntMatrix block_matrix(const std::vector<std::vector<IntMatrix>>& blocks,
                       const std::vector<std::size_t>& row_ranks,
                       const std::vector<std::size_t>& col_ranks);

// ---------------------------------------------------------------- submodules

Submodule generated_submodule(const FgModule& m, const std::vector<Vec>& gens);
/// (x_1^{e_1}, ..., x_j^{e_j}) M
Submodule power_image(const FgModule& m, const std::vector<Vec>& xs, const std::vector<unsigned>& exps);
/// I^n M
Submodule ideal_power_image(const FgModule& m, const Ideal& i, unsigned n);
/// a * N
Submodule scaled_submodule(const FgModule& m, const Vec& a, const Submodule& n);
/// N :_M x^e
Submodule colon_submodule(const FgModule& m, const Submodule& n, const Vec& x, unsigned e);
/// 0 :_M a
Submodule annihilator_submodule(const FgModule& m, const Vec& a);
Submodule torsion_submodule(const FgModule& m, const Ideal& i);
bool is_divisible(const FgModule& q, const Vec& x);

struct QuotientModule {
  FgModule source;
  FgModule module;
  Cokernel map;  // projection M -> M/N and lifts
  ModuleHom projection() const;
};

QuotientModule quotient_module(const FgModule& m, const Submodule& n);

struct SubmoduleModule {
  FgModule ambient;
  FgModule module;
  SubgroupPresentation presentation;
  ModuleHom inclusion() const;
};

SubmoduleModule submodule_as_module(const FgModule& m, const Submodule& n);

Submodule kernel(const ModuleHom& f);
Submodule image(const ModuleHom& f);

/// R^s / <relations>, each relation a row of s ring elements.
FgModule module_from_presentation(const RingPtr& r, std::size_t s, const std::vector<std::vector<Vec>>& relations);

// ------------------------------------------------------------------ functors

FgModule matlis_dual(const FgModule& m);
/// Evaluation M -> M^vv in dual-of-dual coordinates.
ModuleHom double_dual_evaluation(const FgModule& m);

struct HomModule {
  FgModule module;
  FgModule hom_z;  // Hom_Z(M, N) with the action through M
  SubgroupPresentation inside;
  std::vector<std::pair<std::size_t, std::size_t>> slots;  // (i in N, j in M) per Hom_Z generator
  FgModule source;
  FgModule target;

  /// Matrix (rank N x rank M) of the homomorphism with the given coordinates.
  IntMatrix to_matrix(const Vec& coords) const;
  std::optional<Vec> from_matrix(const IntMatrix& phi) const;
};

HomModule hom_module(const FgModule& m, const FgModule& n);

struct TensorModule {
  FgModule module;
  std::vector<std::pair<std::size_t, std::size_t>> slots;  // (j in M, i in N)
  Cokernel map;
  Vec pure(const Vec& a, const Vec& b) const;
  FgModule left, right;
};

TensorModule tensor_module(const FgModule& m, const FgModule& n);

struct Completion {
  FgModule source;
  FgModule module;
  Cokernel map;
  unsigned c = 0;
  Vec e;
};

Completion adic_completion(const FgModule& m, const Ideal& i);

/// M_f = M/(1-e)M as a module over R_f.
struct LocalizedModule {
  FgModule source;
  FgModule module;
  Cokernel map;
};

LocalizedModule localize_module(const FgModule& m, const Localization& loc);

/// Necessary condition for isomorphism over the same ring: equal fingerprints.
bool same_invariants(const FgModule& a, const FgModule& b);
/// Invariant fingerprint: group invariants plus, for each ring basis element,
/// the invariants of its kernel and image.
std::vector<Vec> module_fingerprint(const FgModule& m);

std::string describe(const FgModule& m);

}  // namespace prokit
