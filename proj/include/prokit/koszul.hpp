// Koszul and Čech complexes on a sequence, power transitions between them,
// inverse systems with stabilized limits, and the homology built from these.
#pragma once

#include <optional>
#include <vector>

#include "prokit/complex.hpp"

namespace prokit {

class IdentificationFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NotStabilized : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// j-element subsets of {0..k-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t k, std::size_t j);

/// (x_1^n, ..., x_k^n)
std::vector<Vec> power_sequence(const FiniteRing& r, const std::vector<Vec>& xs, unsigned n);

/// K(x; M) with K_j = M^{C(k,j)} summands indexed by lexicographic subsets.
/// d(e_S m) = sum_p (-1)^p x_{S[p]} e_{S - S[p]} m.
ChainComplex koszul_complex(const std::vector<Vec>& xs, const FgModule& m);

/// K(x^m; M) -> K(x^n; M), multiplying the S-summand by prod_{i in S} x_i^{m-n}.
ComplexMap koszul_transition(const std::vector<Vec>& xs, unsigned m, unsigned n, const FgModule& mod);

/// Result of a bounded minimal-witness search.
struct Witness {
  std::optional<unsigned> m;
  unsigned bound = 0;  // largest m examined
  bool conclusive() const { return m.has_value(); }
  bool operator==(const Witness&) const = default;
};

/// A cycle of K_i(x^m; M) whose transition image in K_i(x^n; M) is not a
/// boundary, or nothing when the map on H_i is zero.
std::optional<Vec> pro_zero_violation(const std::vector<Vec>& xs, const FgModule& m, unsigned i, unsigned n,
                                      unsigned level);

/// Least m >= n with H_i(x^m; M) -> H_i(x^n; M) zero, searched up to m_max.
Witness pro_zero_index(const std::vector<Vec>& xs, const FgModule& m, unsigned i, unsigned n, unsigned m_max);

struct ColonIdentification {
  FgModule lhs;  // (x^n M :_M y^n) / x^n M
  FgModule rhs;  // H_1(y^n; H_0(x^n; M))
  ModuleHom map;
  bool verified = false;
  std::vector<unsigned> square_levels;  // m values whose square was checked
};

/// Builds both sides and the canonical map, checks it is an isomorphism and
/// that it intertwines multiplication by y^{m-n} with the Koszul transition
/// for every m in levels (m >= n). Throws IdentificationFailure otherwise.
ColonIdentification colon_identification(const std::vector<Vec>& prefix, const Vec& y, unsigned n,
                                         const FgModule& m, const std::vector<unsigned>& levels = {});

/// Čech cochain complex 0 -> M -> (+) M_{x_i} -> ...; C^p sits at degree -p.
/// Each M_f is presented as the R-module M/(1-e_f)M.
ChainComplex cech_complex(const std::vector<Vec>& xs, const FgModule& m);
FgModule cech_cohomology(const std::vector<Vec>& xs, const FgModule& m, unsigned i);

/// Modules M_1..M_N with adjacent transitions M_{n+1} -> M_n.
class InverseSystem {
 public:
  InverseSystem(std::vector<FgModule> modules, std::vector<ModuleHom> down);

  unsigned n_max() const { return unsigned(modules_.size()); }
  const FgModule& module(unsigned n) const { return modules_.at(n - 1); }
  /// tau_{m,n} : M_m -> M_n for m >= n.
  ModuleHom transition(unsigned m, unsigned n) const;

 private:
  std::vector<FgModule> modules_;
  std::vector<ModuleHom> down_;
};

struct StableLimit {
  FgModule module;
  unsigned index = 0;  // n from which the stabilized images no longer change
  Submodule image;     // stabilized image inside M_index
};

/// Inverse limit of a finite system: eventual images im(tau_{N,n}) must be
/// constant for at least `window` steps before N, and their orders constant
/// for `window` consecutive n; then the transitions between them are
/// bijective and the limit is the stabilized image at that index.
StableLimit stable_limit(const InverseSystem& s, unsigned window = 2);

/// n -> H_i(x^n; M) with transitions induced by koszul_transition.
InverseSystem koszul_homology_system(const std::vector<Vec>& xs, const FgModule& m, unsigned i, unsigned n_max);

/// lim_n H_i(x^n; M). The system length grows until it stabilizes.
FgModule cech_homology(const std::vector<Vec>& xs, const FgModule& m, unsigned i);

struct TorComparison {
  FgModule lhs;
  FgModule rhs;
  bool isomorphic = false;
};

/// lhs: H_i of the stabilized quotients (M (x) L) / x^n (M (x) L), with L a
/// free resolution of N; rhs: Tor_i(completion of M, N).
TorComparison cech_tor_compare(const FgModule& m, const FgModule& n, const std::vector<Vec>& xs, unsigned i,
                               unsigned resolution_length);

}  // namespace prokit
