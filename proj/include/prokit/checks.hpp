// Single-instance property checks. The random batteries run these on seeded
// instances and task files run them on named ones. m_max = 0 means
// default_m_max.
#pragma once

#include "prokit/analysis.hpp"

namespace prokit {

/// lipman (1,n) = n + torsion index of x, and gm equals lipman.
CheckOutcome single_element_law_check(const FgModule& m, const Vec& x, unsigned n_max = 3, unsigned m_max = 0,
                                      int jobs = 0);

/// Lipman profile to n_max and gm profile to k * n_max, then verify_bound_transfer.
/// An InsufficientBound is reported as an inconclusive outcome.
CheckOutcome bound_transfer_check(const FgModule& m, const std::vector<Vec>& xs, unsigned n_max = 3,
                                  unsigned m_max = 0, int jobs = 0);

/// lipman, gm and weak profiles are all conclusive, and lipman conclusive implies weak conclusive.
CheckOutcome finite_proregular_check(const FgModule& m, const std::vector<Vec>& xs, unsigned n_max = 3,
                                     unsigned m_max = 0, int jobs = 0);

/// Čech cohomology and homology vanish in degrees 1..k; degree 0 matches
/// torsion, H^0_I and the completion.
CheckOutcome cech_vanishing_check(const FgModule& m, const std::vector<Vec>& xs);

/// Splits xs into a prefix and its last element and runs colon_identification
/// at level n with squares for n..level_max.
CheckOutcome colon_identification_check(const FgModule& m, const std::vector<Vec>& xs, unsigned n,
                                        unsigned level_max);

CheckOutcome tor_compare_check(const FgModule& m, const FgModule& n, const std::vector<Vec>& xs,
                               const std::vector<unsigned>& degrees, unsigned resolution_length = 3);

/// Čech homology of Hom(E, E), E the Matlis dual of R, vanishes in degrees 1..k.
CheckOutcome hom_injective_check(const RingPtr& r, const std::vector<Vec>& xs);

}  // namespace prokit
