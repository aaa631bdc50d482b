// Finite commutative unital rings given by structure constants.
//
// The additive group is a FinAbGroup with basis e_1..e_r. Multiplication is
// stored as one matrix per basis element: column j of mult(i) holds the
// coordinates of e_i * e_j. Elements are plain coordinate vectors.
#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "prokit/linalg.hpp"

namespace prokit {

class InvalidSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class AxiomViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DecompositionBoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RingData {
  Vec orders;
  std::vector<IntMatrix> mult;
  Vec unit;
};

/// One failed basis-level identity. Indices not involved are -1.
struct AxiomFailure {
  std::string law;  // commutativity | associativity | unit | well-definedness | shape
  int i = -1, j = -1, k = -1;
  std::string detail;
};

std::vector<AxiomFailure> check_ring_axioms(const RingData& data);

/// e_i * e_j = sum_k c[i][j][k] e_k
RingData ring_data_from_constants(const Vec& orders,
                                  const std::vector<std::vector<Vec>>& constants,
                                  const Vec& unit);

class FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

class FiniteRing {
 public:
  /// Validates the structure and throws AxiomViolation listing every failure.
  explicit FiniteRing(RingData data, std::string label = "raw");

  const FinAbGroup& additive() const { return additive_; }
  std::size_t rank() const { return additive_.rank(); }
  Int order() const { return additive_.order(); }
  bool is_zero_ring() const { return additive_.is_trivial(); }
  const std::string& label() const { return label_; }
  const RingData& data() const { return data_; }

  const IntMatrix& mult(std::size_t i) const { return data_.mult[i]; }
  /// Matrix of multiplication by a.
  IntMatrix mult_matrix(const Vec& a) const;

  Vec zero() const { return additive_.zero(); }
  const Vec& one() const { return data_.unit; }
  Vec from_integer(const Int& k) const { return additive_.scale(k, data_.unit); }
  Vec basis(std::size_t i) const;

  Vec add(const Vec& a, const Vec& b) const { return additive_.add(a, b); }
  Vec sub(const Vec& a, const Vec& b) const { return additive_.add(a, additive_.neg(b)); }
  Vec neg(const Vec& a) const { return additive_.neg(a); }
  Vec mul(const Vec& a, const Vec& b) const;
  Vec pow(const Vec& a, unsigned long e) const;
  bool is_zero(const Vec& a) const { return additive_.is_zero(a); }
  bool is_unit(const Vec& a) const;
  bool is_nilpotent(const Vec& a) const;
  Vec reduce(const Vec& a) const { return additive_.reduce(a); }

  const std::map<std::string, Vec>& named() const { return named_; }
  void set_named(const std::string& name, const Vec& a) { named_[name] = reduce(a); }

  /// Factor blocks for product rings: (offset, rank) of each factor.
  const std::vector<std::pair<std::size_t, std::size_t>>& factor_blocks() const { return blocks_; }
  void set_factor_blocks(std::vector<std::pair<std::size_t, std::size_t>> b) { blocks_ = std::move(b); }

  std::string element_to_string(const Vec& a) const { return to_string(a); }

 private:
  RingData data_;
  FinAbGroup additive_;
  std::string label_;
  std::map<std::string, Vec> named_;
  std::vector<std::pair<std::size_t, std::size_t>> blocks_;
};

RingPtr zmod(const Int& m);
RingPtr product(const std::vector<RingPtr>& factors);
/// Z/q[t]/(t^n), with named element "x" = t.
RingPtr truncated_polynomial(const Int& q, unsigned n);
/// prod_{n=1}^N Z/2^n with named elements "x" = (2 mod 2^n)_n and "one".
RingPtr truncated_two_power(unsigned n_levels);
/// prod_{n=1}^N Z/q[t]/(t^n) with named elements "x" = (t)_n and "one".
RingPtr truncated_polynomial_product(const Int& q, unsigned n_levels);
/// Element of a product ring assembled from per-factor coordinates.
Vec tuple_element(const FiniteRing& r, const std::vector<Vec>& parts);

class Ideal {
 public:
  Ideal() = default;
  Ideal(RingPtr ring, const std::vector<Vec>& generators);
  static Ideal whole(RingPtr ring);
  static Ideal zero(RingPtr ring);
  static Ideal from_span(RingPtr ring, Subgroup span);

  const RingPtr& ring() const { return ring_; }
  const Subgroup& span() const { return span_; }
  std::vector<Vec> generators() const { return span_.generators(); }
  bool contains(const Vec& a) const { return span_.contains(a); }
  bool is_whole() const { return span_.is_whole(); }
  bool is_zero() const { return span_.is_zero(); }
  Int order() const { return span_.order(); }

  Ideal operator+(const Ideal& other) const;
  Ideal operator*(const Ideal& other) const;
  Ideal power(unsigned n) const;
  bool operator==(const Ideal& other) const { return span_ == other.span_; }

 private:
  RingPtr ring_;
  Subgroup span_;
};

/// Additive span of a*R.
Subgroup principal_span(const FiniteRing& r, const Vec& a);

/// Ring quotient R/I, with the additive projection and lift.
struct QuotientRing {
  RingPtr ring;
  Cokernel map;
};

/// Allows the improper ideal (zero ring result).
QuotientRing quotient_ring(const RingPtr& r, const Ideal& i);
/// Public constructor variant: rejects the improper ideal.
RingPtr quotient(const RingPtr& r, const Ideal& i);

struct FittingSplit {
  unsigned c = 0;
  Vec e;
};

FittingSplit fitting_split(const FiniteRing& r, const Vec& x);

struct Localization {
  RingPtr ring;
  Vec idempotent;
  unsigned stabilization_index = 0;
  Cokernel map;  // R -> R_f, kernel (1 - e)R

  Vec project(const Vec& a) const { return map.project(a); }
};

Localization localize(const RingPtr& r, const Vec& f);

struct CoveringResult {
  bool covers = false;
  std::vector<Vec> coefficients;
};

CoveringResult is_covering(const FiniteRing& r, const std::vector<Vec>& fs);

struct Stabilization {
  unsigned c = 0;
  Vec e;
};

Stabilization ideal_stabilization(const Ideal& i);

/// Idempotent e with e*b = b for all b in the (idempotent) ideal j.
Vec idempotent_generator(const Ideal& j);

/// Orthogonal primitive idempotents summing to 1, in a canonical order.
std::vector<Vec> primitive_idempotents(const RingPtr& r, std::size_t budget = 0);

/// Locality test: the characteristic must be a prime power p^v and the
/// Frobenius fixed space of R/pR must be one-dimensional.
bool is_local_ring(const RingPtr& r);

}  // namespace prokit
