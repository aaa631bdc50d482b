// Exact integer linear algebra and finite abelian group arithmetic.
//
// Everything here works over arbitrary-precision integers. A finite abelian
// group is carried as a cyclic decomposition Z/d_1 + ... + Z/d_r; elements are
// coordinate vectors reduced into [0, d_j). Subgroups are lattices between
// diag(d)Z^r and Z^r, stored by their Hermite basis so equality is a plain
// comparison.
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace prokit {

using Int = mpz_class;
using Vec = std::vector<Int>;

/// Least non-negative residue of `a` modulo `m` (m > 0).
Int mod(const Int& a, const Int& m);
Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
/// Smallest c with 2^c >= n (n >= 1).
unsigned ceil_log2(const Int& n);
/// Prime factorization as (prime, exponent) pairs, by trial division.
std::vector<std::pair<Int, unsigned>> factorize(Int n);

class InfiniteCokernel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const Vec& d);
  static IntMatrix from_columns(const std::vector<Vec>& columns, std::size_t rows);
  static IntMatrix from_rows(const std::vector<Vec>& rows, std::size_t cols);
  static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
  static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  Vec column(std::size_t j) const;
  void set_column(std::size_t j, const Vec& v);
  void set_row(std::size_t i, const Vec& v);

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& other) const;
  Vec operator*(const Vec& v) const;
  IntMatrix operator+(const IntMatrix& other) const;
  IntMatrix operator-(const IntMatrix& other) const;
  IntMatrix scaled(const Int& s) const;
  bool is_zero() const;
  bool operator==(const IntMatrix& other) const;

  // Elementary operations, shared by the normal-form reductions.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += q * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& q);
  /// col[dst] += q * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Int& q);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// Fraction-free (Bareiss) determinant of a square matrix.
Int determinant(const IntMatrix& a);

struct HermiteForm {
  IntMatrix h;  // row Hermite normal form, h = u * a
  IntMatrix u;  // unimodular
  std::size_t rank = 0;
};

/// Row Hermite normal form: echelon, pivots positive, entries above each
/// pivot reduced into [0, pivot). Pivots are chosen by smallest magnitude.
HermiteForm hnf(const IntMatrix& a);

struct SmithForm {
  IntMatrix d;      // d = u * a * v, diagonal, d_1 | d_2 | ..., d_i >= 0
  IntMatrix u;
  IntMatrix u_inv;
  IntMatrix v;
};

SmithForm snf(const IntMatrix& a);

/// Finite abelian group as a cyclic decomposition. Groups produced by
/// cokernel/quotient constructions are canonical (invariant factors in a
/// divisibility chain); direct sums keep their block decomposition.
class FinAbGroup {
 public:
  FinAbGroup() = default;
  explicit FinAbGroup(Vec orders);

  const Vec& orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  Int order() const;
  bool is_trivial() const { return orders_.empty(); }
  bool is_canonical() const;
  Vec invariant_factors() const;
  Int exponent() const;

  Vec zero() const { return Vec(orders_.size(), 0); }
  Vec reduce(Vec v) const;
  bool is_zero(const Vec& v) const;
  bool contains_coords(const Vec& v) const;
  Vec add(const Vec& a, const Vec& b) const;
  Vec neg(const Vec& a) const;
  Vec scale(const Int& s, const Vec& a) const;

  static FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b);
  static FinAbGroup power(const FinAbGroup& a, std::size_t copies);

  bool operator==(const FinAbGroup& other) const { return orders_ == other.orders_; }

 private:
  Vec orders_;
};

bool isomorphic(const FinAbGroup& a, const FinAbGroup& b);

/// Homomorphism given by a matrix whose column j is the image of the j-th
/// source generator.
struct GroupHom {
  FinAbGroup source;
  FinAbGroup target;
  IntMatrix matrix;

  GroupHom() = default;
  GroupHom(FinAbGroup src, FinAbGroup tgt, IntMatrix m);

  Vec apply(const Vec& x) const;
  /// d_j * column j vanishes in the target for every source generator.
  bool is_well_defined() const;
  bool is_zero() const;
};

/// Reduce every entry of row i modulo orders[i].
IntMatrix reduce_rows(IntMatrix m, const Vec& orders);

class Subgroup {
 public:
  Subgroup() = default;

  static Subgroup span(const FinAbGroup& ambient, const std::vector<Vec>& generators);
  static Subgroup span_columns(const FinAbGroup& ambient, const IntMatrix& columns);
  static Subgroup whole(const FinAbGroup& ambient);
  static Subgroup zero(const FinAbGroup& ambient);

  const FinAbGroup& ambient() const { return ambient_; }
  /// Hermite basis of the lattice (r x r, upper triangular, full rank).
  const IntMatrix& basis() const { return basis_; }

  bool contains(const Vec& y) const;
  /// Integer c with y = c^T * basis, or nullopt when y is not in the lattice.
  std::optional<Vec> lattice_coefficients(const Vec& y) const;
  Int order() const;
  Int index() const;
  bool is_zero() const;
  bool is_whole() const;
  /// Nonzero reduced basis rows; they generate the subgroup.
  std::vector<Vec> generators() const;

  bool is_subset_of(const Subgroup& other) const;
  Subgroup operator+(const Subgroup& other) const;
  Subgroup intersect(const Subgroup& other) const;
  bool operator==(const Subgroup& other) const;

 private:
  Subgroup(FinAbGroup ambient, IntMatrix basis);
  FinAbGroup ambient_;
  IntMatrix basis_;
};

struct Cokernel {
  FinAbGroup group;
  IntMatrix projection;  // ambient coordinates -> group coordinates
  IntMatrix lift;        // column t: ambient representative of generator t

  Vec project(const Vec& x) const;
  Vec lift_element(const Vec& y) const;
};

/// Z^rows / (columns of a + moduli * standard basis). A zero modulus leaves
/// the row unconstrained; an infinite result raises InfiniteCokernel.
Cokernel cokernel_presentation(const IntMatrix& a, const Vec& moduli);
Cokernel quotient_group(const FinAbGroup& g, const std::vector<Vec>& generators);
Cokernel quotient_group(const Subgroup& s);

/// A subgroup presented as a group in its own right.
class SubgroupPresentation {
 public:
  SubgroupPresentation() = default;
  explicit SubgroupPresentation(const Subgroup& s);

  const Subgroup& subgroup() const { return sub_; }
  const FinAbGroup& group() const { return group_; }
  /// Column t: ambient coordinates of generator t.
  const IntMatrix& inclusion() const { return inclusion_; }
  Vec include(const Vec& x) const;
  /// Coordinates of an ambient element lying in the subgroup.
  Vec coordinates(const Vec& y) const;

 private:
  Subgroup sub_;
  FinAbGroup group_;
  IntMatrix inclusion_;
  IntMatrix projection_;
};

struct IntegerSolution {
  std::optional<Vec> particular;
  std::vector<Vec> kernel;  // basis of {x : b x = 0}
};

/// All integer solutions of b * x = y.
IntegerSolution solve_integer(const IntMatrix& b, const Vec& y);

Subgroup kernel(const GroupHom& f);
Subgroup image(const GroupHom& f);
std::optional<Vec> preimage(const GroupHom& f, const Vec& y);
/// {x : f(x) in s}
Subgroup pullback(const GroupHom& f, const Subgroup& s);

std::string to_string(const Vec& v);

}  // namespace prokit
