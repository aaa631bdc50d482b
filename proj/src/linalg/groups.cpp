#include <utility>

#include "prokit/linalg.hpp"

namespace prokit {

// ---------------------------------------------------------------- FinAbGroup

FinAbGroup::FinAbGroup(Vec orders) : orders_(std::move(orders)) {
  for (const auto& d : orders_)
    if (d < 2) throw std::invalid_argument("cyclic factor order must be >= 2, got " + d.get_str());
}

Int FinAbGroup::order() const {
  Int n = 1;
  for (const auto& d : orders_) n *= d;
  return n;
}

bool FinAbGroup::is_canonical() const {
  for (std::size_t j = 1; j < orders_.size(); ++j)
    if (mpz_divisible_p(orders_[j].get_mpz_t(), orders_[j - 1].get_mpz_t()) == 0) return false;
  return true;
}

Vec FinAbGroup::invariant_factors() const {
  if (is_canonical()) return orders_;
  return cokernel_presentation(IntMatrix(rank(), 0), orders_).group.orders();
}

Int FinAbGroup::exponent() const {
  Int e = 1;
  for (const auto& d : orders_) e = lcm(e, d);
  return e;
}

Vec FinAbGroup::reduce(Vec v) const {
  if (v.size() != orders_.size()) throw DimensionMismatch("element rank mismatch");
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = mod(v[j], orders_[j]);
  return v;
}

bool FinAbGroup::is_zero(const Vec& v) const {
  if (v.size() != orders_.size()) throw DimensionMismatch("element rank mismatch");
  for (std::size_t j = 0; j < v.size(); ++j)
    if (mpz_divisible_p(v[j].get_mpz_t(), orders_[j].get_mpz_t()) == 0) return false;
  return true;
}

bool FinAbGroup::contains_coords(const Vec& v) const {
  if (v.size() != orders_.size()) return false;
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j] < 0 || v[j] >= orders_[j]) return false;
  return true;
}

Vec FinAbGroup::add(const Vec& a, const Vec& b) const {
  Vec s(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) s[j] = mod(a[j] + b[j], orders_[j]);
  return s;
}

Vec FinAbGroup::neg(const Vec& a) const {
  Vec s(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) s[j] = mod(-a[j], orders_[j]);
  return s;
}

Vec FinAbGroup::scale(const Int& k, const Vec& a) const {
  Vec s(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) s[j] = mod(k * a[j], orders_[j]);
  return s;
}

FinAbGroup FinAbGroup::direct_sum(const FinAbGroup& a, const FinAbGroup& b) {
  Vec o = a.orders_;
  o.insert(o.end(), b.orders_.begin(), b.orders_.end());
  return FinAbGroup(std::move(o));
}

FinAbGroup FinAbGroup::power(const FinAbGroup& a, std::size_t copies) {
  Vec o;
  for (std::size_t c = 0; c < copies; ++c) o.insert(o.end(), a.orders_.begin(), a.orders_.end());
  return FinAbGroup(std::move(o));
}

bool isomorphic(const FinAbGroup& a, const FinAbGroup& b) {
  return a.invariant_factors() == b.invariant_factors();
}

IntMatrix reduce_rows(IntMatrix m, const Vec& orders) {
  if (m.rows() != orders.size()) throw DimensionMismatch("reduce_rows shape");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = mod(m(i, j), orders[i]);
  return m;
}

// ------------------------------------------------------------------ GroupHom

GroupHom::GroupHom(FinAbGroup src, FinAbGroup tgt, IntMatrix m)
    : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
  if (matrix.rows() != target.rank() || matrix.cols() != source.rank())
    throw DimensionMismatch("homomorphism matrix is " + std::to_string(matrix.rows()) + "x" +
                            std::to_string(matrix.cols()) + ", expected " +
                            std::to_string(target.rank()) + "x" + std::to_string(source.rank()));
  matrix = reduce_rows(std::move(matrix), target.orders());
}

Vec GroupHom::apply(const Vec& x) const {
  if (x.size() != source.rank()) throw DimensionMismatch("apply: source rank");
  return target.reduce(matrix * x);
}

bool GroupHom::is_well_defined() const {
  for (std::size_t j = 0; j < source.rank(); ++j) {
    Vec c = matrix.column(j);
    for (auto& x : c) x *= source.orders()[j];
    if (!target.is_zero(c)) return false;
  }
  return true;
}

bool GroupHom::is_zero() const { return matrix.is_zero(); }

// ------------------------------------------------------------------ Subgroup

Subgroup::Subgroup(FinAbGroup ambient, IntMatrix basis)
    : ambient_(std::move(ambient)), basis_(std::move(basis)) {}

Subgroup Subgroup::span(const FinAbGroup& ambient, const std::vector<Vec>& generators) {
  const std::size_t r = ambient.rank();
  IntMatrix m(generators.size() + r, r);
  for (std::size_t g = 0; g < generators.size(); ++g) {
    if (generators[g].size() != r) throw DimensionMismatch("generator rank mismatch");
    for (std::size_t j = 0; j < r; ++j) m(g, j) = mod(generators[g][j], ambient.orders()[j]);
  }
  for (std::size_t j = 0; j < r; ++j) m(generators.size() + j, j) = ambient.orders()[j];
  HermiteForm h = hnf(m);
  IntMatrix basis(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) basis(i, j) = h.h(i, j);
  return Subgroup(ambient, std::move(basis));
}

Subgroup Subgroup::span_columns(const FinAbGroup& ambient, const IntMatrix& columns) {
  std::vector<Vec> gens;
  gens.reserve(columns.cols());
  for (std::size_t j = 0; j < columns.cols(); ++j) gens.push_back(columns.column(j));
  return span(ambient, gens);
}

Subgroup Subgroup::whole(const FinAbGroup& ambient) {
  return Subgroup(ambient, IntMatrix::identity(ambient.rank()));
}

Subgroup Subgroup::zero(const FinAbGroup& ambient) {
  return Subgroup(ambient, IntMatrix::diagonal(ambient.orders()));
}

std::optional<Vec> Subgroup::lattice_coefficients(const Vec& y) const {
  const std::size_t r = ambient_.rank();
  if (y.size() != r) throw DimensionMismatch("membership: element rank");
  Vec rest = y;
  Vec c(r, 0);
  for (std::size_t t = 0; t < r; ++t) {
    if (rest[t] == 0) continue;
    if (mpz_divisible_p(rest[t].get_mpz_t(), basis_(t, t).get_mpz_t()) == 0) return std::nullopt;
    Int q;
    mpz_divexact(q.get_mpz_t(), rest[t].get_mpz_t(), basis_(t, t).get_mpz_t());
    c[t] = q;
    for (std::size_t j = t; j < r; ++j) rest[j] -= q * basis_(t, j);
  }
  return c;
}

bool Subgroup::contains(const Vec& y) const {
  return lattice_coefficients(ambient_.reduce(y)).has_value();
}

Int Subgroup::index() const {
  Int det = 1;
  for (std::size_t t = 0; t < ambient_.rank(); ++t) det *= basis_(t, t);
  return det;
}

Int Subgroup::order() const { return ambient_.order() / index(); }

bool Subgroup::is_zero() const { return index() == ambient_.order(); }
bool Subgroup::is_whole() const { return index() == 1; }

std::vector<Vec> Subgroup::generators() const {
  std::vector<Vec> gens;
  for (std::size_t t = 0; t < ambient_.rank(); ++t) {
    Vec g = ambient_.reduce(basis_.row(t));
    if (!ambient_.is_zero(g)) gens.push_back(std::move(g));
  }
  return gens;
}

bool Subgroup::is_subset_of(const Subgroup& other) const {
  for (const auto& g : generators())
    if (!other.contains(g)) return false;
  return true;
}

Subgroup Subgroup::operator+(const Subgroup& other) const {
  std::vector<Vec> gens = generators();
  for (auto& g : other.generators()) gens.push_back(std::move(g));
  return span(ambient_, gens);
}

Subgroup Subgroup::intersect(const Subgroup& other) const {
  // x = B1^T a = B2^T b
  const std::size_t r = ambient_.rank();
  IntMatrix sys = IntMatrix::hstack(basis_.transpose(), other.basis_.transpose().scaled(-1));
  IntegerSolution sol = solve_integer(sys, Vec(r, 0));
  std::vector<Vec> gens;
  IntMatrix bt = basis_.transpose();
  for (const auto& k : sol.kernel) {
    Vec a(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(r));
    gens.push_back(bt * a);
  }
  return span(ambient_, gens);
}

bool Subgroup::operator==(const Subgroup& other) const {
  return ambient_ == other.ambient_ && basis_ == other.basis_;
}

// ------------------------------------------------------------------ Cokernel

Vec Cokernel::project(const Vec& x) const { return group.reduce(projection * x); }

Vec Cokernel::lift_element(const Vec& y) const { return lift * y; }

Cokernel cokernel_presentation(const IntMatrix& a, const Vec& moduli) {
  const std::size_t rows = a.rows();
  if (moduli.size() != rows) throw DimensionMismatch("cokernel: one modulus per row");
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < a.cols(); ++j) cols.push_back(a.column(j));
  for (std::size_t i = 0; i < rows; ++i) {
    if (moduli[i] == 0) continue;
    Vec c(rows, 0);
    c[i] = moduli[i];
    cols.push_back(std::move(c));
  }
  IntMatrix rel = IntMatrix::from_columns(cols, rows);
  SmithForm s = snf(rel);
  Vec orders;
  std::vector<std::size_t> kept;
  for (std::size_t t = 0; t < rows; ++t) {
    Int d = t < rel.cols() ? Int(s.d(t, t)) : Int(0);
    if (d == 0) throw InfiniteCokernel("cokernel has a free summand");
    if (d == 1) continue;
    orders.push_back(d);
    kept.push_back(t);
  }
  Cokernel out;
  out.group = FinAbGroup(orders);
  out.projection = IntMatrix(kept.size(), rows);
  out.lift = IntMatrix(rows, kept.size());
  for (std::size_t k = 0; k < kept.size(); ++k) {
    for (std::size_t j = 0; j < rows; ++j) {
      out.projection(k, j) = mod(s.u(kept[k], j), orders[k]);
      out.lift(j, k) = s.u_inv(j, kept[k]);
    }
  }
  return out;
}

Cokernel quotient_group(const FinAbGroup& g, const std::vector<Vec>& generators) {
  IntMatrix rel = IntMatrix::from_columns(generators, g.rank());
  return cokernel_presentation(rel, g.orders());
}

Cokernel quotient_group(const Subgroup& s) {
  return cokernel_presentation(s.basis().transpose(), Vec(s.ambient().rank(), 0));
}

// ------------------------------------------------------- SubgroupPresentation

SubgroupPresentation::SubgroupPresentation(const Subgroup& s) : sub_(s) {
  const FinAbGroup& amb = s.ambient();
  const std::size_t r = amb.rank();
  // Relations among the basis rows: coefficients of d_i e_i in the basis.
  IntMatrix rel(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    Vec di(r, 0);
    di[i] = amb.orders()[i];
    auto c = s.lattice_coefficients(di);
    if (!c) throw std::logic_error("subgroup lattice does not contain the relation lattice");
    rel.set_column(i, *c);
  }
  Cokernel ck = cokernel_presentation(rel, Vec(r, 0));
  group_ = ck.group;
  projection_ = ck.projection;
  inclusion_ = reduce_rows(s.basis().transpose() * ck.lift, amb.orders());
}

Vec SubgroupPresentation::include(const Vec& x) const {
  return sub_.ambient().reduce(inclusion_ * x);
}

Vec SubgroupPresentation::coordinates(const Vec& y) const {
  auto c = sub_.lattice_coefficients(sub_.ambient().reduce(y));
  if (!c) throw std::invalid_argument("element " + to_string(y) + " is not in the subgroup");
  return group_.reduce(projection_ * *c);
}

// ------------------------------------------------------------- linear systems

IntegerSolution solve_integer(const IntMatrix& b, const Vec& y) {
  const std::size_t m = b.rows();
  const std::size_t n = b.cols();
  if (y.size() != m) throw DimensionMismatch("solve_integer: right-hand side length");
  HermiteForm h = hnf(b.transpose());  // h = u * b^T, n x m
  IntegerSolution sol;
  for (std::size_t i = h.rank; i < n; ++i) sol.kernel.push_back(h.u.row(i));

  Vec w(n, 0);
  std::size_t col = 0;
  bool ok = true;
  for (std::size_t t = 0; t < h.rank && ok; ++t) {
    while (h.h(t, col) == 0) ++col;
    Int val = y[col];
    for (std::size_t s = 0; s < t; ++s) val -= w[s] * h.h(s, col);
    if (mpz_divisible_p(val.get_mpz_t(), h.h(t, col).get_mpz_t()) == 0) {
      ok = false;
      break;
    }
    mpz_divexact(w[t].get_mpz_t(), val.get_mpz_t(), h.h(t, col).get_mpz_t());
  }
  if (ok) {
    for (std::size_t j = 0; j < m && ok; ++j) {
      Int acc = 0;
      for (std::size_t s = 0; s < h.rank; ++s) acc += w[s] * h.h(s, j);
      if (acc != y[j]) ok = false;
    }
  }
  if (ok) {
    Vec x(n, 0);
    for (std::size_t s = 0; s < h.rank; ++s) {
      if (w[s] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) x[j] += w[s] * h.u(s, j);
    }
    sol.particular = std::move(x);
  }
  return sol;
}

namespace {

// [f.matrix | -rel] over the given relation columns.
IntegerSolution solve_against(const GroupHom& f, const IntMatrix& rel_cols, const Vec& y) {
  IntMatrix sys = IntMatrix::hstack(f.matrix, rel_cols.scaled(-1));
  return solve_integer(sys, y);
}

}  // namespace

Subgroup kernel(const GroupHom& f) {
  IntegerSolution sol =
      solve_against(f, IntMatrix::diagonal(f.target.orders()), Vec(f.target.rank(), 0));
  std::vector<Vec> gens;
  const auto r = static_cast<std::ptrdiff_t>(f.source.rank());
  for (const auto& k : sol.kernel) gens.emplace_back(k.begin(), k.begin() + r);
  return Subgroup::span(f.source, gens);
}

Subgroup image(const GroupHom& f) { return Subgroup::span_columns(f.target, f.matrix); }

std::optional<Vec> preimage(const GroupHom& f, const Vec& y) {
  if (y.size() != f.target.rank()) throw DimensionMismatch("preimage: target rank");
  IntegerSolution sol = solve_against(f, IntMatrix::diagonal(f.target.orders()), y);
  if (!sol.particular) return std::nullopt;
  const auto r = static_cast<std::ptrdiff_t>(f.source.rank());
  return f.source.reduce(Vec(sol.particular->begin(), sol.particular->begin() + r));
}

Subgroup pullback(const GroupHom& f, const Subgroup& s) {
  if (!(s.ambient() == f.target)) throw DimensionMismatch("pullback: subgroup of another group");
  IntegerSolution sol = solve_against(f, s.basis().transpose(), Vec(f.target.rank(), 0));
  std::vector<Vec> gens;
  const auto r = static_cast<std::ptrdiff_t>(f.source.rank());
  for (const auto& k : sol.kernel) gens.emplace_back(k.begin(), k.begin() + r);
  return Subgroup::span(f.source, gens);
}

}  // namespace prokit
