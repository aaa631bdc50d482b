#include <algorithm>
#include <sstream>

#include "prokit/ring.hpp"

namespace prokit {

namespace {

std::string fmt_failure(const AxiomFailure& f) {
  std::ostringstream os;
  os << f.law;
  if (f.i >= 0) os << " (" << f.i;
  if (f.j >= 0) os << "," << f.j;
  if (f.k >= 0) os << "," << f.k;
  if (f.i >= 0) os << ")";
  if (!f.detail.empty()) os << ": " << f.detail;
  return os.str();
}

}  // namespace

std::vector<AxiomFailure> check_ring_axioms(const RingData& d) {
  std::vector<AxiomFailure> out;
  const std::size_t r = d.orders.size();
  for (std::size_t i = 0; i < r; ++i)
    if (d.orders[i] < 2) out.push_back({"shape", int(i), -1, -1, "additive order below 2"});
  if (d.mult.size() != r) out.push_back({"shape", -1, -1, -1, "need one multiplication matrix per basis element"});
  for (std::size_t i = 0; i < d.mult.size(); ++i)
    if (d.mult[i].rows() != r || d.mult[i].cols() != r)
      out.push_back({"shape", int(i), -1, -1, "multiplication matrix has wrong shape"});
  if (d.unit.size() != r) out.push_back({"shape", -1, -1, -1, "unit has wrong length"});
  if (!out.empty()) return out;

  FinAbGroup g(d.orders);
  std::vector<IntMatrix> m;
  for (const auto& a : d.mult) m.push_back(reduce_rows(a, d.orders));

  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      Vec c = m[i].column(j);
      for (auto& x : c) x *= d.orders[j];
      if (!g.is_zero(c))
        out.push_back({"well-definedness", int(i), int(j), -1, "e_i * (d_j e_j) is nonzero"});
    }
    if (!reduce_rows(m[i].scaled(d.orders[i]), d.orders).is_zero())
      out.push_back({"well-definedness", int(i), -1, -1, "(d_i e_i) * R is nonzero"});
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      if (m[i].column(j) != m[j].column(i))
        out.push_back({"commutativity", int(i), int(j), -1,
                       to_string(m[i].column(j)) + " != " + to_string(m[j].column(i))});

  IntMatrix u(r, r);
  for (std::size_t i = 0; i < r; ++i) u = u + m[i].scaled(d.unit[i]);
  u = reduce_rows(u, d.orders);
  for (std::size_t j = 0; j < r; ++j) {
    Vec e(r, 0);
    e[j] = 1;
    if (u.column(j) != g.reduce(e))
      out.push_back({"unit", int(j), -1, -1, "unit * e_j = " + to_string(u.column(j))});
  }

  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      Vec ij = m[i].column(j);
      for (std::size_t k = 0; k < r; ++k) {
        Vec left(r, 0);
        for (std::size_t l = 0; l < r; ++l) {
          if (ij[l] == 0) continue;
          Vec c = m[l].column(k);
          for (std::size_t s = 0; s < r; ++s) left[s] += ij[l] * c[s];
        }
        Vec right = m[i] * m[j].column(k);
        if (g.reduce(left) != g.reduce(right))
          out.push_back({"associativity", int(i), int(j), int(k),
                         to_string(g.reduce(left)) + " != " + to_string(g.reduce(right))});
      }
    }
  return out;
}

RingData ring_data_from_constants(const Vec& orders,
                                  const std::vector<std::vector<Vec>>& constants,
                                  const Vec& unit) {
  const std::size_t r = orders.size();
  RingData d{orders, {}, unit};
  if (constants.size() != r) throw InvalidSpec("structure constants: need r x r x r tensor");
  for (std::size_t i = 0; i < r; ++i) {
    if (constants[i].size() != r) throw InvalidSpec("structure constants: need r x r x r tensor");
    IntMatrix m(r, r);
    for (std::size_t j = 0; j < r; ++j) {
      if (constants[i][j].size() != r) throw InvalidSpec("structure constants: need r x r x r tensor");
      for (std::size_t k = 0; k < r; ++k) m(k, j) = constants[i][j][k];
    }
    d.mult.push_back(std::move(m));
  }
  return d;
}

FiniteRing::FiniteRing(RingData data, std::string label) : label_(std::move(label)) {
  auto failures = check_ring_axioms(data);
  if (!failures.empty()) {
    std::string msg = "ring axioms fail:";
    for (const auto& f : failures) msg += "\n  " + fmt_failure(f);
    throw AxiomViolation(msg);
  }
  additive_ = FinAbGroup(data.orders);
  for (auto& m : data.mult) m = reduce_rows(std::move(m), data.orders);
  data.unit = additive_.reduce(data.unit);
  data_ = std::move(data);
}

IntMatrix FiniteRing::mult_matrix(const Vec& a) const {
  const std::size_t r = rank();
  IntMatrix out(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    if (a[i] == 0) continue;
    const IntMatrix& m = data_.mult[i];
    for (std::size_t s = 0; s < r; ++s)
      for (std::size_t t = 0; t < r; ++t)
        if (m(s, t) != 0) out(s, t) += a[i] * m(s, t);
  }
  return reduce_rows(std::move(out), data_.orders);
}

Vec FiniteRing::basis(std::size_t i) const {
  Vec e = zero();
  e[i] = 1;
  return additive_.reduce(e);
}

Vec FiniteRing::mul(const Vec& a, const Vec& b) const {
  const std::size_t r = rank();
  Vec out(r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    if (a[i] == 0) continue;
    const IntMatrix& m = data_.mult[i];
    for (std::size_t j = 0; j < r; ++j) {
      if (b[j] == 0) continue;
      Int ab = a[i] * b[j];
      for (std::size_t s = 0; s < r; ++s)
        if (m(s, j) != 0) out[s] += ab * m(s, j);
    }
  }
  return additive_.reduce(std::move(out));
}

Vec FiniteRing::pow(const Vec& a, unsigned long e) const {
  Vec result = one();
  Vec base = a;
  while (e > 0) {
    if (e & 1UL) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

bool FiniteRing::is_unit(const Vec& a) const { return principal_span(*this, a).is_whole(); }

bool FiniteRing::is_nilpotent(const Vec& a) const {
  return is_zero(pow(a, ceil_log2(order()) + 1));
}

// ------------------------------------------------------------- constructors

RingPtr zmod(const Int& m) {
  if (m < 2) throw InvalidSpec("zmod needs modulus >= 2, got " + m.get_str());
  RingData d{{m}, {IntMatrix{{1}}}, {1}};
  return std::make_shared<FiniteRing>(std::move(d), "zmod(" + m.get_str() + ")");
}

namespace {

RingData product_data(const std::vector<RingPtr>& factors,
                      std::vector<std::pair<std::size_t, std::size_t>>& blocks) {
  RingData d;
  for (const auto& f : factors) {
    blocks.emplace_back(d.orders.size(), f->rank());
    d.orders.insert(d.orders.end(), f->additive().orders().begin(), f->additive().orders().end());
    d.unit.insert(d.unit.end(), f->one().begin(), f->one().end());
  }
  const std::size_t r = d.orders.size();
  for (std::size_t b = 0; b < factors.size(); ++b) {
    auto [off, rk] = blocks[b];
    for (std::size_t i = 0; i < rk; ++i) {
      IntMatrix m(r, r);
      const IntMatrix& fm = factors[b]->mult(i);
      for (std::size_t s = 0; s < rk; ++s)
        for (std::size_t t = 0; t < rk; ++t) m(off + s, off + t) = fm(s, t);
      d.mult.push_back(std::move(m));
    }
  }
  return d;
}

}  // namespace

RingPtr product(const std::vector<RingPtr>& factors) {
  if (factors.empty()) throw InvalidSpec("product of no rings");
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  RingData d = product_data(factors, blocks);
  std::string label = "product(";
  for (std::size_t i = 0; i < factors.size(); ++i) label += (i ? "," : "") + factors[i]->label();
  label += ")";
  auto r = std::make_shared<FiniteRing>(std::move(d), label);
  r->set_factor_blocks(std::move(blocks));
  return r;
}

Vec tuple_element(const FiniteRing& r, const std::vector<Vec>& parts) {
  const auto& blocks = r.factor_blocks();
  if (blocks.empty()) throw InvalidSpec("tuple element in a ring that is not a product");
  if (parts.size() != blocks.size())
    throw InvalidSpec("tuple has " + std::to_string(parts.size()) + " parts, ring has " +
                      std::to_string(blocks.size()) + " factors");
  Vec out = r.zero();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (parts[b].size() != blocks[b].second)
      throw InvalidSpec("tuple part " + std::to_string(b) + " has wrong length");
    for (std::size_t s = 0; s < parts[b].size(); ++s) out[blocks[b].first + s] = parts[b][s];
  }
  return r.reduce(out);
}

RingPtr truncated_polynomial(const Int& q, unsigned n) {
  if (q < 2) throw InvalidSpec("truncated_polynomial needs q >= 2");
  if (n < 1) throw InvalidSpec("truncated_polynomial needs n >= 1");
  RingData d;
  d.orders.assign(n, q);
  d.unit.assign(n, 0);
  d.unit[0] = 1;
  for (unsigned i = 0; i < n; ++i) {
    IntMatrix m(n, n);
    for (unsigned j = 0; i + j < n; ++j) m(i + j, j) = 1;
    d.mult.push_back(std::move(m));
  }
  auto r = std::make_shared<FiniteRing>(std::move(d), "truncated_polynomial(" + q.get_str() + "," +
                                                           std::to_string(n) + ")");
  Vec t(n, 0);
  if (n >= 2) t[1] = 1;
  r->set_named("x", t);
  r->set_named("one", r->one());
  return r;
}

RingPtr truncated_two_power(unsigned n_levels) {
  if (n_levels < 1) throw InvalidSpec("truncated_two_power needs N >= 1");
  std::vector<RingPtr> f;
  std::vector<Vec> x;
  Int m = 1;
  for (unsigned n = 1; n <= n_levels; ++n) {
    m *= 2;
    f.push_back(zmod(m));
    x.push_back({mod(Int(2), m)});
  }
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  RingData d = product_data(f, blocks);
  auto r = std::make_shared<FiniteRing>(std::move(d),
                                        "truncated_two_power(" + std::to_string(n_levels) + ")");
  r->set_factor_blocks(std::move(blocks));
  r->set_named("x", tuple_element(*r, x));
  r->set_named("one", r->one());
  return r;
}

RingPtr truncated_polynomial_product(const Int& q, unsigned n_levels) {
  if (n_levels < 1) throw InvalidSpec("truncated_polynomial_product needs N >= 1");
  std::vector<RingPtr> f;
  std::vector<Vec> x;
  for (unsigned n = 1; n <= n_levels; ++n) {
    f.push_back(truncated_polynomial(q, n));
    x.push_back(f.back()->named().at("x"));
  }
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  RingData d = product_data(f, blocks);
  auto r = std::make_shared<FiniteRing>(
      std::move(d), "truncated_polynomial_product(" + q.get_str() + "," + std::to_string(n_levels) + ")");
  r->set_factor_blocks(std::move(blocks));
  r->set_named("x", tuple_element(*r, x));
  r->set_named("one", r->one());
  return r;
}

// -------------------------------------------------------------------- ideals

Subgroup principal_span(const FiniteRing& r, const Vec& a) {
  return Subgroup::span_columns(r.additive(), r.mult_matrix(a));
}

Ideal::Ideal(RingPtr ring, const std::vector<Vec>& generators) : ring_(std::move(ring)) {
  std::vector<Vec> cols;
  for (const auto& g : generators) {
    if (g.size() != ring_->rank()) throw DimensionMismatch("ideal generator has wrong length");
    IntMatrix m = ring_->mult_matrix(ring_->reduce(g));
    for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
  }
  span_ = Subgroup::span(ring_->additive(), cols);
}

Ideal Ideal::whole(RingPtr ring) {
  Subgroup s = Subgroup::whole(ring->additive());
  return from_span(std::move(ring), std::move(s));
}

Ideal Ideal::zero(RingPtr ring) {
  Subgroup s = Subgroup::zero(ring->additive());
  return from_span(std::move(ring), std::move(s));
}

Ideal Ideal::from_span(RingPtr ring, Subgroup span) {
  Ideal i;
  i.ring_ = std::move(ring);
  i.span_ = std::move(span);
  return i;
}

Ideal Ideal::operator+(const Ideal& other) const { return from_span(ring_, span_ + other.span_); }

Ideal Ideal::operator*(const Ideal& other) const {
  std::vector<Vec> prods;
  auto a = generators();
  auto b = other.generators();
  for (const auto& x : a)
    for (const auto& y : b) prods.push_back(ring_->mul(x, y));
  return Ideal(ring_, prods);
}

Ideal Ideal::power(unsigned n) const {
  Ideal p = whole(ring_);
  for (unsigned k = 0; k < n; ++k) {
    Ideal next = p * *this;
    if (next == p) break;
    p = std::move(next);
  }
  return p;
}

// ----------------------------------------------------------------- quotients

QuotientRing quotient_ring(const RingPtr& r, const Ideal& i) {
  Cokernel ck = quotient_group(i.span());
  const std::size_t s = ck.group.rank();
  RingData d;
  d.orders = ck.group.orders();
  d.unit = ck.project(r->one());
  for (std::size_t t = 0; t < s; ++t) {
    Vec lt = r->reduce(ck.lift.column(t));
    IntMatrix m(s, s);
    for (std::size_t u = 0; u < s; ++u) m.set_column(u, ck.project(r->mul(lt, r->reduce(ck.lift.column(u)))));
    d.mult.push_back(std::move(m));
  }
  auto q = std::make_shared<FiniteRing>(std::move(d), r->label() + "/I");
  for (const auto& [name, v] : r->named()) q->set_named(name, ck.project(v));
  return {q, ck};
}

RingPtr quotient(const RingPtr& r, const Ideal& i) {
  if (i.is_whole()) throw InvalidSpec("quotient by the unit ideal gives the zero ring");
  return quotient_ring(r, i).ring;
}

// ------------------------------------------------------- idempotent machinery

FittingSplit fitting_split(const FiniteRing& r, const Vec& x) {
  FittingSplit out;
  if (r.is_zero_ring()) {
    out.e = r.zero();
    return out;
  }
  Subgroup cur = Subgroup::whole(r.additive());
  Vec xc = r.one();
  for (;;) {
    Vec next_pow = r.mul(xc, x);
    Subgroup next = principal_span(r, next_pow);
    if (next == cur) break;
    cur = std::move(next);
    xc = std::move(next_pow);
    ++out.c;
  }
  if (out.c == 0) {
    out.e = r.one();
    return out;
  }
  GroupHom m2c(r.additive(), r.additive(), r.mult_matrix(r.mul(xc, xc)));
  auto pre = preimage(m2c, xc);
  if (!pre) throw std::logic_error("fitting_split: x^c not in x^{2c} R");
  out.e = r.mul(xc, *pre);
  return out;
}

Localization localize(const RingPtr& r, const Vec& f) {
  FittingSplit fs = fitting_split(*r, r->reduce(f));
  Ideal kill(r, {r->sub(r->one(), fs.e)});
  QuotientRing q = quotient_ring(r, kill);
  Localization loc;
  loc.ring = q.ring;
  loc.idempotent = fs.e;
  loc.stabilization_index = fs.c;
  loc.map = q.map;
  return loc;
}

CoveringResult is_covering(const FiniteRing& r, const std::vector<Vec>& fs) {
  if (fs.empty()) throw InvalidSpec("covering check needs at least one element");
  CoveringResult out;
  const std::size_t n = r.rank();
  if (r.is_zero_ring()) {
    out.covers = true;
    out.coefficients.assign(fs.size(), r.zero());
    return out;
  }
  IntMatrix m(n, 0);
  for (const auto& f : fs) m = IntMatrix::hstack(m, r.mult_matrix(r.reduce(f)));
  GroupHom h(FinAbGroup::power(r.additive(), fs.size()), r.additive(), m);
  auto pre = preimage(h, r.one());
  if (!pre) return out;
  out.covers = true;
  for (std::size_t i = 0; i < fs.size(); ++i)
    out.coefficients.emplace_back(pre->begin() + static_cast<std::ptrdiff_t>(i * n),
                                  pre->begin() + static_cast<std::ptrdiff_t>((i + 1) * n));
  return out;
}

Vec idempotent_generator(const Ideal& j) {
  const FiniteRing& r = *j.ring();
  auto gens = j.generators();
  if (gens.empty() || r.is_zero_ring()) return r.zero();
  const std::size_t t = gens.size();
  const std::size_t n = r.rank();
  IntMatrix m(n * t, t);
  Vec y;
  for (std::size_t a = 0; a < t; ++a) {
    for (std::size_t b = 0; b < t; ++b) {
      Vec p = r.mul(gens[a], gens[b]);
      for (std::size_t s = 0; s < n; ++s) m(b * n + s, a) = p[s];
    }
    y.insert(y.end(), gens[a].begin(), gens[a].end());
  }
  FinAbGroup coeffs(Vec(t, r.additive().exponent()));
  GroupHom h(coeffs, FinAbGroup::power(r.additive(), t), m);
  auto lambda = preimage(h, y);
  if (!lambda) throw std::logic_error("ideal has no idempotent generator");
  Vec e = r.zero();
  for (std::size_t a = 0; a < t; ++a) e = r.add(e, r.additive().scale((*lambda)[a], gens[a]));
  return e;
}

Stabilization ideal_stabilization(const Ideal& i) {
  Stabilization out;
  Ideal cur = Ideal::whole(i.ring());
  for (;;) {
    Ideal next = cur * i;
    if (next == cur) break;
    cur = std::move(next);
    ++out.c;
  }
  out.e = idempotent_generator(cur);
  return out;
}

namespace {

// Split the factor fR by its prime-primary parts or, for a p-primary factor,
// by a non-scalar Frobenius-fixed element of fR/pfR. Returns a proper
// idempotent of fR, or nothing when fR is local.
std::optional<Vec> complete_split(const RingPtr& r, const Vec& f) {
  Localization a = localize(r, f);
  const FiniteRing& ar = *a.ring;
  if (ar.is_zero_ring()) return std::nullopt;
  auto to_r = [&](const Vec& e_a) { return r->mul(f, r->reduce(a.map.lift_element(e_a))); };

  auto primes = factorize(ar.additive().exponent());
  if (primes.size() >= 2) {
    Int pv = 1;
    for (unsigned k = 0; k < primes[0].second; ++k) pv *= primes[0].first;
    Vec y = ar.from_integer(ar.additive().exponent() / pv);
    return to_r(fitting_split(ar, y).e);
  }
  const Int p = primes[0].first;
  QuotientRing b = quotient_ring(a.ring, Ideal(a.ring, {ar.from_integer(p)}));
  const FiniteRing& br = *b.ring;
  const std::size_t s = br.rank();
  IntMatrix phi(s, s);
  for (std::size_t j = 0; j < s; ++j) phi.set_column(j, br.pow(br.basis(j), p.get_ui()));
  Subgroup fixed = kernel(GroupHom(br.additive(), br.additive(), phi - IntMatrix::identity(s)));
  Subgroup scalars = Subgroup::span(br.additive(), {br.one()});
  if (fixed == scalars) return std::nullopt;
  for (const auto& sfix : fixed.generators()) {
    if (scalars.contains(sfix)) continue;
    Vec lifted = ar.reduce(b.map.lift_element(sfix));
    for (unsigned long lam = 0; lam < p.get_ui(); ++lam) {
      Vec y = ar.sub(lifted, ar.from_integer(Int(lam)));
      Vec e = fitting_split(ar, y).e;
      if (!ar.is_zero(e) && e != ar.one()) return to_r(e);
    }
  }
  throw std::logic_error("non-local factor did not split");
}

}  // namespace

bool is_local_ring(const RingPtr& r) {
  if (r->is_zero_ring()) return false;
  return !complete_split(r, r->one()).has_value();
}

std::vector<Vec> primitive_idempotents(const RingPtr& r, std::size_t budget) {
  if (r->is_zero_ring()) return {};
  const std::size_t n = r->rank();
  if (budget == 0) budget = 4 * n * n;
  std::vector<Vec> work{r->one()};
  std::vector<Vec> done;
  while (!work.empty()) {
    Vec f = work.back();
    work.pop_back();
    // Attempts are counted per factor: basis elements first, then the
    // complete test, which also certifies locality when nothing splits.
    std::size_t attempts = 0;
    auto spend = [&] {
      if (++attempts > budget)
        throw DecompositionBoundExceeded("idempotent splitting of a factor exceeded " +
                                         std::to_string(budget) + " attempts");
    };
    std::optional<Vec> part;
    for (std::size_t b = 0; b < n && !part; ++b) {
      spend();
      Vec e = r->mul(f, fitting_split(*r, r->mul(f, r->basis(b))).e);
      if (!r->is_zero(e) && e != f) part = e;
    }
    if (!part) {
      spend();
      part = complete_split(r, f);
    }
    if (part) {
      work.push_back(*part);
      work.push_back(r->sub(f, *part));
    } else {
      done.push_back(f);
    }
  }
  std::sort(done.begin(), done.end());
  return done;
}

}  // namespace prokit
