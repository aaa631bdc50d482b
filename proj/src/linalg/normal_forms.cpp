#include <cstdlib>

#include "prokit/linalg.hpp"

namespace prokit {
namespace {

int cmp_abs(const Int& a, const Int& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

Int tdiv(const Int& a, const Int& b) {
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HermiteForm hnf(const IntMatrix& a) {
  HermiteForm out{a, IntMatrix::identity(a.rows()), 0};
  IntMatrix& h = out.h;
  IntMatrix& u = out.u;
  const std::size_t m = h.rows();
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < m; ++c) {
    bool have_pivot = false;
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i) {
        if (h(i, c) != 0 && (best == m || cmp_abs(h(i, c), h(best, c)) < 0)) best = i;
      }
      if (best == m) break;
      have_pivot = true;
      h.swap_rows(r, best);
      u.swap_rows(r, best);
      bool clear = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (h(i, c) == 0) continue;
        Int q = -tdiv(h(i, c), h(r, c));
        h.add_row_multiple(i, r, q);
        u.add_row_multiple(i, r, q);
        if (h(i, c) != 0) clear = false;
      }
      if (clear) break;
    }
    if (!have_pivot) continue;
    if (h(r, c) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int q = -fdiv(h(i, c), h(r, c));
      h.add_row_multiple(i, r, q);
      u.add_row_multiple(i, r, q);
    }
    ++r;
  }
  out.rank = r;
  return out;
}

SmithForm snf(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithForm s{a, IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n)};
  IntMatrix& d = s.d;

  // Row ops are mirrored on u (left) and inversely on u_inv (right).
  auto row_swap = [&](std::size_t x, std::size_t y) {
    d.swap_rows(x, y);
    s.u.swap_rows(x, y);
    s.u_inv.swap_cols(x, y);
  };
  auto row_add = [&](std::size_t dst, std::size_t src, const Int& q) {
    d.add_row_multiple(dst, src, q);
    s.u.add_row_multiple(dst, src, q);
    s.u_inv.add_col_multiple(src, dst, -q);
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    d.swap_cols(x, y);
    s.v.swap_cols(x, y);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const Int& q) {
    d.add_col_multiple(dst, src, q);
    s.v.add_col_multiple(dst, src, q);
  };

  const std::size_t lim = m < n ? m : n;
  for (std::size_t t = 0; t < lim; ++t) {
    std::size_t bi = m, bj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (d(i, j) != 0 && (bi == m || cmp_abs(d(i, j), d(bi, bj)) < 0)) {
          bi = i;
          bj = j;
        }
    if (bi == m) break;
    row_swap(t, bi);
    col_swap(t, bj);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        row_add(i, t, -tdiv(d(i, t), d(t, t)));
        if (d(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        col_add(j, t, -tdiv(d(t, j), d(t, t)));
        if (d(t, j) != 0) dirty = true;
      }
      if (dirty) {
        // Move the smallest leftover of row/column t into the pivot.
        std::size_t bi2 = t, bj2 = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (d(i, t) != 0 && cmp_abs(d(i, t), d(bi2, bj2)) < 0) {
            bi2 = i;
            bj2 = t;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(t, j) != 0 && cmp_abs(d(t, j), d(bi2, bj2)) < 0) {
            bi2 = t;
            bj2 = j;
          }
        row_swap(t, bi2);
        col_swap(t, bj2);
        continue;
      }
      // Pivot must divide the rest of the block.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t()) == 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      row_add(t, bad, 1);
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      s.u.negate_row(t);
      s.u_inv.negate_col(t);
    }
  }
  return s;
}

}  // namespace prokit
