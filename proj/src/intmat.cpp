#include "stackfan/intmat.hpp"

#include <algorithm>
#include <cstdlib>

namespace stackfan {

IntMat IntMat::identity(long n) {
  IntMat m(n, n);
  for (long i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMat IntMat::from_rows(const std::vector<std::vector<long>>& rws, long ncols) {
  IntMat m(static_cast<long>(rws.size()), ncols);
  for (long i = 0; i < m.rows; ++i)
    for (long j = 0; j < ncols; ++j) m.at(i, j) = rws[i][j];
  return m;
}

std::vector<Int> IntMat::row(long i) const {
  std::vector<Int> v(cols);
  for (long j = 0; j < cols; ++j) v[j] = at(i, j);
  return v;
}

void IntMat::set_row(long i, const std::vector<Int>& v) {
  for (long j = 0; j < cols; ++j) at(i, j) = v[j];
}

IntMat IntMat::mul(const IntMat& b) const {
  IntMat r(rows, b.cols);
  for (long i = 0; i < rows; ++i)
    for (long k = 0; k < cols; ++k) {
      const Int& s = at(i, k);
      if (s == 0) continue;
      for (long j = 0; j < b.cols; ++j) r.at(i, j) += s * b.at(k, j);
    }
  return r;
}

IntMat IntMat::transpose() const {
  IntMat r(cols, rows);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
  return r;
}

IntMat IntMat::vstack(const IntMat& b) const {
  IntMat r(rows + b.rows, cols);
  r.a.assign(a.begin(), a.end());
  r.a.insert(r.a.end(), b.a.begin(), b.a.end());
  return r;
}

// Fraction-free Bareiss elimination; every division below is exact.
Int det(const IntMat& m) {
  long n = m.rows;
  IntMat b = m;
  int sign = 1;
  Int prev = 1;
  for (long k = 0; k + 1 < n; ++k) {
    if (b.at(k, k) == 0) {
      long p = -1;
      for (long i = k + 1; i < n; ++i)
        if (b.at(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      for (long j = 0; j < n; ++j) std::swap(b.at(k, j), b.at(p, j));
      sign = -sign;
    }
    for (long i = k + 1; i < n; ++i)
      for (long j = k + 1; j < n; ++j) {
        Int t = b.at(i, j) * b.at(k, k) - b.at(i, k) * b.at(k, j);
        mpz_divexact(b.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = b.at(k, k);
  }
  if (n == 0) return 1;
  return sign > 0 ? b.at(n - 1, n - 1) : Int(-b.at(n - 1, n - 1));
}

namespace {

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

void swap_rows(IntMat& m, long i, long j) {
  if (i == j) return;
  for (long c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
}

void swap_cols(IntMat& m, long i, long j) {
  if (i == j) return;
  for (long r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
}

// row_i -= q * row_t
void row_axpy(IntMat& m, long i, long t, const Int& q) {
  if (q == 0) return;
  for (long c = 0; c < m.cols; ++c) m.at(i, c) -= q * m.at(t, c);
}

void col_axpy(IntMat& m, long j, long t, const Int& q) {
  if (q == 0) return;
  for (long r = 0; r < m.rows; ++r) m.at(r, j) -= q * m.at(r, t);
}

// Row-style Hermite reduction of A in place, tracking U with U*A = H.
// Returns the number of nonzero (pivot) rows.
long hermite_in_place(IntMat& h, IntMat& u) {
  long r = 0;
  for (long j = 0; j < h.cols && r < h.rows; ++j) {
    // gcd loop on column j, rows >= r: repeatedly reduce by the minimal entry
    while (true) {
      long p = -1;
      for (long i = r; i < h.rows; ++i) {
        if (h.at(i, j) == 0) continue;
        if (p < 0 || cmp(abs(h.at(i, j)), abs(h.at(p, j))) < 0) p = i;
      }
      if (p < 0) break;  // column clear below r
      swap_rows(h, r, p);
      swap_rows(u, r, p);
      bool leftover = false;
      for (long i = r + 1; i < h.rows; ++i) {
        if (h.at(i, j) == 0) continue;
        Int q = floor_div(h.at(i, j), h.at(r, j));
        row_axpy(h, i, r, q);
        row_axpy(u, i, r, q);
        if (h.at(i, j) != 0) leftover = true;
      }
      if (!leftover) {
        if (h.at(r, j) < 0) {
          for (long c = 0; c < h.cols; ++c) h.at(r, c) = -h.at(r, c);
          for (long c = 0; c < u.cols; ++c) u.at(r, c) = -u.at(r, c);
        }
        // reduce the entries above the pivot into [0, pivot)
        for (long i = 0; i < r; ++i) {
          Int q = floor_div(h.at(i, j), h.at(r, j));
          row_axpy(h, i, r, q);
          row_axpy(u, i, r, q);
        }
        ++r;
        break;
      }
    }
  }
  return r;
}

}  // namespace

IntMat hermite_row_basis(const IntMat& A) {
  IntMat h = A;
  IntMat u = IntMat::identity(A.rows);
  long r = hermite_in_place(h, u);
  IntMat out(r, A.cols);
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < A.cols; ++j) out.at(i, j) = h.at(i, j);
  return out;
}

long rank_of(const IntMat& m) {
  IntMat h = m;
  IntMat u = IntMat::identity(m.rows);
  return hermite_in_place(h, u);
}

IntMat kernel_lattice(const IntMat& A) {
  // Left kernel of A^T: track U with U*A^T = H; the U-rows matching zero
  // H-rows span { x : x*A^T = 0 } = { x : A*x^T = 0 }.
  IntMat h = A.transpose();
  IntMat u = IntMat::identity(h.rows);
  long r = hermite_in_place(h, u);
  IntMat ker(h.rows - r, u.cols);
  for (long i = r; i < h.rows; ++i)
    for (long j = 0; j < u.cols; ++j) ker.at(i - r, j) = u.at(i, j);
  return hermite_row_basis(ker);
}

bool in_row_space(const IntMat& A, const std::vector<Int>& v) {
  IntMat h = hermite_row_basis(A);
  std::vector<Int> w = v;
  for (long i = 0; i < h.rows; ++i) {
    long piv = -1;
    for (long j = 0; j < h.cols; ++j)
      if (h.at(i, j) != 0) { piv = j; break; }
    if (piv < 0) continue;
    Int rem;
    mpz_fdiv_r(rem.get_mpz_t(), w[piv].get_mpz_t(), h.at(i, piv).get_mpz_t());
    if (rem != 0) return false;
    Int q = floor_div(w[piv], h.at(i, piv));
    if (q != 0)
      for (long j = 0; j < h.cols; ++j) w[j] -= q * h.at(i, j);
  }
  for (const Int& x : w)
    if (x != 0) return false;
  return true;
}

std::optional<std::vector<Int>> solve_row_combination(const IntMat& A, const std::vector<Int>& v) {
  if ((long)v.size() != A.cols) throw math_error("solve_row_combination: size mismatch");
  IntMat h = A;
  IntMat u = IntMat::identity(A.rows);
  hermite_in_place(h, u);
  std::vector<Int> w = v;
  std::vector<Int> q(A.rows, 0);
  for (long i = 0; i < h.rows; ++i) {
    long piv = -1;
    for (long j = 0; j < h.cols; ++j)
      if (h.at(i, j) != 0) { piv = j; break; }
    if (piv < 0) continue;
    Int rem;
    mpz_fdiv_r(rem.get_mpz_t(), w[piv].get_mpz_t(), h.at(i, piv).get_mpz_t());
    if (rem != 0) return std::nullopt;
    q[i] = floor_div(w[piv], h.at(i, piv));
    if (q[i] != 0)
      for (long j = 0; j < h.cols; ++j) w[j] -= q[i] * h.at(i, j);
  }
  for (const Int& x : w)
    if (x != 0) return std::nullopt;
  // v = sum q_i * h_i and h = u * A, so x = q * u.
  std::vector<Int> x(A.rows, 0);
  for (long i = 0; i < A.rows; ++i)
    for (long j = 0; j < A.rows; ++j) x[j] += q[i] * u.at(i, j);
  return x;
}

IntMat unimodular_inverse(const IntMat& m) {
  IntMat h = m;
  IntMat u = IntMat::identity(m.rows);
  long r = hermite_in_place(h, u);
  if (r != m.rows || !(h == IntMat::identity(m.rows)))
    throw math_error("unimodular_inverse: matrix is not unimodular");
  return u;
}

SmithDecomposition smith_normal_form(const IntMat& A) {
  SmithDecomposition s;
  s.D = A;
  s.U = IntMat::identity(A.rows);
  s.V = IntMat::identity(A.cols);
  IntMat& d = s.D;
  long k = std::min(A.rows, A.cols);

  for (long t = 0; t < k; ++t) {
    // minimal-absolute-value pivot, ties broken by (row, col)
    long pi = -1, pj = -1;
    for (long i = t; i < A.rows; ++i)
      for (long j = t; j < A.cols; ++j) {
        if (d.at(i, j) == 0) continue;
        if (pi < 0 || cmp(abs(d.at(i, j)), abs(d.at(pi, pj))) < 0) { pi = i; pj = j; }
      }
    if (pi < 0) break;  // remaining block is zero
    swap_rows(d, t, pi);
    swap_rows(s.U, t, pi);
    swap_cols(d, t, pj);
    swap_cols(s.V, t, pj);

    // clear row t and column t; remainders shrink the pivot, so this ends
    while (true) {
      bool restart = false;
      for (long i = t + 1; i < A.rows && !restart; ++i) {
        if (d.at(i, t) == 0) continue;
        Int q = floor_div(d.at(i, t), d.at(t, t));
        row_axpy(d, i, t, q);
        row_axpy(s.U, i, t, q);
        if (d.at(i, t) != 0) {
          swap_rows(d, t, i);
          swap_rows(s.U, t, i);
          restart = true;
        }
      }
      if (restart) continue;
      for (long j = t + 1; j < A.cols && !restart; ++j) {
        if (d.at(t, j) == 0) continue;
        Int q = floor_div(d.at(t, j), d.at(t, t));
        col_axpy(d, j, t, q);
        col_axpy(s.V, j, t, q);
        if (d.at(t, j) != 0) {
          swap_cols(d, t, j);
          swap_cols(s.V, t, j);
          restart = true;
        }
      }
      if (!restart) break;
    }
  }

  // divisibility chain: if d_t does not divide d_{t+1}, fold column t+1 into
  // column t and re-diagonalize the 2x2 corner; repeat to a fixed point
  bool changed = true;
  while (changed) {
    changed = false;
    for (long t = 0; t + 1 < k; ++t) {
      const Int& a = d.at(t, t);
      const Int& b = d.at(t + 1, t + 1);
      if (a == 0 && b != 0) {  // zeros trail: swap them forward
        swap_rows(d, t, t + 1);
        swap_rows(s.U, t, t + 1);
        swap_cols(d, t, t + 1);
        swap_cols(s.V, t, t + 1);
        changed = true;
        continue;
      }
      if (a == 0 || b % a == 0) continue;
      col_axpy(d, t, t + 1, Int(-1));  // col_t += col_{t+1}
      col_axpy(s.V, t, t + 1, Int(-1));
      // re-clear the 2x2 corner (t.. t+1) by the same gcd loop
      while (true) {
        bool restart = false;
        if (d.at(t + 1, t) != 0) {
          Int q = floor_div(d.at(t + 1, t), d.at(t, t));
          row_axpy(d, t + 1, t, q);
          row_axpy(s.U, t + 1, t, q);
          if (d.at(t + 1, t) != 0) {
            swap_rows(d, t, t + 1);
            swap_rows(s.U, t, t + 1);
            restart = true;
          }
        }
        if (restart) continue;
        if (d.at(t, t + 1) != 0) {
          Int q = floor_div(d.at(t, t + 1), d.at(t, t));
          col_axpy(d, t + 1, t, q);
          col_axpy(s.V, t + 1, t, q);
          if (d.at(t, t + 1) != 0) {
            swap_cols(d, t, t + 1);
            swap_cols(s.V, t, t + 1);
            restart = true;
          }
        }
        if (!restart) break;
      }
      changed = true;
    }
  }

  // make the diagonal nonnegative
  for (long t = 0; t < k; ++t) {
    if (d.at(t, t) < 0) {
      for (long j = 0; j < A.cols; ++j) d.at(t, j) = -d.at(t, j);
      for (long j = 0; j < s.U.cols; ++j) s.U.at(t, j) = -s.U.at(t, j);
    }
  }

  s.invariants.resize(k);
  for (long t = 0; t < k; ++t) s.invariants[t] = d.at(t, t);
  return s;
}

Int FgAbelianGroup::order() const {
  if (free_rank > 0) return 0;
  Int o = 1;
  for (const Int& d : torsion) o *= d;
  return o;
}

FgAbelianGroup direct_sum(const FgAbelianGroup& a, const FgAbelianGroup& b) {
  long k = static_cast<long>(a.torsion.size() + b.torsion.size());
  IntMat m(k, k);
  long t = 0;
  for (const Int& d : a.torsion) { m.at(t, t) = d; ++t; }
  for (const Int& d : b.torsion) { m.at(t, t) = d; ++t; }
  QuotientGroup q = quotient_group(k, SublatticeSpec{k, m});
  FgAbelianGroup g = q.group;
  g.free_rank = a.free_rank + b.free_rank;  // the k-dim quotient has no free part
  return g;
}

std::vector<Int> QuotientGroup::canonical_coords(const std::vector<Int>& x) const {
  std::vector<Int> w(n, 0);
  for (long j = 0; j < n; ++j)
    for (long i = 0; i < n; ++i) w[j] += x[i] * V.at(i, j);
  for (long j = 0; j < n; ++j)
    if (diag[j] != 0) mpz_fdiv_r(w[j].get_mpz_t(), w[j].get_mpz_t(), diag[j].get_mpz_t());
  return w;
}

std::vector<Int> QuotientGroup::representative(const std::vector<Int>& x) const {
  std::vector<Int> c = canonical_coords(x);
  std::vector<Int> r(n, 0);
  for (long j = 0; j < n; ++j)
    for (long i = 0; i < n; ++i) r[j] += c[i] * Vinv.at(i, j);
  return r;
}

bool QuotientGroup::same_coset(const std::vector<Int>& x, const std::vector<Int>& y) const {
  return canonical_coords(x) == canonical_coords(y);
}

std::vector<std::vector<Int>> QuotientGroup::all_representatives() const {
  if (!group.is_finite())
    throw math_error("all_representatives: quotient group is infinite");
  std::vector<std::vector<Int>> out;
  std::vector<Int> c(n, 0);
  while (true) {
    std::vector<Int> r(n, 0);
    for (long j = 0; j < n; ++j)
      for (long i = 0; i < n; ++i) r[j] += c[i] * Vinv.at(i, j);
    out.push_back(r);
    long p = n - 1;  // mixed-radix increment, last coordinate fastest
    while (p >= 0) {
      c[p] += 1;
      if (c[p] < diag[p]) break;
      c[p] = 0;
      --p;
    }
    if (p < 0) break;
  }
  return out;
}

QuotientGroup quotient_group(long ambient_rank, const SublatticeSpec& sub) {
  if (sub.ambient_rank != ambient_rank || sub.generators.cols != ambient_rank)
    throw math_error("quotient_group: ambient rank mismatch");
  SmithDecomposition s = smith_normal_form(sub.generators);
  QuotientGroup q;
  q.n = ambient_rank;
  q.V = s.V;
  q.Vinv = unimodular_inverse(s.V);
  q.diag.assign(static_cast<size_t>(ambient_rank), Int(0));
  for (size_t i = 0; i < s.invariants.size(); ++i) q.diag[i] = s.invariants[i];
  for (long i = 0; i < ambient_rank; ++i) {
    if (q.diag[i] == 0)
      q.group.free_rank += 1;
    else if (q.diag[i] >= 2)
      q.group.torsion.push_back(q.diag[i]);
  }
  return q;
}

SublatticeSpec gbeta_characters(const IntMat& beta) {
  if (rank_of(beta) < beta.rows)
    throw math_error(
        "NotFiniteIndex: the image of beta does not have finite index in the target");
  SublatticeSpec m;
  m.ambient_rank = beta.cols;
  m.generators = hermite_row_basis(beta);
  return m;
}

}  // namespace stackfan
