#pragma once
#include <gmpxx.h>

#include <optional>
#include <vector>

#include "stackfan/errors.hpp"

namespace stackfan {

using Int = mpz_class;

// Dense row-major integer matrix with arbitrary-precision entries.
// Vectors produced or consumed by lattice operations are rows.
struct IntMat {
  long rows = 0;
  long cols = 0;
  std::vector<Int> a;

  IntMat() = default;
  IntMat(long r, long c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  static IntMat identity(long n);
  static IntMat from_rows(const std::vector<std::vector<long>>& rws, long ncols);

  Int& at(long i, long j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Int& at(long i, long j) const { return a[static_cast<size_t>(i) * cols + j]; }

  std::vector<Int> row(long i) const;
  void set_row(long i, const std::vector<Int>& v);

  IntMat mul(const IntMat& b) const;
  IntMat transpose() const;
  IntMat vstack(const IntMat& b) const;  // rows of *this, then rows of b

  bool operator==(const IntMat& b) const { return rows == b.rows && cols == b.cols && a == b.a; }
};

// Exact determinant of a square matrix (fraction-free Bareiss elimination).
Int det(const IntMat& m);

// Rank over the rationals (= rank over Z of the row space).
long rank_of(const IntMat& m);

// U*A*V = D with U, V unimodular and D diagonal, d1 | d2 | ..., di >= 0,
// zero invariant factors trailing.  `invariants` is the diagonal of D.
struct SmithDecomposition {
  IntMat U, D, V;
  std::vector<Int> invariants;
};

// Minimal-absolute-value pivoting with a deterministic (row, col) tie-break,
// so identical inputs always give identical decompositions.
SmithDecomposition smith_normal_form(const IntMat& A);

// Canonical basis of the row space of A: row-style Hermite normal form with
// positive pivots, entries above each pivot reduced into [0, pivot), zero
// rows dropped.  Equal row spaces produce byte-identical bases.
IntMat hermite_row_basis(const IntMat& A);

// Basis (as rows, Hermite-reduced) of { x : A * x^T = 0 }.
IntMat kernel_lattice(const IntMat& A);

// Exact membership of v in the Z-row-space of A (any generating rows).
bool in_row_space(const IntMat& A, const std::vector<Int>& v);

// Integer coordinates x with x*A = v, when they exist (A need not be square).
std::optional<std::vector<Int>> solve_row_combination(const IntMat& A, const std::vector<Int>& v);

// Finitely generated abelian group Z^free_rank + Z/d1 + ... in invariant-
// factor form: every di >= 2 and di | d(i+1).
struct FgAbelianGroup {
  long free_rank = 0;
  std::vector<Int> torsion;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool is_finite() const { return free_rank == 0; }
  // Group order; 0 stands for infinite.
  Int order() const;
  bool operator==(const FgAbelianGroup& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
};

// Invariant factors of the direct sum of two groups (re-normalized into a
// single divisibility chain).
FgAbelianGroup direct_sum(const FgAbelianGroup& a, const FgAbelianGroup& b);

// A subgroup of Z^ambient_rank given by (not necessarily independent or
// saturated) generating rows.
struct SublatticeSpec {
  long ambient_rank = 0;
  IntMat generators;  // generators.cols == ambient_rank
};

// The quotient Z^n / <rows of R> together with the change-of-basis data
// needed to name cosets: with U*R*V = D, a row vector x has w-coordinates
// w = x*V, two vectors are congruent iff their w-coordinates agree modulo
// diag, and reducing w_i into [0, d_i) (free coordinates untouched) gives
// the canonical label of the coset of x.
struct QuotientGroup {
  long n = 0;
  FgAbelianGroup group;
  IntMat V;                // n x n unimodular, from the SNF of the generators
  IntMat Vinv;             // inverse of V
  std::vector<Int> diag;   // length n, entry 0 marks a free coordinate

  std::vector<Int> canonical_coords(const std::vector<Int>& x) const;
  // The canonical representative of the coset of x, back in Z^n.
  std::vector<Int> representative(const std::vector<Int>& x) const;
  bool same_coset(const std::vector<Int>& x, const std::vector<Int>& y) const;
  // All coset representatives in a fixed lexicographic order; requires the
  // quotient to be finite.
  std::vector<std::vector<Int>> all_representatives() const;
};

QuotientGroup quotient_group(long ambient_rank, const SublatticeSpec& sub);

// Characters of G_beta for beta : L -> N between free lattices, encoded as
// the sublattice M' = beta^*(N^dual) inside Z^{rank L}: the rows of the beta
// matrix (rows = target coordinates, columns = images of the L-basis).
// quotient_group(rank L, result) is then the character group of G_beta.
// Throws math_error("NotFiniteIndex...") unless the image of beta has full
// rank in N (finite cokernel).
SublatticeSpec gbeta_characters(const IntMat& beta);

// Unimodular inverse; requires |det| = 1 (internal helper, exposed for tests).
IntMat unimodular_inverse(const IntMat& m);

}  // namespace stackfan
