#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <deque>
#include <functional>
#include <random>

#include "stackfan/intmat.hpp"

using namespace stackfan;

namespace {

IntMat random_matrix(std::mt19937_64& rng, long maxdim, long amp) {
  std::uniform_int_distribution<long> dim(0, maxdim);
  long r = dim(rng), c = dim(rng);
  std::uniform_int_distribution<long> ent(-amp, amp);
  IntMat m(r, c);
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < c; ++j) m.at(i, j) = ent(rng);
  return m;
}

void check_snf_identities(const IntMat& a) {
  SmithDecomposition s = smith_normal_form(a);
  // U*A*V = D exactly
  CHECK(s.U.mul(a).mul(s.V) == s.D);
  // unimodularity, via the independent Bareiss determinant
  CHECK(abs(det(s.U)) == 1);
  CHECK(abs(det(s.V)) == 1);
  // diagonal shape, nonnegativity, divisibility chain, zeros trailing
  for (long i = 0; i < s.D.rows; ++i)
    for (long j = 0; j < s.D.cols; ++j)
      if (i != j) CHECK(s.D.at(i, j) == 0);
  for (size_t i = 0; i < s.invariants.size(); ++i) CHECK(s.invariants[i] >= 0);
  for (size_t i = 0; i + 1 < s.invariants.size(); ++i) {
    const Int& a0 = s.invariants[i];
    const Int& a1 = s.invariants[i + 1];
    if (a0 == 0)
      CHECK(a1 == 0);
    else
      CHECK(a1 % a0 == 0);
  }
}

// gcd of all k x k minors; independent characterization of d1*...*dk
Int minor_gcd(const IntMat& m, long k) {
  std::vector<long> ri(k), ci(k);
  Int g = 0;
  // enumerate k-subsets of rows and of columns
  std::vector<long> rsel, csel;
  std::function<void(long, long)> rows_rec, cols_rec;
  cols_rec = [&](long start, long depth) {
    if (depth == k) {
      IntMat sub(k, k);
      for (long i = 0; i < k; ++i)
        for (long j = 0; j < k; ++j) sub.at(i, j) = m.at(rsel[i], csel[j]);
      Int d = det(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      return;
    }
    for (long c = start; c <= m.cols - (k - depth); ++c) {
      csel.push_back(c);
      cols_rec(c + 1, depth + 1);
      csel.pop_back();
    }
  };
  rows_rec = [&](long start, long depth) {
    if (depth == k) {
      cols_rec(0, 0);
      return;
    }
    for (long r = start; r <= m.rows - (k - depth); ++r) {
      rsel.push_back(r);
      rows_rec(r + 1, depth + 1);
      rsel.pop_back();
    }
  };
  rows_rec(0, 0);
  return g;
}

// Brute-force coset count of Z^n / <rows>, independent of the SNF path:
// breadth-first closure with an HNF membership oracle on differences.
long bfs_coset_count(const IntMat& gens, long n, long cap) {
  IntMat h = hermite_row_basis(gens);
  auto in_lattice = [&](const std::vector<Int>& v) {
    return in_row_space(h, v);
  };
  std::vector<std::vector<Int>> reps;
  std::deque<std::vector<Int>> queue;
  reps.emplace_back(n, Int(0));
  queue.push_back(reps.back());
  while (!queue.empty()) {
    std::vector<Int> v = queue.front();
    queue.pop_front();
    for (long i = 0; i < n; ++i)
      for (int s : {1, -1}) {
        std::vector<Int> w = v;
        w[i] += s;
        bool known = false;
        for (const auto& r : reps) {
          std::vector<Int> d(n);
          for (long j = 0; j < n; ++j) d[j] = w[j] - r[j];
          if (in_lattice(d)) { known = true; break; }
        }
        if (!known) {
          reps.push_back(w);
          queue.push_back(w);
          REQUIRE(static_cast<long>(reps.size()) <= cap);
        }
      }
  }
  return static_cast<long>(reps.size());
}

}  // namespace

TEST_CASE("smith_normal_form on frozen examples") {
  IntMat a = IntMat::from_rows({{2, 0}, {0, 3}}, 2);
  SmithDecomposition s = smith_normal_form(a);
  CHECK(s.invariants == std::vector<Int>{1, 6});
  check_snf_identities(a);

  IntMat id2 = IntMat::identity(2);
  CHECK(smith_normal_form(id2).invariants == std::vector<Int>{1, 1});

  IntMat b = IntMat::from_rows({{2, 4}, {6, 8}}, 2);
  SmithDecomposition sb = smith_normal_form(b);
  CHECK(sb.invariants == std::vector<Int>{2, 4});
  check_snf_identities(b);
  // d1 = gcd of entries, d1*d2 = |det|
  CHECK(minor_gcd(b, 1) == 2);
  CHECK(abs(det(b)) == 8);
}

TEST_CASE("smith_normal_form identities on seeded random matrices") {
  std::mt19937_64 rng(20260822);
  for (int it = 0; it < 60; ++it) {
    IntMat a = random_matrix(rng, 6, 50);
    check_snf_identities(a);
  }
}

TEST_CASE("smith invariants match the gcd-of-minors characterization") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 40; ++it) {
    IntMat a = random_matrix(rng, 3, 9);
    SmithDecomposition s = smith_normal_form(a);
    Int acc = 1;
    for (long k = 1; k <= std::min(a.rows, a.cols); ++k) {
      Int mg = minor_gcd(a, k);
      Int prod = 1;
      for (long i = 0; i < k; ++i) prod *= s.invariants[i];
      CHECK(mg == prod);  // gcd of k x k minors equals d1*...*dk (0 when rank < k)
      acc = mg;
    }
    (void)acc;
  }
}

TEST_CASE("kernel_lattice frozen examples") {
  CHECK(kernel_lattice(IntMat::from_rows({{1, 1}}, 2)) ==
        IntMat::from_rows({{1, -1}}, 2));
  CHECK(kernel_lattice(IntMat::from_rows({{1, 2}}, 2)) ==
        IntMat::from_rows({{2, -1}}, 2));
  CHECK(kernel_lattice(IntMat::from_rows({{0}}, 1)) == IntMat::from_rows({{1}}, 1));
}

TEST_CASE("kernel_lattice properties on seeded matrices") {
  std::mt19937_64 rng(99);
  for (int it = 0; it < 60; ++it) {
    IntMat a = random_matrix(rng, 5, 8);
    IntMat k = kernel_lattice(a);
    CHECK(k.cols == a.cols);
    for (long i = 0; i < k.rows; ++i)
      for (long r = 0; r < a.rows; ++r) {
        Int dot = 0;
        for (long j = 0; j < a.cols; ++j) dot += a.at(r, j) * k.at(i, j);
        CHECK(dot == 0);
      }
    CHECK(k.rows + rank_of(a) == a.cols);
  }
}

TEST_CASE("hermite_row_basis is canonical on the row space") {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<long> ent(-4, 4);
  for (int it = 0; it < 40; ++it) {
    IntMat a = random_matrix(rng, 4, 6);
    IntMat h1 = hermite_row_basis(a);
    // mix rows by a random sequence of elementary operations
    IntMat b = a;
    for (int step = 0; step < 10 && b.rows >= 2; ++step) {
      long i = std::uniform_int_distribution<long>(0, b.rows - 1)(rng);
      long j = std::uniform_int_distribution<long>(0, b.rows - 1)(rng);
      if (i == j) continue;
      Int q = ent(rng);
      for (long c = 0; c < b.cols; ++c) b.at(i, c) += q * b.at(j, c);
    }
    CHECK(hermite_row_basis(b) == h1);
  }
}

TEST_CASE("quotient_group frozen examples") {
  QuotientGroup q1 = quotient_group(1, {1, IntMat::from_rows({{2}}, 1)});
  CHECK(q1.group.free_rank == 0);
  CHECK(q1.group.torsion == std::vector<Int>{2});

  QuotientGroup q2 = quotient_group(2, {2, IntMat::from_rows({{1, 1}}, 2)});
  CHECK(q2.group.free_rank == 1);
  CHECK(q2.group.torsion.empty());

  QuotientGroup q3 = quotient_group(2, {2, IntMat::from_rows({{2, 0}, {0, 3}}, 2)});
  CHECK(q3.group.free_rank == 0);
  CHECK(q3.group.torsion == std::vector<Int>{6});
  CHECK(q3.group.order() == 6);
  CHECK(bfs_coset_count(IntMat::from_rows({{2, 0}, {0, 3}}, 2), 2, 100) == 6);
}

TEST_CASE("quotient_group order matches brute-force coset enumeration") {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<long> dim(1, 3), ent(-4, 4);
  int done = 0;
  while (done < 25) {
    long n = dim(rng);
    long m = dim(rng);
    IntMat g(m, n);
    for (long i = 0; i < m; ++i)
      for (long j = 0; j < n; ++j) g.at(i, j) = ent(rng);
    if (rank_of(g) < n) continue;  // infinite quotient: BFS would not halt
    QuotientGroup q = quotient_group(n, {n, g});
    REQUIRE(q.group.is_finite());
    Int order = q.group.order();
    if (order > 600) continue;
    CHECK(Int(bfs_coset_count(g, n, 700)) == order);
    ++done;
  }
}

TEST_CASE("coset representatives are canonical and complete") {
  IntMat g = IntMat::from_rows({{2, 1}, {0, 3}}, 2);
  QuotientGroup q = quotient_group(2, {2, g});
  CHECK(q.group.order() == 6);
  auto reps = q.all_representatives();
  REQUIRE(reps.size() == 6);
  for (size_t i = 0; i < reps.size(); ++i) {
    // representative is a fixed point of reduction
    CHECK(q.representative(reps[i]) == reps[i]);
    for (size_t j = i + 1; j < reps.size(); ++j) CHECK(!q.same_coset(reps[i], reps[j]));
  }
  // shifting by a generator row stays in the same coset
  std::vector<Int> x{5, -7};
  std::vector<Int> y{5 + 2, -7 + 1};
  CHECK(q.same_coset(x, y));
}

TEST_CASE("gbeta_characters frozen examples") {
  SublatticeSpec m1 = gbeta_characters(IntMat::from_rows({{1, 2}}, 2));
  CHECK(m1.ambient_rank == 2);
  CHECK(m1.generators == IntMat::from_rows({{1, 2}}, 2));
  QuotientGroup q1 = quotient_group(2, m1);
  CHECK(q1.group.free_rank == 1);
  CHECK(q1.group.torsion.empty());

  SublatticeSpec m2 = gbeta_characters(IntMat::identity(3));
  CHECK(quotient_group(3, m2).group.is_trivial());

  SublatticeSpec m3 = gbeta_characters(IntMat::from_rows({{2}}, 1));
  QuotientGroup q3 = quotient_group(1, m3);
  CHECK(q3.group.free_rank == 0);
  CHECK(q3.group.torsion == std::vector<Int>{2});

  CHECK_THROWS_AS(gbeta_characters(IntMat::from_rows({{1, 2}, {2, 4}}, 2)), math_error);
  CHECK_THROWS_AS(gbeta_characters(IntMat::from_rows({{0, 0}}, 2)), math_error);
}

TEST_CASE("gbeta on diagonal weights reproduces the direct SNF group") {
  // beta = diag(q0..qn) as a map Z^{n+1} -> Z^{n+1}
  IntMat beta = IntMat::from_rows({{1, 0, 0}, {0, 2, 0}, {0, 0, 6}}, 3);
  SublatticeSpec m = gbeta_characters(beta);
  QuotientGroup q = quotient_group(3, m);
  SmithDecomposition s = smith_normal_form(beta);
  std::vector<Int> expected;
  for (const Int& d : s.invariants)
    if (d >= 2) expected.push_back(d);
  CHECK(q.group.torsion == expected);
  CHECK(q.group.free_rank == 0);
}

TEST_CASE("direct_sum normalizes invariant factors") {
  FgAbelianGroup z2{0, {2}}, z3{0, {3}};
  FgAbelianGroup s = direct_sum(z2, z3);
  CHECK(s.free_rank == 0);
  CHECK(s.torsion == std::vector<Int>{6});

  FgAbelianGroup t = direct_sum(z2, z2);
  CHECK(t.torsion == std::vector<Int>{2, 2});

  FgAbelianGroup f{1, {}};
  FgAbelianGroup u = direct_sum(f, z2);
  CHECK(u.free_rank == 1);
  CHECK(u.torsion == std::vector<Int>{2});
}

TEST_CASE("unimodular_inverse round-trips") {
  IntMat m = IntMat::from_rows({{1, 2, 0}, {0, 1, 3}, {0, 0, 1}}, 3);
  IntMat inv = unimodular_inverse(m);
  CHECK(inv.mul(m) == IntMat::identity(3));
  CHECK(m.mul(inv) == IntMat::identity(3));
  CHECK_THROWS_AS(unimodular_inverse(IntMat::from_rows({{2, 0}, {0, 1}}, 2)), math_error);
}
