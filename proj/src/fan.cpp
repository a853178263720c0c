#include "stackfan/fan.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace stackfan {

// ---- exact linear feasibility over Q ----------------------------------------
// Rows encode a·x >= rhs as [a_0..a_{n-1}, rhs]; equalities enter as two rows.
// Fourier–Motzkin elimination with primitive-integer normalization and
// deduplication keeps desk-scale systems tiny.

static std::vector<mpq_class> normalize_row(std::vector<mpq_class> r) {
  Int den = 1;
  for (const mpq_class& q : r) {
    Int d(q.get_den());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  Int g = 0;
  std::vector<Int> num(r.size());
  for (size_t i = 0; i < r.size(); ++i) {
    mpq_class scaled = r[i] * mpq_class(den);
    num[i] = Int(scaled.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num[i].get_mpz_t());
  }
  if (g == 0) g = 1;
  for (size_t i = 0; i < r.size(); ++i) r[i] = mpq_class(num[i] / g);
  return r;
}

static bool rational_feasible(long nvars, std::vector<std::vector<mpq_class>> rows) {
  for (long v = 0; v < nvars; ++v) {
    std::vector<std::vector<mpq_class>> pos, neg;
    std::set<std::vector<mpq_class>> keep;
    for (auto& r : rows) {
      if (r[v] > 0)
        pos.push_back(r);
      else if (r[v] < 0)
        neg.push_back(r);
      else
        keep.insert(r);
    }
    for (const auto& p : pos)
      for (const auto& q : neg) {
        // (-q_v) * p + p_v * q eliminates x_v; both multipliers positive.
        std::vector<mpq_class> r(p.size());
        for (size_t i = 0; i < p.size(); ++i) r[i] = -q[v] * p[i] + p[v] * q[i];
        keep.insert(normalize_row(std::move(r)));
        if (keep.size() > 200000) throw resource_limit("feasibility elimination blow-up");
      }
    rows.assign(keep.begin(), keep.end());
    // Constant rows are decidable immediately.
    std::vector<std::vector<mpq_class>> next;
    for (auto& r : rows) {
      bool allzero = true;
      for (long i = 0; i < nvars; ++i)
        if (r[i] != 0) {
          allzero = false;
          break;
        }
      if (allzero) {
        if (r[nvars] > 0) return false;  // 0 >= positive
      } else {
        next.push_back(std::move(r));
      }
    }
    rows = std::move(next);
  }
  for (const auto& r : rows)
    if (r[nvars] > 0) return false;
  return true;
}

// ---- small set helpers -------------------------------------------------------

static bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

static std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

static std::vector<int> difference(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

static IntMat ray_submatrix(const Fan& f, const std::vector<int>& idx) {
  IntMat m((long)idx.size(), f.lattice_rank);
  for (size_t i = 0; i < idx.size(); ++i)
    for (long j = 0; j < f.lattice_rank; ++j) m.at((long)i, j) = f.rays.at(idx[i], j);
  return m;
}

static long cone_rank(const Fan& f, const std::vector<int>& idx) {
  if (idx.empty()) return 0;
  return rank_of(ray_submatrix(f, idx));
}

static bool cone_simplicial(const Fan& f, const std::vector<int>& idx) {
  return cone_rank(f, idx) == (long)idx.size();
}

// Does cone(sigma) have a face whose ray set is exactly S?  Supporting
// functional: phi with phi(v)=0 on S and phi(v)>=1 on sigma\S.
static bool face_of(const Fan& f, const std::vector<int>& sigma, const std::vector<int>& S) {
  long n = f.lattice_rank;
  std::vector<std::vector<mpq_class>> rows;
  for (int j : sigma) {
    std::vector<mpq_class> r(n + 1, 0);
    for (long c = 0; c < n; ++c) r[c] = mpq_class(f.rays.at(j, c));
    bool in_S = std::binary_search(S.begin(), S.end(), j);
    if (in_S) {
      // phi . v = 0: two inequalities
      std::vector<mpq_class> r2(n + 1, 0);
      for (long c = 0; c < n; ++c) r2[c] = -r[c];
      r[n] = 0;
      r2[n] = 0;
      rows.push_back(r);
      rows.push_back(std::move(r2));
    } else {
      r[n] = 1;  // phi . v >= 1
      rows.push_back(std::move(r));
    }
  }
  return rational_feasible(n, std::move(rows));
}

// ---- validation --------------------------------------------------------------

static bool cone_indices_ok(const Fan& f, const std::vector<int>& cone) {
  for (size_t k = 0; k < cone.size(); ++k) {
    if (cone[k] < 0 || cone[k] >= f.rays.rows) return false;
    if (k > 0 && cone[k] <= cone[k - 1]) return false;  // sorted, no duplicates
  }
  return true;
}

ValidationReport validate_fan(const Fan& f) {
  ValidationReport rep;
  auto issue = [&](const std::string& kind, const std::string& detail) {
    rep.issues.push_back({kind, detail});
    rep.valid = false;
  };

  if (f.rays.cols != f.lattice_rank && f.rays.rows > 0)
    issue("index_range", "ray coordinate count does not match lattice_rank");

  for (long i = 0; i < f.rays.rows && rep.valid; ++i) {
    Int g = 0;
    for (long j = 0; j < f.rays.cols; ++j)
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), f.rays.at(i, j).get_mpz_t());
    if (g == 0)
      issue("primitivity", "ray " + std::to_string(i + 1) + " is zero");
    else if (g != 1)
      issue("primitivity",
            "ray " + std::to_string(i + 1) + " is not primitive (content " + g.get_str() + ")");
  }
  for (long i = 0; i < f.rays.rows; ++i)
    for (long j = i + 1; j < f.rays.rows; ++j) {
      bool same = true;
      for (long c = 0; c < f.rays.cols; ++c)
        if (f.rays.at(i, c) != f.rays.at(j, c)) {
          same = false;
          break;
        }
      if (same)
        issue("duplicate_ray",
              "rays " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " coincide");
    }

  for (size_t c = 0; c < f.max_cones.size(); ++c)
    if (!cone_indices_ok(f, f.max_cones[c]))
      issue("index_range", "cone " + std::to_string(c + 1) +
                               " has an out-of-range, unsorted, or repeated ray index");
  if (!rep.valid) return rep;  // later checks assume well-formed indices

  for (size_t a = 0; a < f.max_cones.size(); ++a)
    for (size_t b = 0; b < f.max_cones.size(); ++b) {
      if (a == b) continue;
      if (is_subset(f.max_cones[a], f.max_cones[b]) &&
          !(f.max_cones[a] == f.max_cones[b] && a > b))
        issue("maximality", "cone " + std::to_string(a + 1) + " is contained in cone " +
                                std::to_string(b + 1));
    }

  // Strong convexity: no nontrivial nonnegative dependency among a cone's rays.
  for (size_t c = 0; c < f.max_cones.size(); ++c) {
    const auto& cone = f.max_cones[c];
    if (cone.empty()) continue;
    long k = (long)cone.size();
    long n = f.lattice_rank;
    std::vector<std::vector<mpq_class>> rows;
    for (long coord = 0; coord < n; ++coord) {
      std::vector<mpq_class> r(k + 1, 0), r2(k + 1, 0);
      for (long i = 0; i < k; ++i) {
        r[i] = mpq_class(f.rays.at(cone[i], coord));
        r2[i] = -r[i];
      }
      rows.push_back(std::move(r));
      rows.push_back(std::move(r2));
    }
    for (long i = 0; i < k; ++i) {
      std::vector<mpq_class> r(k + 1, 0);
      r[i] = 1;
      rows.push_back(std::move(r));  // x_i >= 0
    }
    std::vector<mpq_class> s(k + 1, 0);
    for (long i = 0; i < k; ++i) s[i] = 1;
    s[k] = 1;  // sum x_i >= 1
    rows.push_back(std::move(s));
    if (rational_feasible(k, std::move(rows)))
      issue("strong_convexity", "cone " + std::to_string(c + 1) + " contains a line");
  }

  // Overlap: intersection of two maximal cones must be the cone on their
  // common rays.  Exact for simplicial cones; warned otherwise.
  bool all_simplicial = true;
  for (const auto& cone : f.max_cones)
    if (!cone_simplicial(f, cone)) all_simplicial = false;
  if (!all_simplicial)
    rep.warnings.push_back(
        "non-simplicial maximal cone present: pairwise overlap check skipped");
  else {
    for (size_t a = 0; a < f.max_cones.size(); ++a)
      for (size_t b = a + 1; b < f.max_cones.size(); ++b) {
        const auto& A = f.max_cones[a];
        const auto& B = f.max_cones[b];
        std::vector<int> common = intersect(A, B);
        bool bad = false;
        for (int side = 0; side < 2 && !bad; ++side) {
          const auto& P = side == 0 ? A : B;
          const auto& Q = side == 0 ? B : A;
          for (int i : difference(P, common)) {
            // point V.a = W.b with a,b >= 0 and a_i >= 1?
            long ka = (long)P.size(), kb = (long)Q.size();
            long n = f.lattice_rank;
            std::vector<std::vector<mpq_class>> rows;
            for (long coord = 0; coord < n; ++coord) {
              std::vector<mpq_class> r(ka + kb + 1, 0), r2(ka + kb + 1, 0);
              for (long x = 0; x < ka; ++x)
                r[x] = mpq_class(f.rays.at(P[x], coord));
              for (long x = 0; x < kb; ++x)
                r[ka + x] = -mpq_class(f.rays.at(Q[x], coord));
              for (long x = 0; x < ka + kb; ++x) r2[x] = -r[x];
              rows.push_back(std::move(r));
              rows.push_back(std::move(r2));
            }
            for (long x = 0; x < ka + kb; ++x) {
              std::vector<mpq_class> r(ka + kb + 1, 0);
              r[x] = 1;
              rows.push_back(std::move(r));
            }
            std::vector<mpq_class> w(ka + kb + 1, 0);
            long pos_i = (long)(std::find(P.begin(), P.end(), i) - P.begin());
            w[pos_i] = 1;
            w[ka + kb] = 1;  // a_i >= 1
            rows.push_back(std::move(w));
            if (rational_feasible(ka + kb, std::move(rows))) {
              issue("overlap", "cones " + std::to_string(a + 1) + " and " +
                                   std::to_string(b + 1) + " intersect outside their common face");
              bad = true;
              break;
            }
          }
        }
      }
  }
  return rep;
}

// ---- face predicates ---------------------------------------------------------

bool spans_cone(const Fan& f, const std::vector<int>& rayset) {
  std::vector<int> S = rayset;
  std::sort(S.begin(), S.end());
  if (S.empty()) return true;  // the zero cone is a face of every cone
  for (int i : S)
    if (i < 0 || i >= f.rays.rows) throw math_error("spans_cone: ray index out of range");
  for (const auto& cone : f.max_cones) {
    if (!is_subset(S, cone)) continue;
    if (cone_simplicial(f, cone)) return true;  // every subset spans a face
    if (face_of(f, cone, S)) return true;
  }
  return false;
}

std::vector<std::vector<int>> minimal_nonfaces(const Fan& f) {
  long d = f.rays.rows;
  if (d > 20) throw resource_limit("too many rays for non-face enumeration");
  std::vector<std::vector<int>> found;
  // Enumerate by size; a candidate containing a known non-face is skipped, so
  // whatever remains fails spans_cone with all drop-one subsets spanning.
  for (long size = 1; size <= d; ++size) {
    std::vector<int> comb(size);
    for (long i = 0; i < size; ++i) comb[i] = (int)i;
    while (true) {
      bool contains_nonface = false;
      for (const auto& nf : found)
        if (is_subset(nf, comb)) {
          contains_nonface = true;
          break;
        }
      if (!contains_nonface && !spans_cone(f, comb)) found.push_back(comb);
      // next combination
      long i = size - 1;
      while (i >= 0 && comb[i] == d - size + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (long j = i + 1; j < size; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

bool is_smooth(const Fan& f) {
  for (const auto& cone : f.max_cones) {
    if (cone.empty()) continue;
    if ((long)cone.size() > f.lattice_rank) return false;
    SmithDecomposition s = smith_normal_form(ray_submatrix(f, cone));
    if ((long)s.invariants.size() != (long)cone.size()) return false;
    for (const Int& d : s.invariants)
      if (d != 1) return false;
  }
  return true;
}

// Facet ray sets of one maximal cone.
static std::vector<std::vector<int>> cone_facets(const Fan& f, const std::vector<int>& cone) {
  std::vector<std::vector<int>> out;
  long n = f.lattice_rank;
  if (cone.empty()) return out;
  if (cone_simplicial(f, cone)) {
    for (size_t drop = 0; drop < cone.size(); ++drop) {
      std::vector<int> s;
      for (size_t i = 0; i < cone.size(); ++i)
        if (i != drop) s.push_back(cone[i]);
      out.push_back(std::move(s));
    }
    return out;
  }
  // General case: subsets that pass the supporting-hyperplane test with
  // rank n-1.
  long k = (long)cone.size();
  if (k > 20) throw resource_limit("too many rays in one cone");
  for (long mask = 0; mask < (1L << k); ++mask) {
    std::vector<int> s;
    for (long i = 0; i < k; ++i)
      if (mask & (1L << i)) s.push_back(cone[i]);
    if ((long)s.size() == k) continue;
    if (cone_rank(f, s) != n - 1) continue;
    if (face_of(f, cone, s)) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_complete(const Fan& f) {
  long n = f.lattice_rank;
  if (n == 0) return true;  // point fan
  if (f.max_cones.empty()) return false;
  for (const auto& cone : f.max_cones)
    if (cone_rank(f, cone) != n) return false;
  std::map<std::vector<int>, std::vector<size_t>> facet_owners;
  for (size_t c = 0; c < f.max_cones.size(); ++c)
    for (auto& facet : cone_facets(f, f.max_cones[c])) facet_owners[facet].push_back(c);
  for (const auto& [facet, owners] : facet_owners)
    if (owners.size() != 2) return false;
  // facet-adjacency connectivity
  std::vector<char> seen(f.max_cones.size(), 0);
  std::deque<size_t> bfs{0};
  seen[0] = 1;
  while (!bfs.empty()) {
    size_t c = bfs.front();
    bfs.pop_front();
    for (const auto& [facet, owners] : facet_owners)
      if (owners[0] == c || owners[1] == c) {
        size_t o = owners[0] == c ? owners[1] : owners[0];
        if (!seen[o]) {
          seen[o] = 1;
          bfs.push_back(o);
        }
      }
  }
  for (char s : seen)
    if (!s) return false;
  return true;
}

// ---- shelling ----------------------------------------------------------------

namespace {
struct ShellingSearch {
  const Fan& f;
  long m, n;
  std::vector<std::vector<std::vector<int>>> common;  // pairwise ray intersections
  std::vector<std::vector<char>> nbr;                 // meets in dimension n-1
  std::vector<char> used;
  std::vector<long> order;
  std::vector<std::vector<int>> tau, tau_prime;

  explicit ShellingSearch(const Fan& fan) : f(fan) {
    m = (long)f.max_cones.size();
    n = f.lattice_rank;
    common.assign(m, std::vector<std::vector<int>>(m));
    nbr.assign(m, std::vector<char>(m, 0));
    for (long i = 0; i < m; ++i)
      for (long j = 0; j < m; ++j) {
        if (i == j) continue;
        common[i][j] = intersect(f.max_cones[i], f.max_cones[j]);
        nbr[i][j] = cone_rank(f, common[i][j]) == n - 1;
      }
    used.assign(m, 0);
  }

  bool place(long pos) {
    if (pos == m) return true;
    for (long c = 0; c < m; ++c) {
      if (used[c]) continue;
      // tau = sigma_c meet all facet-neighbors that are still unplaced;
      // those are exactly the cones that will come later, so tau is final.
      std::vector<int> t = f.max_cones[c];
      for (long u = 0; u < m; ++u)
        if (u != c && !used[u] && nbr[c][u]) t = intersect(t, common[c][u]);
      std::vector<int> tp = difference(f.max_cones[c], t);
      bool ok = true;
      for (long p = 0; p < pos && ok; ++p)
        if (is_subset(t, f.max_cones[order[p]])) ok = false;  // tau_i in earlier cone
      for (long u = 0; u < m && ok; ++u)
        if (u != c && !used[u] && is_subset(tp, f.max_cones[u])) ok = false;  // tau'_i later
      if (!ok) continue;
      used[c] = 1;
      order.push_back(c);
      tau.push_back(t);
      tau_prime.push_back(tp);
      if (place(pos + 1)) return true;
      used[c] = 0;
      order.pop_back();
      tau.pop_back();
      tau_prime.pop_back();
    }
    return false;
  }
};
}  // namespace

ShellingOrder shelling_order(const Fan& f) {
  if (!is_smooth(f) || !is_complete(f))
    throw math_error("NotCompleteOrSmooth: shelling requires a smooth complete fan");
  ShellingSearch s(f);
  if (!s.place(0)) throw math_error("NoOrderFound: no maximal-cone order satisfies the face conditions");
  ShellingOrder so{std::move(s.order), std::move(s.tau), std::move(s.tau_prime)};
  std::string why;
  if (!verify_shelling(f, so, &why))
    throw math_error("shelling search produced an order failing verification: " + why);
  return so;
}

bool verify_shelling(const Fan& f, const ShellingOrder& so, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  long m = (long)f.max_cones.size();
  long n = f.lattice_rank;
  if ((long)so.order.size() != m || (long)so.tau.size() != m || (long)so.tau_prime.size() != m)
    return fail("order/tau size mismatch");
  std::vector<char> seen(m, 0);
  for (long x : so.order) {
    if (x < 0 || x >= m || seen[x]) return fail("order is not a permutation");
    seen[x] = 1;
  }
  for (long i = 0; i < m; ++i) {
    const auto& sigma = f.max_cones[so.order[i]];
    // Recompute tau_i from the definition: meet with every later cone
    // touching sigma_i in dimension n-1.
    std::vector<int> t = sigma;
    bool any = false;
    for (long j = i + 1; j < m; ++j) {
      std::vector<int> c = intersect(sigma, f.max_cones[so.order[j]]);
      if (cone_rank(f, c) == n - 1) {
        t = intersect(t, c);
        any = true;
      }
    }
    if (!any) t = sigma;
    if (t != so.tau[i]) return fail("tau mismatch at position " + std::to_string(i + 1));
    std::vector<int> tp = difference(sigma, t);
    if (tp != so.tau_prime[i]) return fail("tau' mismatch at position " + std::to_string(i + 1));
    if (!intersect(t, tp).empty()) return fail("tau and tau' overlap");
    if ((long)(t.size() + tp.size()) != n) return fail("tau/tau' dimensions do not sum to n");
    for (long j = 0; j < m; ++j) {
      if (is_subset(t, f.max_cones[so.order[j]]) && i > j)
        return fail("tau condition violated at (" + std::to_string(i + 1) + "," +
                    std::to_string(j + 1) + ")");
      if (is_subset(tp, f.max_cones[so.order[j]]) && j > i)
        return fail("tau' condition violated at (" + std::to_string(i + 1) + "," +
                    std::to_string(j + 1) + ")");
    }
  }
  return true;
}

// ---- stacky reduction ----------------------------------------------------------

SublatticeSpec character_sublattice(const StackyFan& sf) {
  long n = sf.fan.lattice_rank;
  switch (sf.group.kind) {
    case GroupKind::Trivial:
      return {n, IntMat::identity(n)};
    case GroupKind::FullTorus:
      return {n, IntMat(0, n)};
    case GroupKind::Subgroup: {
      if (sf.group.subgroup.ambient_rank != n)
        throw math_error("subgroup ambient rank does not match lattice rank");
      return {n, hermite_row_basis(sf.group.subgroup.generators)};
    }
    case GroupKind::Beta:
      throw math_error("character_sublattice: beta form must be reduced first");
  }
  throw math_error("character_sublattice: unknown group kind");
}

StackyReduction stacky_reduction(const StackyFan& sf) {
  if (sf.group.kind != GroupKind::Beta)
    throw math_error("stacky_reduction requires a beta-form stacky fan");
  const Fan& fan = sf.fan;
  long n = fan.lattice_rank;
  const FgAbelianGroup& N = sf.group.target;
  long s = (long)N.torsion.size();
  long rtil = N.free_rank + s;
  const IntMat& B_in = sf.group.beta;
  if (B_in.rows != rtil || (B_in.cols != n && rtil > 0))
    throw math_error("beta matrix shape does not match target presentation");

  // Finite-index image in N: the free-part rows must have full rank.
  IntMat bfree(N.free_rank, n);
  for (long i = 0; i < N.free_rank; ++i)
    for (long j = 0; j < n; ++j) bfree.at(i, j) = B_in.at(i, j);
  if (rank_of(bfree) != N.free_rank)
    throw math_error("NotFiniteIndex: image of beta is not of finite index in the target");

  // Canonical lift: torsion-row entries reduced into [0, d_i).
  IntMat beta_prime(rtil, n + s);
  for (long i = 0; i < rtil; ++i)
    for (long j = 0; j < n; ++j) {
      Int v = B_in.at(i, j);
      if (i >= N.free_rank) {
        const Int& d = N.torsion[i - N.free_rank];
        mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
      }
      beta_prime.at(i, j) = v;
    }
  for (long i = 0; i < s; ++i) beta_prime.at(N.free_rank + i, n + i) = N.torsion[i];

  StackyReduction out;
  out.s = s;
  out.beta_prime = beta_prime;

  // Fan on L + Z^s: original rays padded, s coordinate rays appended, the
  // cone tau on the new rays adjoined to every cone (a fan with no listed
  // cones contributes the zero cone).
  Fan fp;
  fp.lattice_rank = n + s;
  long d = fan.rays.rows;
  fp.rays = IntMat(d + s, n + s);
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < n; ++j) fp.rays.at(i, j) = fan.rays.at(i, j);
  for (long i = 0; i < s; ++i) fp.rays.at(d + i, n + i) = 1;
  std::vector<int> tau;
  for (long i = 0; i < s; ++i) tau.push_back((int)(d + i));
  out.tau_rays = tau;
  std::vector<std::vector<int>> cones = fan.max_cones;
  if (cones.empty()) cones.push_back({});
  for (auto& cone : cones) {
    for (int r : tau) cone.push_back(r);
    std::sort(cone.begin(), cone.end());
  }
  if (s == 0) {
    fp = fan;  // passthrough
  } else {
    fp.max_cones = std::move(cones);
  }

  IntMat mprime = hermite_row_basis(beta_prime);
  if (mprime.rows != rtil)
    throw math_error("NotFiniteIndex: beta' rows are not independent");
  out.g_dual = quotient_group(n + s, {n + s, mprime});
  out.reduced.fan = fp;
  out.reduced.group.kind = GroupKind::Subgroup;
  out.reduced.group.subgroup = {n + s, mprime};

  // F-part: characters (chi, 0) in M'; H-part: characters of the kernel of
  // the action on the original torus.
  IntMat tail(mprime.rows, s);
  for (long i = 0; i < mprime.rows; ++i)
    for (long j = 0; j < s; ++j) tail.at(i, j) = mprime.at(i, n + j);
  IntMat K = kernel_lattice(tail.transpose());
  IntMat mf(K.rows, n);
  for (long i = 0; i < K.rows; ++i)
    for (long j = 0; j < n; ++j) {
      Int acc = 0;
      for (long k = 0; k < mprime.rows; ++k) acc += K.at(i, k) * mprime.at(k, j);
      mf.at(i, j) = acc;
    }
  out.mprime_f = {n, hermite_row_basis(mf)};

  IntMat hgens(mprime.rows + n, n + s);
  for (long i = 0; i < mprime.rows; ++i)
    for (long j = 0; j < n + s; ++j) hgens.at(i, j) = mprime.at(i, j);
  for (long i = 0; i < n; ++i) hgens.at(mprime.rows + i, i) = 1;
  out.h_dual = quotient_group(n + s, {n + s, hgens}).group;

  FgAbelianGroup fdual = quotient_group(n, out.mprime_f).group;
  FgAbelianGroup sum = direct_sum(fdual, out.h_dual);
  const FgAbelianGroup& g = out.g_dual.group;
  out.split_ok = sum.free_rank == g.free_rank && sum.torsion == g.torsion;
  return out;
}

}  // namespace stackfan
