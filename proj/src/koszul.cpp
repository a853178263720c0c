#include "stackfan/koszul.hpp"

#include <algorithm>
#include <map>

#include "stackfan/errors.hpp"

namespace stackfan {

namespace {

std::vector<std::vector<int>> subsets_of_size(long r, long s) {
  std::vector<std::vector<int>> out;
  if (s < 0 || s > r) return out;
  if (s == 0) {
    out.push_back({});
    return out;
  }
  std::vector<int> comb((size_t)s);
  for (long i = 0; i < s; ++i) comb[(size_t)i] = (int)i;
  while (true) {
    out.push_back(comb);
    long i = s - 1;
    while (i >= 0 && comb[(size_t)i] == r - s + i) --i;
    if (i < 0) break;
    ++comb[(size_t)i];
    for (long j = i + 1; j < s; ++j) comb[(size_t)j] = comb[(size_t)j - 1] + 1;
  }
  return out;
}

bool certify_regular(long arity, const std::vector<LaurentPoly>& seq) {
  if (seq.empty()) return true;
  IntMat expo((long)seq.size(), arity);
  for (size_t i = 0; i < seq.size(); ++i) {
    const LaurentPoly& p = seq[i];
    if (p.arity != arity || p.terms.size() != 2) return false;
    Expo zero(arity, 0);
    auto it0 = p.terms.find(zero);
    if (it0 == p.terms.end()) return false;
    auto it1 = p.terms.begin();
    if (it1->first == zero) ++it1;
    // +-(t^e - 1): the two coefficients are opposite units
    if (it0->second + it1->second != 0) return false;
    if (it0->second != 1 && it0->second != -1) return false;
    for (long j = 0; j < arity; ++j) expo.at((long)i, j) = it1->first[(size_t)j];
  }
  return rank_of(expo) == (long)seq.size();
}

// ---- finite regime: integer matrices on a free quotient ---------------------

struct FiniteQuotient {
  long N = 0;
  std::vector<Expo> basis;
  std::map<Expo, long> index;
  std::vector<IntMat> mult;  // action of each sequence element
};

std::vector<Int> expand_in_basis(const LaurentPoly& p, const FiniteQuotient& fq) {
  std::vector<Int> v((size_t)fq.N, 0);
  for (const auto& [e, c] : p.terms) {
    auto it = fq.index.find(e);
    if (it == fq.index.end())
      throw math_error("normal form left the standard monomial basis");
    v[(size_t)it->second] = c;
  }
  return v;
}

FiniteQuotient build_finite_quotient(const GroebnerBasis& gI, const QuotientReport& q,
                                     const std::vector<LaurentPoly>& seq) {
  FiniteQuotient fq;
  fq.N = q.z_rank;
  fq.basis = q.standard_monomials;
  for (long k = 0; k < fq.N; ++k) fq.index[fq.basis[(size_t)k]] = k;
  for (const LaurentPoly& x : seq) {
    IntMat m(fq.N, fq.N);
    for (long k = 0; k < fq.N; ++k) {
      LaurentPoly prod = x * LaurentPoly::monomial(fq.basis[(size_t)k]);
      std::vector<Int> row = expand_in_basis(normal_form(prod, gI), fq);
      m.set_row(k, row);
    }
    fq.mult.push_back(std::move(m));
  }
  return fq;
}

// Differential from degree s to degree s-1 in the row convention: an element
// of degree s is a row vector of length N * C(r,s), and its image is
// v * matrix.
IntMat koszul_matrix(const FiniteQuotient& fq, long r, long s) {
  auto up = subsets_of_size(r, s);
  auto down = subsets_of_size(r, s - 1);
  std::map<std::vector<int>, long> down_index;
  for (size_t i = 0; i < down.size(); ++i) down_index[down[i]] = (long)i;
  IntMat m(fq.N * (long)up.size(), fq.N * (long)down.size());
  for (size_t a = 0; a < up.size(); ++a) {
    const auto& S = up[a];
    for (size_t k = 0; k < S.size(); ++k) {
      std::vector<int> T = S;
      T.erase(T.begin() + (long)k);
      long b = down_index.at(T);
      long sign = (k % 2 == 0) ? 1 : -1;
      const IntMat& X = fq.mult[(size_t)S[k]];
      for (long i = 0; i < fq.N; ++i)
        for (long j = 0; j < fq.N; ++j)
          m.at((long)a * fq.N + i, b * fq.N + j) += sign * X.at(i, j);
    }
  }
  return m;
}

LaurentPoly vector_to_poly(const std::vector<Int>& v, long offset, const FiniteQuotient& fq,
                           long arity) {
  LaurentPoly p(arity);
  for (long k = 0; k < fq.N; ++k) p.add_term(fq.basis[(size_t)k], v[(size_t)(offset + k)]);
  return p;
}

void finite_regime(TorResult& out, long arity, const FiniteQuotient& fq, long r, long s_max) {
  for (long s = 0; s <= s_max; ++s) {
    TorDegree deg;
    deg.s = s;
    deg.group_determined = true;
    if (s > r && s > 0) {
      deg.zero = true;
      out.degrees.push_back(std::move(deg));
      continue;
    }
    long blocks = (long)subsets_of_size(r, s).size();
    long dim = fq.N * blocks;
    IntMat cycles = s == 0 ? IntMat::identity(dim) : kernel_lattice(koszul_matrix(fq, r, s).transpose());
    IntMat bmat = s + 1 <= r ? koszul_matrix(fq, r, s + 1) : IntMat(0, dim);
    IntMat coords(bmat.rows, cycles.rows);
    for (long i = 0; i < bmat.rows; ++i) {
      auto x = solve_row_combination(cycles, bmat.row(i));
      if (!x) throw math_error("boundary escaped the cycle lattice");
      coords.set_row(i, *x);
    }
    QuotientGroup qg = quotient_group(cycles.rows, {cycles.rows, coords});
    deg.zero = qg.group.is_trivial();
    deg.z_rank = qg.group.free_rank;
    deg.torsion = qg.group.torsion;
    if (!deg.zero) {
      // generators: free directions first, then torsion directions
      std::vector<long> dirs;
      for (long i = 0; i < qg.n; ++i)
        if (qg.diag[(size_t)i] == 0) dirs.push_back(i);
      for (long i = 0; i < qg.n; ++i)
        if (qg.diag[(size_t)i] >= 2) dirs.push_back(i);
      for (long i : dirs) {
        // lift the quotient generator through the cycle basis
        std::vector<Int> amb((size_t)dim, 0);
        for (long z = 0; z < cycles.rows; ++z) {
          const Int& c = qg.Vinv.at(i, z);
          if (c == 0) continue;
          for (long j = 0; j < dim; ++j) amb[(size_t)j] += c * cycles.at(z, j);
        }
        std::vector<LaurentPoly> gen;
        for (long b = 0; b < blocks; ++b) gen.push_back(vector_to_poly(amb, b * fq.N, fq, arity));
        deg.generators.push_back(std::move(gen));
      }
    }
    out.degrees.push_back(std::move(deg));
  }
}

// ---- infinite regime: syzygy computations over the polynomial model ----------

// Rows of the Koszul differential as module elements over npos = C(r,s-1)
// positions, in the 2*arity-variable polynomial model.
std::vector<MPoly> koszul_rows(const std::vector<LaurentPoly>& seq, long r, long s) {
  auto up = subsets_of_size(r, s);
  auto down = subsets_of_size(r, s - 1);
  std::map<std::vector<int>, long> down_index;
  for (size_t i = 0; i < down.size(); ++i) down_index[down[i]] = (long)i;
  long npos = (long)down.size();
  std::vector<MPoly> rows;
  for (const auto& S : up) {
    MPoly row;
    for (size_t k = 0; k < S.size(); ++k) {
      std::vector<int> T = S;
      T.erase(T.begin() + (long)k);
      long b = down_index.at(T);
      long sign = (k % 2 == 0) ? 1 : -1;
      MPoly term = laurent_to_mpoly(seq[(size_t)S[k]], b, npos);
      mpoly_add_scaled(row, term, sign, PP((size_t)(2 * seq[(size_t)S[k]].arity), 0));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// Copies of the ideal's reduced basis (unit relations included) placed in
// every module position.
std::vector<MPoly> ideal_inflations(const std::vector<MPoly>& rel_basis, long npos) {
  std::vector<MPoly> out;
  for (long p = 0; p < npos; ++p)
    for (const MPoly& f : rel_basis) {
      MPoly g;
      for (const auto& [k, c] : f) g.emplace(make_mkey(p, k.pp, npos), c);
      out.push_back(std::move(g));
    }
  return out;
}

void infinite_regime(TorResult& out, long arity, const std::vector<LaurentPoly>& seq,
                     const GroebnerBasis& gI, long r, long s_max, const GBOptions& opt) {
  long nvars = 2 * arity;
  // The quotient ideal's reduced basis in the polynomial model (unit
  // relations included) doubles as the inflation generators; the Laurent
  // conversion below drops the unit relations, which the plain ideal
  // computation re-adds itself.
  const std::vector<MPoly>& rel = gI.gb.basis;
  std::vector<LaurentPoly> rel_laurent;
  for (const MPoly& f : rel) {
    LaurentPoly lf = mpoly_to_laurent(f, arity);
    if (!lf.is_zero()) rel_laurent.push_back(std::move(lf));
  }

  for (long s = 0; s <= s_max; ++s) {
    TorDegree deg;
    deg.s = s;
    if (s == 0) {
      // plain quotient by the combined ideal
      std::vector<LaurentPoly> all = rel_laurent;
      all.insert(all.end(), seq.begin(), seq.end());
      GroebnerBasis g = groebner(arity, all, opt);
      QuotientReport q = quotient_report(g);
      deg.zero = in_ideal(LaurentPoly::one(arity), g);
      deg.group_determined = q.rank_finite && q.is_free;
      if (deg.group_determined) deg.z_rank = q.z_rank;
      out.degrees.push_back(std::move(deg));
      continue;
    }
    if (s > r) {
      deg.zero = true;
      deg.group_determined = true;
      out.degrees.push_back(std::move(deg));
      continue;
    }
    long npos_down = (long)subsets_of_size(r, s - 1).size();
    long npos_here = (long)subsets_of_size(r, s).size();
    // cycle generators: syzygies among the differential rows and the ideal
    // inflations, projected to the differential-row coefficients
    std::vector<MPoly> gens = koszul_rows(seq, r, s);
    long nrows = (long)gens.size();
    std::vector<MPoly> infl = ideal_inflations(rel, npos_down);
    gens.insert(gens.end(), infl.begin(), infl.end());
    std::vector<MPoly> syz = module_syzygies(nvars, npos_down, gens, opt);
    std::vector<MPoly> cycle_reps;
    for (const MPoly& sy : syz) {
      MPoly proj;
      for (const auto& [k, c] : sy)
        if (k.pos < nrows) proj[make_mkey(k.pos, k.pp, npos_here)] = c;
      if (!proj.empty()) cycle_reps.push_back(std::move(proj));
    }
    // boundary module: rows of the next differential plus inflations
    std::vector<MPoly> bgens =
        s + 1 <= r ? koszul_rows(seq, r, s + 1) : std::vector<MPoly>{};
    std::vector<MPoly> binfl = ideal_inflations(rel, npos_here);
    bgens.insert(bgens.end(), binfl.begin(), binfl.end());
    ModuleGB bgb = module_groebner(nvars, npos_here, npos_here, bgens, opt);
    deg.zero = true;
    for (const MPoly& c : cycle_reps) {
      MPoly rem = module_nf(c, bgb.basis, nullptr);
      if (rem.empty()) continue;
      deg.zero = false;
      std::vector<LaurentPoly> gen((size_t)npos_here, LaurentPoly(arity));
      for (long p = 0; p < npos_here; ++p) gen[(size_t)p] = mpoly_to_laurent(rem, arity, p);
      deg.generators.push_back(std::move(gen));
    }
    // vanishing is exact; a nonzero group's structure is not determined here
    deg.group_determined = deg.zero;
    out.degrees.push_back(std::move(deg));
  }
}

}  // namespace

TorResult koszul_tor(long arity, const std::vector<LaurentPoly>& seq,
                     const std::vector<LaurentPoly>& module_rel, long s_max,
                     const GBOptions& opt) {
  for (const LaurentPoly& p : seq)
    if (p.arity != arity) throw math_error("sequence arity mismatch");
  for (const LaurentPoly& p : module_rel)
    if (p.arity != arity) throw math_error("module relation arity mismatch");
  if (s_max < 0) throw math_error("negative homological degree");

  TorResult out;
  out.r = (long)seq.size();
  out.regular_certified = certify_regular(arity, seq);

  GroebnerBasis gI = groebner(arity, module_rel, opt);
  QuotientReport q = quotient_report(gI);
  if (q.rank_finite && q.is_free) {
    out.finite_regime = true;
    FiniteQuotient fq = build_finite_quotient(gI, q, seq);
    finite_regime(out, arity, fq, out.r, s_max);
  } else {
    out.finite_regime = false;
    infinite_regime(out, arity, seq, gI, out.r, s_max, opt);
  }
  return out;
}

}  // namespace stackfan
