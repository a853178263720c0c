#include "stackfan/groebner.hpp"

#include <algorithm>
#include <deque>

namespace stackfan {

static long pp_total(const PP& p) {
  long s = 0;
  for (long x : p) s += x;
  return s;
}

bool MKeyBefore::operator()(const MKey& a, const MKey& b) const {
  if (a.block != b.block) return a.block < b.block;
  long da = pp_total(a.pp), db = pp_total(b.pp);
  if (da != db) return da > db;
  if (a.pp != b.pp) {
    for (size_t i = 0; i < a.pp.size(); ++i)
      if (a.pp[i] != b.pp[i]) return a.pp[i] > b.pp[i];
  }
  return a.pos < b.pos;
}

MKey make_mkey(long pos, PP pp, long split) {
  MKey k;
  k.block = pos >= split ? 1 : 0;
  k.pos = pos;
  k.pp = std::move(pp);
  return k;
}

bool mpoly_is_zero(const MPoly& p) { return p.empty(); }

MPoly mpoly_scale(const MPoly& p, const Int& c) {
  MPoly r;
  if (c == 0) return r;
  for (const auto& [k, v] : p) r.emplace(k, v * c);
  return r;
}

static PP pp_add(const PP& a, const PP& b) {
  PP r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

static PP pp_sub(const PP& a, const PP& b) {
  PP r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

static PP pp_max(const PP& a, const PP& b) {
  PP r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

static bool pp_divides(const PP& a, const PP& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

void mpoly_add_scaled(MPoly& dst, const MPoly& src, const Int& c, const PP& shift) {
  if (c == 0) return;
  for (const auto& [k, v] : src) {
    MKey nk = k;
    nk.pp = pp_add(k.pp, shift);
    auto it = dst.find(nk);
    if (it == dst.end()) {
      dst.emplace(std::move(nk), v * c);
    } else {
      it->second += v * c;
      if (it->second == 0) dst.erase(it);
    }
  }
}

static void spend(long long* budget, long long n = 1) {
  if (!budget) return;
  *budget -= n;
  if (*budget < 0)
    throw resource_limit("computation step budget exceeded; rerun with a larger --step-budget");
}

MPoly module_nf(MPoly v, const std::vector<MPoly>& basis, long long* budget) {
  MPoly out;
  std::vector<const MPoly*> divs;
  std::vector<Int> cof;
  while (!v.empty()) {
    spend(budget);
    auto lead = v.begin();
    const MKey key = lead->first;
    divs.clear();
    for (const MPoly& g : basis) {
      if (g.empty()) continue;
      const MKey& gk = g.begin()->first;
      if (gk.block == key.block && gk.pos == key.pos && pp_divides(gk.pp, key.pp))
        divs.push_back(&g);
    }
    if (divs.empty()) {
      out.emplace(key, lead->second);
      v.erase(lead);
      continue;
    }
    // Extended gcd of the divisors' leading coefficients, with cofactors.
    Int gamma = divs[0]->begin()->second;
    cof.assign(divs.size(), 0);
    cof[0] = 1;
    for (size_t i = 1; i < divs.size(); ++i) {
      if (gamma == 1 || gamma == -1) break;
      Int s, t, g;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), gamma.get_mpz_t(),
                 divs[i]->begin()->second.get_mpz_t());
      for (size_t k = 0; k < i; ++k) cof[k] *= s;
      cof[i] = t;
      gamma = g;
    }
    if (gamma < 0) {
      gamma = -gamma;
      for (Int& c : cof) c = -c;
    }
    // Canonical residue: coefficient becomes c - q*gamma in [0, gamma).
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), lead->second.get_mpz_t(), gamma.get_mpz_t());
    if (q != 0) {
      for (size_t i = 0; i < divs.size(); ++i) {
        if (cof[i] == 0) continue;
        mpoly_add_scaled(v, *divs[i], -q * cof[i], pp_sub(key.pp, divs[i]->begin()->first.pp));
      }
    }
    auto it = v.find(key);
    if (it != v.end()) {
      out.emplace(it->first, it->second);
      v.erase(it);
    }
  }
  return out;
}

static MPoly spair(const MPoly& f, const MPoly& g) {
  const MKey& fk = f.begin()->first;
  const MKey& gk = g.begin()->first;
  PP m = pp_max(fk.pp, gk.pp);
  Int l;
  mpz_lcm(l.get_mpz_t(), f.begin()->second.get_mpz_t(), g.begin()->second.get_mpz_t());
  MPoly r;
  mpoly_add_scaled(r, f, l / f.begin()->second, pp_sub(m, fk.pp));
  mpoly_add_scaled(r, g, -(l / g.begin()->second), pp_sub(m, gk.pp));
  return r;
}

static MPoly gpair(const MPoly& f, const MPoly& g) {
  const MKey& fk = f.begin()->first;
  const MKey& gk = g.begin()->first;
  PP m = pp_max(fk.pp, gk.pp);
  Int gam, s, t;
  mpz_gcdext(gam.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), f.begin()->second.get_mpz_t(),
             g.begin()->second.get_mpz_t());
  MPoly r;
  mpoly_add_scaled(r, f, s, pp_sub(m, fk.pp));
  mpoly_add_scaled(r, g, t, pp_sub(m, gk.pp));
  return r;
}

static bool same_lead_slot(const MPoly& a, const MPoly& b) {
  const MKey& x = a.begin()->first;
  const MKey& y = b.begin()->first;
  return x.block == y.block && x.pos == y.pos;
}

ModuleGB module_groebner(long nvars, long npos, long split, std::vector<MPoly> gens,
                         const GBOptions& opt) {
  long long budget = opt.step_budget;
  ModuleGB out;
  out.nvars = nvars;
  out.npos = npos;
  out.split = split;

  std::vector<MPoly> basis;
  for (MPoly& g : gens) {
    if (g.empty()) continue;
    if (g.begin()->second < 0) g = mpoly_scale(g, -1);
    basis.push_back(std::move(g));
  }

  std::deque<std::pair<size_t, size_t>> queue;
  auto add_pairs_for = [&](size_t n) {
    for (size_t i = 0; i < n; ++i)
      if (same_lead_slot(basis[i], basis[n])) queue.emplace_back(i, n);
  };
  for (size_t n = 0; n < basis.size(); ++n) add_pairs_for(n);

  auto consider = [&](MPoly cand) {
    MPoly h = module_nf(std::move(cand), basis, &budget);
    if (h.empty()) return;
    if (h.begin()->second < 0) h = mpoly_scale(h, -1);
    basis.push_back(std::move(h));
    add_pairs_for(basis.size() - 1);
  };

  while (!queue.empty()) {
    auto [i, j] = queue.front();
    queue.pop_front();
    spend(&budget);
    consider(spair(basis[i], basis[j]));
    const Int& a = basis[i].begin()->second;
    const Int& b = basis[j].begin()->second;
    if (!mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) &&
        !mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()))
      consider(gpair(basis[i], basis[j]));
  }

  // Canonicalization to a fixed point.  A pass first drops every element
  // whose leading term the other leads already cover (the gcd of their
  // applicable leading coefficients divides its own), then rewrites each
  // element to its canonical normal form against the others.  Reducing a
  // leading coefficient changes what the drop rule and later reductions see,
  // and a covered lead can vanish outright, so passes repeat until nothing
  // moves; the normal-form step budget bounds the total work.
  bool moved = true;
  while (moved) {
    moved = false;
    bool dropped = true;
    while (dropped) {
      dropped = false;
      for (size_t i = 0; i < basis.size(); ++i) {
        const MKey& k = basis[i].begin()->first;
        Int gamma = 0;
        for (size_t j = 0; j < basis.size(); ++j) {
          if (j == i) continue;
          const MKey& gk = basis[j].begin()->first;
          if (gk.block == k.block && gk.pos == k.pos && pp_divides(gk.pp, k.pp))
            mpz_gcd(gamma.get_mpz_t(), gamma.get_mpz_t(), basis[j].begin()->second.get_mpz_t());
        }
        if (gamma != 0 &&
            mpz_divisible_p(basis[i].begin()->second.get_mpz_t(), gamma.get_mpz_t())) {
          basis.erase(basis.begin() + (long)i);
          dropped = true;
          moved = true;
          break;
        }
      }
    }
    for (size_t i = 0; i < basis.size(); ++i) {
      std::vector<MPoly> others;
      others.reserve(basis.size() - 1);
      for (size_t j = 0; j < basis.size(); ++j)
        if (j != i) others.push_back(basis[j]);
      MPoly red = module_nf(basis[i], others, &budget);
      if (red == basis[i]) continue;
      moved = true;
      if (red.empty()) {
        basis.erase(basis.begin() + (long)i);
      } else {
        if (red.begin()->second < 0) red = mpoly_scale(red, -1);
        basis[i] = std::move(red);
      }
      break;  // the structure changed: restart from the drop rule
    }
  }

  std::sort(basis.begin(), basis.end(), [](const MPoly& a, const MPoly& b) {
    return MKeyBefore()(a.begin()->first, b.begin()->first);
  });
  out.basis = std::move(basis);
  return out;
}

bool module_member(const MPoly& v, const ModuleGB& gb) {
  return module_nf(v, gb.basis, nullptr).empty();
}

std::vector<MPoly> module_syzygies(long nvars, long npos, const std::vector<MPoly>& gens,
                                   const GBOptions& opt) {
  long q = (long)gens.size();
  std::vector<MPoly> aug;
  aug.reserve(q);
  for (long i = 0; i < q; ++i) {
    MPoly w;
    for (const auto& [k, c] : gens[i]) w.emplace(make_mkey(k.pos, k.pp, npos), c);
    MKey tag = make_mkey(npos + i, PP(nvars, 0), npos);
    auto it = w.find(tag);
    if (it == w.end())
      w.emplace(std::move(tag), 1);
    else {
      it->second += 1;
      if (it->second == 0) w.erase(it);
    }
    aug.push_back(std::move(w));
  }
  ModuleGB g = module_groebner(nvars, npos + q, npos, std::move(aug), opt);
  std::vector<MPoly> syz;
  for (const MPoly& e : g.basis) {
    bool pure_tag = true;
    for (const auto& [k, c] : e)
      if (k.pos < npos) {
        pure_tag = false;
        break;
      }
    if (!pure_tag || e.empty()) continue;
    MPoly s;
    for (const auto& [k, c] : e) s.emplace(make_mkey(k.pos - npos, k.pp, q), c);
    syz.push_back(std::move(s));
  }
  return syz;
}

// ---- Laurent ring layer ----------------------------------------------------

PP laurent_expo_to_pp(const Expo& e) {
  long d = (long)e.size();
  PP pp(2 * d, 0);
  for (long i = 0; i < d; ++i) {
    if (e[i] >= 0)
      pp[i] = e[i];
    else
      pp[d + i] = -e[i];
  }
  return pp;
}

Expo pp_to_laurent_expo(const PP& pp, long arity) {
  Expo e(arity);
  for (long i = 0; i < arity; ++i) e[i] = pp[i] - pp[arity + i];
  return e;
}

MPoly laurent_to_mpoly(const LaurentPoly& p, long pos, long split) {
  MPoly r;
  for (const auto& [e, c] : p.terms) r.emplace(make_mkey(pos, laurent_expo_to_pp(e), split), c);
  return r;
}

LaurentPoly mpoly_to_laurent(const MPoly& v, long arity, long pos) {
  LaurentPoly p(arity);
  for (const auto& [k, c] : v)
    if (k.pos == pos) p.add_term(pp_to_laurent_expo(k.pp, arity), c);
  return p;
}

GroebnerBasis groebner(long arity, const std::vector<LaurentPoly>& gens, const GBOptions& opt) {
  GroebnerBasis out;
  out.arity = arity;
  out.nvars = 2 * arity;
  std::vector<MPoly> g;
  for (const LaurentPoly& p : gens) {
    if (p.arity != arity) throw math_error("groebner: generator arity mismatch");
    g.push_back(laurent_to_mpoly(p));
  }
  for (long i = 0; i < arity; ++i) {
    // t_i * y_i - 1: the unit relation identifying y_i with t_i^{-1}.
    PP pp(2 * arity, 0);
    pp[i] = 1;
    pp[arity + i] = 1;
    MPoly u;
    u.emplace(make_mkey(0, std::move(pp), 1), 1);
    u.emplace(make_mkey(0, PP(2 * arity, 0), 1), -1);
    g.push_back(std::move(u));
  }
  out.gb = module_groebner(out.nvars, 1, 1, std::move(g), opt);
  return out;
}

LaurentPoly normal_form(const LaurentPoly& p, const GroebnerBasis& gb) {
  if (p.arity != gb.arity) throw math_error("normal_form: arity mismatch");
  return mpoly_to_laurent(module_nf(laurent_to_mpoly(p), gb.gb.basis, nullptr), gb.arity);
}

bool in_ideal(const LaurentPoly& p, const GroebnerBasis& gb) {
  return normal_form(p, gb).is_zero();
}

bool ideal_equal(const GroebnerBasis& a, const GroebnerBasis& b) {
  if (a.arity != b.arity) return false;
  for (const MPoly& f : a.gb.basis)
    if (!module_nf(f, b.gb.basis, nullptr).empty()) return false;
  for (const MPoly& f : b.gb.basis)
    if (!module_nf(f, a.gb.basis, nullptr).empty()) return false;
  return true;
}

static void enumerate_box(const std::vector<long>& bounds, PP& cur, size_t i,
                          const std::vector<PP>& lms, std::vector<PP>& out) {
  if (i == bounds.size()) {
    for (const PP& m : lms)
      if (pp_divides(m, cur)) return;
    out.push_back(cur);
    return;
  }
  for (long v = 0; v < bounds[i]; ++v) {
    cur[i] = v;
    enumerate_box(bounds, cur, i + 1, lms, out);
  }
  cur[i] = 0;
}

QuotientReport quotient_report(const GroebnerBasis& gb) {
  QuotientReport rep;
  const std::vector<MPoly>& basis = gb.gb.basis;
  long n = gb.nvars;

  std::vector<PP> lms;
  for (const MPoly& g : basis) lms.push_back(g.begin()->first.pp);

  // Freeness and torsion: it suffices to inspect the gcds of leading
  // coefficients at the leading monomials themselves.
  rep.is_free = true;
  for (size_t i = 0; i < basis.size() && rep.is_free; ++i) {
    Int gamma = 0;
    for (size_t j = 0; j < basis.size(); ++j)
      if (pp_divides(lms[j], lms[i]))
        mpz_gcd(gamma.get_mpz_t(), gamma.get_mpz_t(), basis[j].begin()->second.get_mpz_t());
    if (gamma >= 2) rep.is_free = false;
  }
  if (!rep.is_free) {
    for (size_t i = 0; i < basis.size() && !rep.torsion_witness; ++i) {
      Int gamma = 0;
      for (size_t j = 0; j < basis.size(); ++j)
        if (pp_divides(lms[j], lms[i]))
          mpz_gcd(gamma.get_mpz_t(), gamma.get_mpz_t(), basis[j].begin()->second.get_mpz_t());
      if (gamma < 2) continue;
      // Verify annihilation exactly: gamma * m must lie in the ideal.
      MPoly probe;
      probe.emplace(make_mkey(0, lms[i], 1), gamma);
      if (module_nf(std::move(probe), basis, nullptr).empty())
        rep.torsion_witness = {pp_to_laurent_expo(lms[i], gb.arity), gamma};
    }
  }

  // Finiteness of the free part: every variable needs a pure-power leading
  // monomial (a constant leading monomial counts for all of them).
  std::vector<long> bounds(n, -1);
  for (const PP& m : lms) {
    long support = -1;
    bool pure = true;
    for (long v = 0; v < n; ++v) {
      if (m[v] == 0) continue;
      if (support >= 0) {
        pure = false;
        break;
      }
      support = v;
    }
    if (!pure) continue;
    if (support < 0) {
      for (long v = 0; v < n; ++v) bounds[v] = 0;
      break;
    }
    if (bounds[support] < 0 || m[support] < bounds[support]) bounds[support] = m[support];
  }
  for (long v = 0; v < n; ++v)
    if (bounds[v] < 0) return rep;  // infinite free rank

  Int box = 1;
  for (long v = 0; v < n; ++v) box *= bounds[v];
  if (box > 2000000)
    throw resource_limit("quotient basis enumeration too large");

  std::vector<PP> standard;
  PP cur(n, 0);
  enumerate_box(bounds, cur, 0, lms, standard);

  rep.rank_finite = true;
  rep.z_rank = (long)standard.size();
  for (const PP& m : standard) rep.standard_monomials.push_back(pp_to_laurent_expo(m, gb.arity));
  // canonical display order: lexicographically ascending exponent vectors
  std::sort(rep.standard_monomials.begin(), rep.standard_monomials.end());
  return rep;
}

}  // namespace stackfan
