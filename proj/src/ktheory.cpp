#include "stackfan/ktheory.hpp"

#include <map>
#include <string>

#include "stackfan/errors.hpp"

namespace stackfan {

namespace {

std::string ray_str(const Fan& f, long j) {
  std::string s = "(";
  for (long k = 0; k < f.lattice_rank; ++k) {
    if (k) s += ", ";
    s += f.rays.at(j, k).get_str();
  }
  s += ")";
  return s;
}

// Exponent vector of the monomial attached to the character chi:
// entry j is <-chi, v_j>.
Expo character_exponent(const Fan& f, const std::vector<Int>& chi) {
  long d = f.rays.rows;
  Expo e((size_t)d, 0);
  for (long j = 0; j < d; ++j) {
    Int dot = 0;
    for (long k = 0; k < f.lattice_rank; ++k) dot += chi[(size_t)k] * f.rays.at(j, k);
    Int neg = -dot;
    if (!neg.fits_slong_p())
      throw math_error("character exponent does not fit a machine word");
    e[(size_t)j] = neg.get_si();
  }
  return e;
}

// Rewrites matrix-form group data as the equivalent subgroup form when the
// underlying fan is unchanged by the reduction (free target); torsion
// targets change the fan and are rejected for fan-bound computations.
StackyFan require_unchanged_fan(const StackyFan& sf, const char* op) {
  if (sf.group.kind != GroupKind::Beta) return sf;
  StackyReduction red = stacky_reduction(sf);
  if (red.s != 0)
    throw math_error(std::string("NotSupported: ") + op +
                     " needs the reduced form of a torsion-target quotient");
  StackyFan use = sf;
  use.group = GroupData{GroupKind::Subgroup, red.mprime_f, IntMat(0, 0), {}};
  return use;
}

}  // namespace

std::vector<LaurentPoly> stanley_reisner_ideal(const Fan& f) {
  long d = f.rays.rows;
  std::vector<LaurentPoly> out;
  for (const std::vector<int>& nf : minimal_nonfaces(f)) {
    LaurentPoly p = LaurentPoly::one(d);
    for (int j : nf) {
      Expo e((size_t)d, 0);
      e[(size_t)j] = 1;
      p *= monomial_minus_one(e);
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<LaurentPoly> character_ideal(const Fan& f, const SublatticeSpec& sub) {
  if (sub.ambient_rank != f.lattice_rank)
    throw math_error("character sublattice ambient rank does not match the lattice rank");
  IntMat H = hermite_row_basis(sub.generators);
  std::vector<LaurentPoly> out;
  for (long i = 0; i < H.rows; ++i)
    out.push_back(monomial_minus_one(character_exponent(f, H.row(i))));
  return out;
}

Int expected_k0_rank(const StackyFan& sf) {
  StackyFan use = sf;
  Int extra = 1;
  if (sf.group.kind == GroupKind::Beta) {
    StackyReduction red = stacky_reduction(sf);
    if (!red.split_ok)
      throw math_error(
          "NotSupported: the kernel characters do not split off the trivially-acting part");
    if (red.h_dual.free_rank != 0)
      throw math_error("InfiniteRank: the trivially-acting character group is infinite");
    extra = red.h_dual.order();
    use.group = GroupData{GroupKind::Subgroup, red.mprime_f, IntMat(0, 0), {}};
  }
  QuotientGroup q = quotient_group(use.fan.lattice_rank, character_sublattice(use));
  if (q.group.free_rank != 0)
    throw math_error("InfiniteRank: the character quotient is infinite");
  Int t = extra;
  for (const Int& dd : q.group.torsion) t *= dd;
  return t * (long)use.fan.max_cones.size();
}

RingPresentation k0_presentation(const StackyFan& sf) {
  if (sf.group.kind == GroupKind::Beta) {
    StackyReduction red = stacky_reduction(sf);
    if (!red.split_ok)
      throw math_error(
          "NotSupported: the kernel characters do not split off the trivially-acting part");
    StackyFan inner{sf.fan, GroupData{GroupKind::Subgroup, red.mprime_f, IntMat(0, 0), {}}};
    return tensor_split(k0_presentation(inner), red.h_dual);
  }
  const Fan& f = sf.fan;
  if (!is_smooth(f))
    throw math_error("NotSmooth: every maximal cone must be generated by part of a lattice basis");
  long d = f.rays.rows;
  RingPresentation p;
  p.tag = CoefTag::INTEGERS;
  for (long j = 0; j < d; ++j) p.vars.push_back("t" + std::to_string(j + 1));
  p.relations = stanley_reisner_ideal(f);
  if (sf.group.kind != GroupKind::FullTorus) {
    std::vector<LaurentPoly> chars = character_ideal(f, character_sublattice(sf));
    p.relations.insert(p.relations.end(), chars.begin(), chars.end());
  }
  for (long j = 0; j < d; ++j)
    p.annotations.emplace_back(p.vars[(size_t)j],
                               "class of the line bundle dual to ray " + ray_str(f, j));
  return p;
}

RingPresentation tensor_split(const RingPresentation& p, const FgAbelianGroup& extra) {
  if (extra.is_trivial()) return p;
  RingPresentation gr = group_ring(extra);
  long n = p.arity();
  long s = gr.arity();
  // fresh variable names: x1..xs, lengthening the prefix on collision
  std::string prefix = "x";
  for (bool clash = true; clash;) {
    clash = false;
    for (long i = 0; i < s && !clash; ++i) {
      std::string cand = prefix + std::to_string(i + 1);
      for (const std::string& v : p.vars)
        if (v == cand) {
          clash = true;
          break;
        }
    }
    if (clash) prefix += "x";
  }
  RingPresentation out;
  out.tag = p.tag;
  out.vars = p.vars;
  for (long i = 0; i < s; ++i) out.vars.push_back(prefix + std::to_string(i + 1));
  for (const LaurentPoly& rel : p.relations) out.relations.push_back(pad_arity(rel, n + s));
  std::vector<Expo> image((size_t)s);
  for (long i = 0; i < s; ++i) {
    Expo e((size_t)(n + s), 0);
    e[(size_t)(n + i)] = 1;
    image[(size_t)i] = std::move(e);
  }
  for (const LaurentPoly& rel : gr.relations)
    out.relations.push_back(substitute_monomials(rel, image, n + s));
  out.annotations = p.annotations;
  for (const auto& [var, text] : gr.annotations)
    for (long i = 0; i < s; ++i)
      if (var == gr.vars[(size_t)i]) {
        out.annotations.emplace_back(out.vars[(size_t)(n + i)], text);
        break;
      }
  return out;
}

RingPresentation wps_presentation(const std::vector<long>& q) {
  if (q.empty()) throw math_error("weights must be non-empty");
  long total = 0;
  LaurentPoly rel = LaurentPoly::one(1);
  for (long w : q) {
    if (w < 1) throw math_error("weights must be positive");
    rel *= one_minus_monomial({w});
    total += w;
  }
  RingPresentation p;
  p.tag = CoefTag::GRADED_K_OF_FIELD;
  p.vars = {"t"};
  p.relations = {std::move(rel)};
  p.annotations.emplace_back(
      "t", "universal line-bundle class; the quotient is a free module of rank " +
               std::to_string(total) + " over the graded coefficient ring");
  return p;
}

std::pair<RingPresentation, RingPresentation> wps_coarse_presentations(
    const std::vector<long>& q) {
  if (q.empty()) throw math_error("weights must be non-empty");
  long n1 = (long)q.size();  // number of weights = dimension + 1
  RingPresentation integral;
  integral.tag = CoefTag::GRADED_K_OF_FIELD;
  integral.vars.push_back("t");
  for (long i = 0; i < n1; ++i) integral.vars.push_back("t" + std::to_string(i));
  LaurentPoly tpow = LaurentPoly::one(1 + n1);
  {
    Expo e((size_t)(1 + n1), 0);
    e[0] = 1;
    LaurentPoly tm1 = monomial_minus_one(e);
    for (long i = 0; i < n1; ++i) tpow *= tm1;
  }
  integral.relations.push_back(std::move(tpow));
  Int prod = 1;
  for (long i = 0; i < n1; ++i) {
    if (q[(size_t)i] < 1) throw math_error("weights must be positive");
    Expo e((size_t)(1 + n1), 0);
    e[(size_t)(1 + i)] = q[(size_t)i];
    integral.relations.push_back(monomial_minus_one(e));
    prod *= q[(size_t)i];
  }
  integral.annotations.emplace_back(
      "t",
      "ample class on the coarse space; integral model valid for coefficient fields whose "
      "characteristic divides no weight");
  for (long i = 0; i < n1; ++i)
    integral.annotations.emplace_back(
        "t" + std::to_string(i),
        "auxiliary torsion class of weight " + std::to_string(q[(size_t)i]));
  Int total_rank = prod * n1;
  integral.annotations.emplace_back(
      "t", "free of rank " + total_rank.get_str() + " over the graded coefficient ring");

  RingPresentation rational;
  rational.tag = CoefTag::RATIONAL;
  rational.vars = {"t"};
  LaurentPoly pw = LaurentPoly::one(1);
  LaurentPoly tm1 = monomial_minus_one({1});
  for (long i = 0; i < n1; ++i) pw *= tm1;
  rational.relations.push_back(std::move(pw));
  rational.annotations.emplace_back(
      "t", "ample class; rational model of rank " + std::to_string(n1));
  return {std::move(integral), std::move(rational)};
}

CellBasis cell_basis(const StackyFan& sf, const ShellingOrder& so, const GBOptions& opt) {
  StackyFan use = require_unchanged_fan(sf, "cell basis");
  const Fan& f = use.fan;
  std::string why;
  if (!verify_shelling(f, so, &why)) throw math_error("InvalidShelling: " + why);
  long d = f.rays.rows;
  long n = f.lattice_rank;
  long ncones = (long)f.max_cones.size();

  CellBasis out;
  for (size_t i = 0; i < so.order.size(); ++i) {
    LaurentPoly b = LaurentPoly::one(d);
    for (int rho : so.tau[i]) {
      Expo e((size_t)d, 0);
      e[(size_t)rho] = 1;
      b *= one_minus_monomial(e);
    }
    out.elements.push_back(std::move(b));
  }

  RingPresentation k0 = k0_presentation(use);
  QuotientGroup gq = quotient_group(n, character_sublattice(use));

  if (gq.group.is_finite()) {
    out.finite_group = true;
    GroebnerBasis gb = groebner(d, k0.relations, opt);
    QuotientReport rep = quotient_report(gb);
    if (!rep.rank_finite) throw math_error("BasisCheckFailed: quotient rank is not finite");
    if (!rep.is_free) throw math_error("BasisCheckFailed: quotient is not certified free");
    std::vector<std::vector<Int>> chars = gq.all_representatives();
    long z = rep.z_rank;
    if ((long)chars.size() * ncones != z)
      throw math_error("BasisCheckFailed: cell count " +
                       std::to_string((long)chars.size() * ncones) +
                       " does not match quotient rank " + std::to_string(z));
    std::map<Expo, long> index;
    for (long k = 0; k < z; ++k) index[rep.standard_monomials[(size_t)k]] = k;
    IntMat mat(z, z);
    long row = 0;
    for (const std::vector<Int>& chi : chars) {
      LaurentPoly m = LaurentPoly::monomial(character_exponent(f, chi));
      for (const LaurentPoly& b : out.elements) {
        LaurentPoly nf = normal_form(m * b, gb);
        std::vector<Int> coords((size_t)z, 0);
        for (const auto& [e, c] : nf.terms) {
          auto it = index.find(e);
          if (it == index.end())
            throw math_error("BasisCheckFailed: normal form escaped the standard monomials");
          coords[(size_t)it->second] = c;
        }
        mat.set_row(row++, coords);
      }
    }
    SmithDecomposition sd = smith_normal_form(mat);
    if ((long)sd.invariants.size() != z)
      throw math_error("BasisCheckFailed: cell products are linearly dependent");
    for (const Int& dd : sd.invariants)
      if (dd != 1)
        throw math_error("BasisCheckFailed: cell products span a proper sublattice (invariant " +
                         dd.get_str() + ")");
    out.z_rank = z;
  } else {
    // Specialize every character away; what remains must count the cells.
    std::vector<LaurentPoly> rels = k0.relations;
    std::vector<LaurentPoly> full = character_ideal(f, SublatticeSpec{n, IntMat::identity(n)});
    rels.insert(rels.end(), full.begin(), full.end());
    GroebnerBasis gb = groebner(d, rels, opt);
    QuotientReport rep = quotient_report(gb);
    if (!rep.rank_finite || rep.z_rank != ncones)
      throw math_error("BasisCheckFailed: specialized rank does not match the cone count");
    out.specialized_rank = rep.z_rank;
  }
  return out;
}

EdgeTorReport edge_and_tor(const StackyFan& sf, long s_max, const GBOptions& opt) {
  StackyFan use = require_unchanged_fan(sf, "the homology comparison");
  EdgeTorReport r;
  r.k0 = k0_presentation(use);
  long d = use.fan.rays.rows;
  std::vector<LaurentPoly> seq = character_ideal(use.fan, character_sublattice(use));
  std::vector<LaurentPoly> sr = stanley_reisner_ideal(use.fan);
  r.tor = koszul_tor(d, seq, sr, s_max, opt);
  std::vector<LaurentPoly> comb = sr;
  comb.insert(comb.end(), seq.begin(), seq.end());
  GroebnerBasis gk = groebner(d, r.k0.relations, opt);
  GroebnerBasis gt = groebner(d, comb, opt);
  r.edge_equal = ideal_equal(gk, gt);
  r.degeneration = true;
  for (const TorDegree& deg : r.tor.degrees)
    if (deg.s >= 1 && !deg.zero) r.degeneration = false;
  return r;
}

}  // namespace stackfan
