#pragma once
#include <vector>

#include "stackfan/groebner.hpp"

namespace stackfan {

// Homology of the Koszul complex on `seq`, with coefficients in the quotient
// of the Laurent ring by `module_rel`.  When the sequence is certified
// regular on the ambient Laurent ring, these groups compute the derived
// tensor product of the two quotient rings degree by degree; degree zero is
// always the plain quotient by the combined ideal.
struct TorDegree {
  long s = 0;
  bool zero = false;              // the homology group is exactly zero
  bool group_determined = false;  // z_rank/torsion below are exact
  long z_rank = 0;
  std::vector<Int> torsion;  // invariant factors, each >= 2
  // One representative cycle per generator (free generators first, torsion
  // generators in invariant order), as Laurent polynomial vectors indexed by
  // the Koszul basis: s-element subsets of the sequence, lexicographically.
  std::vector<std::vector<LaurentPoly>> generators;
};

struct TorResult {
  long r = 0;  // sequence length
  // Sequence certified regular on the ambient Laurent ring: every element is
  // +-(monomial - 1) and the exponent vectors are Z-linearly independent.
  // (Regularity on the quotient module is NOT implied; higher homology can
  // still be nonzero.)
  bool regular_certified = false;
  // Degrees computed with integer matrices on a finite free quotient; when
  // false, vanishing is still decided exactly via module membership, but a
  // nonzero group's structure may be left undetermined.
  bool finite_regime = false;
  std::vector<TorDegree> degrees;  // s = 0 .. s_max
};

TorResult koszul_tor(long arity, const std::vector<LaurentPoly>& seq,
                     const std::vector<LaurentPoly>& module_rel, long s_max,
                     const GBOptions& opt = {});

}  // namespace stackfan
