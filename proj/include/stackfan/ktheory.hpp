#pragma once
#include <utility>
#include <vector>

#include "stackfan/fan.hpp"
#include "stackfan/groebner.hpp"
#include "stackfan/koszul.hpp"
#include "stackfan/laurent.hpp"

namespace stackfan {

// One relation per minimal non-face N of the fan: prod_{j in N} (t_j - 1),
// in d = #rays Laurent variables.
std::vector<LaurentPoly> stanley_reisner_ideal(const Fan& f);

// One relation t_chi - 1 per Hermite-basis row chi of the sublattice, where
// t_chi = prod_j t_j^{<-chi, v_j>} and v_j runs over the ray generators.
std::vector<LaurentPoly> character_ideal(const Fan& f, const SublatticeSpec& sub);

// #maximal cones x product of the torsion invariants of the character
// quotient (x the order of the trivially-acting character group in the
// matrix-form case): the free rank of the degree-0 K-group when the
// character quotient is finite.  Throws when that rank is infinite.
Int expected_k0_rank(const StackyFan& sf);

// Presentation of the degree-0 K-group of the stacky quotient: Laurent
// variables t_1..t_d (one per ray), Stanley-Reisner relations plus the
// character relations of the group data.  Matrix-form group data is routed
// through stacky_reduction and, when the character extension splits, returned
// as the subgroup-form presentation tensored with the group ring of the
// trivially-acting characters; a non-split extension is rejected.
RingPresentation k0_presentation(const StackyFan& sf);

// Adjoins the group ring of `extra` to the presentation: fresh invertible
// variables, one power relation per torsion invariant.  A trivial group
// returns the input unchanged.
RingPresentation tensor_split(const RingPresentation& p, const FgAbelianGroup& extra);

// Weighted projective presentation for weights q: a single variable t with
// the relation prod_i (1 - t^{q_i}); free of rank sum(q_i) over the graded
// coefficient ring.
RingPresentation wps_presentation(const std::vector<long>& q);

// Presentations attached to the underlying coarse space of the weighted
// projective quotient: first the integral model with one auxiliary torsion
// variable per weight, then the rational model with the single relation
// (t-1)^{#weights}.
std::pair<RingPresentation, RingPresentation> wps_coarse_presentations(
    const std::vector<long>& q);

// Multiplicative cell basis attached to a shelling order: element i is
// prod_{rho in tau_i} (1 - t_rho).  Construction verifies the basis claim
// exactly: for a finite character quotient, the products of the cells with
// the character-coset monomials are checked to be a Z-basis of the quotient
// ring; otherwise every character is specialized away and the residual rank
// must equal the number of maximal cones.  Failure throws
// math_error("BasisCheckFailed...").
struct CellBasis {
  std::vector<LaurentPoly> elements;  // aligned with so.order positions
  bool finite_group = false;          // which verification regime ran
  long z_rank = -1;                   // certified Z-rank (finite regime)
  long specialized_rank = -1;         // residual rank (infinite regime)
};

CellBasis cell_basis(const StackyFan& sf, const ShellingOrder& so, const GBOptions& opt = {});

// The degree-0 edge comparison and the Koszul homology table: the character
// relations as the sequence, the Stanley-Reisner quotient as the module.
// edge_equal records that the degree-0 homology presents the same ideal as
// k0_presentation; degeneration records that every degree 1..s_max vanishes.
struct EdgeTorReport {
  RingPresentation k0;
  TorResult tor;
  bool edge_equal = false;
  bool degeneration = false;
};

EdgeTorReport edge_and_tor(const StackyFan& sf, long s_max, const GBOptions& opt = {});

}  // namespace stackfan
