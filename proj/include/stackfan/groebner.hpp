#pragma once
#include <map>
#include <optional>
#include <vector>

#include "stackfan/laurent.hpp"

namespace stackfan {

// Power product: nonnegative exponents over the internal variables.  A ring
// in d Laurent variables is handled internally as a polynomial ring in 2d
// variables t_1..t_d, y_1..y_d modulo the relations t_i*y_i - 1.
using PP = std::vector<long>;

// A module monomial: a power product sitting in one coordinate of a free
// module.  `block` 0 is the principal block and compares strictly above
// block 1 (the tag block used for syzygy bookkeeping).
struct MKey {
  long block = 0;
  long pos = 0;
  PP pp;
  friend bool operator==(const MKey& a, const MKey& b) {
    return a.block == b.block && a.pos == b.pos && a.pp == b.pp;
  }
};

// Strict "a comes before b" order: block, then total degree, then
// lexicographic exponents (earlier variable wins), then position.
struct MKeyBefore {
  bool operator()(const MKey& a, const MKey& b) const;
};

// A module element (or plain polynomial, with all positions 0): map from
// module monomials to nonzero coefficients.  begin() is the leading term.
using MPoly = std::map<MKey, Int, MKeyBefore>;

MKey make_mkey(long pos, PP pp, long split);

bool mpoly_is_zero(const MPoly& p);
MPoly mpoly_scale(const MPoly& p, const Int& c);
void mpoly_add_scaled(MPoly& dst, const MPoly& src, const Int& c, const PP& shift);

struct GBOptions {
  long long step_budget = 1000000;
};

// Reduced strong basis of a submodule of P^npos, P = Z[x_1..x_nvars].
// Positions >= split belong to the lower (tag) block of the order.
struct ModuleGB {
  long nvars = 0;
  long npos = 1;
  long split = 1;
  std::vector<MPoly> basis;
};

ModuleGB module_groebner(long nvars, long npos, long split, std::vector<MPoly> gens,
                         const GBOptions& opt = {});

// Canonical strong normal form: every remaining coefficient is the canonical
// residue modulo the gcd of the leading coefficients of applicable divisors.
MPoly module_nf(MPoly v, const std::vector<MPoly>& basis, long long* budget = nullptr);

bool module_member(const MPoly& v, const ModuleGB& gb);

// Generators of the syzygy module of `gens` in P^npos: vectors s in
// P^{gens.size()} with sum_i s_i * gens_i = 0, encoded with positions
// 0..gens.size()-1.
std::vector<MPoly> module_syzygies(long nvars, long npos, const std::vector<MPoly>& gens,
                                   const GBOptions& opt = {});

// ---- Laurent ring layer ----------------------------------------------------

PP laurent_expo_to_pp(const Expo& e);
Expo pp_to_laurent_expo(const PP& pp, long arity);
MPoly laurent_to_mpoly(const LaurentPoly& p, long pos = 0, long split = 1);
LaurentPoly mpoly_to_laurent(const MPoly& v, long arity, long pos = 0);

// Reduced strong basis of an ideal in the Laurent ring Z[t_1^±..t_d^±],
// computed in the 2d-variable presentation with the unit relations included.
struct GroebnerBasis {
  long arity = 0;  // Laurent variables
  long nvars = 0;  // internal variables (2 * arity)
  ModuleGB gb;
};

GroebnerBasis groebner(long arity, const std::vector<LaurentPoly>& gens,
                       const GBOptions& opt = {});

LaurentPoly normal_form(const LaurentPoly& p, const GroebnerBasis& gb);
bool in_ideal(const LaurentPoly& p, const GroebnerBasis& gb);
bool ideal_equal(const GroebnerBasis& a, const GroebnerBasis& b);

// Structure of the quotient ring as an abelian group, read off the strong
// basis:
//  - z_rank counts monomials no leading monomial divides (the free part);
//  - is_free: with z_rank finite this is the exact answer, decided by the
//    monomial filtration when every leading coefficient is a unit and
//    otherwise by saturating an explicit finite presentation of the quotient
//    as a Z-module; with z_rank infinite it only certifies (all filtration
//    steps free implies free);
//  - torsion_witness, when present, is a monomial coset together with its
//    exact annihilating modulus (verified by normal form);
//  - standard_monomials lists the free-part monomials when the rank is
//    finite, as Laurent exponent vectors in ascending order.
struct QuotientReport {
  bool rank_finite = false;
  long z_rank = -1;
  bool is_free = false;
  std::optional<std::pair<Expo, Int>> torsion_witness;
  std::vector<Expo> standard_monomials;
};

QuotientReport quotient_report(const GroebnerBasis& gb);

// Integer coordinates on a quotient that is a finitely generated free
// Z-module (nullopt when the rank is infinite or freeness is not decided in
// the affirmative).  coords() maps a normal form to its coordinate vector in
// a fixed basis of the quotient; two polynomials have the same coordinates
// exactly when they agree in the quotient.
struct QuotientCoords {
  long arity = 0;
  long rank = 0;
  std::map<Expo, long> index;  // spanning monomials a normal form may touch
  IntMat proj{0, 0};           // (#spanning rows) x rank projection
  std::vector<Int> coords(const LaurentPoly& nf) const;
};

std::optional<QuotientCoords> quotient_coords(const GroebnerBasis& gb);

}  // namespace stackfan
