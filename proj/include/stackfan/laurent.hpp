#pragma once
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stackfan/intmat.hpp"

namespace stackfan {

// Exponent vector of a Laurent monomial; entries may be negative.
using Expo = std::vector<long>;

// A Laurent polynomial with integer coefficients in a fixed number of
// variables.  Terms map exponent vectors to nonzero coefficients; the zero
// polynomial has an empty term map.
struct LaurentPoly {
  long arity = 0;
  std::map<Expo, Int> terms;

  LaurentPoly() = default;
  explicit LaurentPoly(long ar) : arity(ar) {}

  static LaurentPoly zero(long arity) { return LaurentPoly(arity); }
  static LaurentPoly constant(long arity, const Int& c) {
    LaurentPoly p(arity);
    p.add_term(Expo(arity, 0), c);
    return p;
  }
  static LaurentPoly one(long arity) { return constant(arity, 1); }
  // c * x^e
  static LaurentPoly monomial(const Expo& e, const Int& c = 1) {
    LaurentPoly p((long)e.size());
    p.add_term(e, c);
    return p;
  }
  // x_i^power
  static LaurentPoly variable(long arity, long i, long power = 1);

  bool is_zero() const { return terms.empty(); }
  bool is_constant() const;

  // Adds c * x^e, erasing the entry if the coefficient cancels.
  LaurentPoly& add_term(const Expo& e, const Int& c);

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.arity == b.arity && a.terms == b.terms;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  // Renders the polynomial with the given variable names, terms in a fixed
  // canonical order (descending lexicographic exponent).
  std::string str(const std::vector<std::string>& vars) const;
  std::string str() const;  // default names t1..td
};

// 1 - x^e, the standard cell factor attached to a ray character.
LaurentPoly one_minus_monomial(const Expo& e);

// x^e - 1.
LaurentPoly monomial_minus_one(const Expo& e);

// Extends every exponent vector with trailing zeros so the polynomial lives
// in a ring with `new_arity` variables.
LaurentPoly pad_arity(const LaurentPoly& p, long new_arity);

// Applies an exponent substitution: variable i of p maps to the monomial with
// exponent image[i] (rows of `image`, each of length new_arity).
LaurentPoly substitute_monomials(const LaurentPoly& p, const std::vector<Expo>& image,
                                 long new_arity);

// How the coefficient ring of a presentation is to be read.
enum class CoefTag { INTEGERS, GRADED_K_OF_FIELD, USER_RING, RATIONAL };

std::string coef_tag_name(CoefTag t);

// A finitely presented commutative ring: Laurent variables, a list of
// relations, a coefficient-ring tag, and per-variable annotations explaining
// what each variable stands for.
struct RingPresentation {
  CoefTag tag = CoefTag::INTEGERS;
  std::vector<std::string> vars;
  std::vector<LaurentPoly> relations;  // each of arity vars.size()
  std::vector<std::pair<std::string, std::string>> annotations;

  long arity() const { return (long)vars.size(); }
};

// Group ring Z[A] of a finitely generated abelian group, presented with one
// invertible variable per generator and one relation x^d - 1 per torsion
// generator.
RingPresentation group_ring(const FgAbelianGroup& g);

}  // namespace stackfan
