#include "stackfan/laurent.hpp"

#include <sstream>

namespace stackfan {

LaurentPoly LaurentPoly::variable(long arity, long i, long power) {
  if (i < 0 || i >= arity) throw math_error("LaurentPoly::variable: index out of range");
  Expo e(arity, 0);
  e[i] = power;
  return monomial(e, 1);
}

bool LaurentPoly::is_constant() const {
  if (terms.empty()) return true;
  if (terms.size() > 1) return false;
  const Expo& e = terms.begin()->first;
  for (long x : e)
    if (x != 0) return false;
  return true;
}

LaurentPoly& LaurentPoly::add_term(const Expo& e, const Int& c) {
  if ((long)e.size() != arity) throw math_error("LaurentPoly::add_term: arity mismatch");
  if (c == 0) return *this;
  auto it = terms.find(e);
  if (it == terms.end()) {
    terms.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(arity);
  for (const auto& [e, c] : terms) r.terms.emplace(e, -c);
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (arity != o.arity) throw math_error("LaurentPoly: arity mismatch in +");
  for (const auto& [e, c] : o.terms) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  if (arity != o.arity) throw math_error("LaurentPoly: arity mismatch in -");
  for (const auto& [e, c] : o.terms) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.arity != b.arity) throw math_error("LaurentPoly: arity mismatch in *");
  LaurentPoly r(a.arity);
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      Expo e(a.arity);
      for (long i = 0; i < a.arity; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

static void append_monomial(std::ostringstream& os, const Expo& e,
                            const std::vector<std::string>& vars) {
  bool any = false;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (any) os << "*";
    os << vars[i];
    if (e[i] != 1) os << "^" << e[i];
    any = true;
  }
  if (!any) os << "1";
}

std::string LaurentPoly::str(const std::vector<std::string>& vars) const {
  if ((long)vars.size() != arity) throw math_error("LaurentPoly::str: wrong number of names");
  if (terms.empty()) return "0";
  // Canonical display order: descending lexicographic on the exponent vector.
  std::ostringstream os;
  bool first = true;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const Expo& e = it->first;
    Int c = it->second;
    if (first) {
      if (c < 0) { os << "-"; c = -c; }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    bool is_const = true;
    for (long x : e)
      if (x != 0) { is_const = false; break; }
    if (is_const) {
      os << c.get_str();
    } else {
      if (c != 1) os << c.get_str() << "*";
      append_monomial(os, e, vars);
    }
    first = false;
  }
  return os.str();
}

std::string LaurentPoly::str() const {
  std::vector<std::string> vars;
  for (long i = 0; i < arity; ++i) vars.push_back("t" + std::to_string(i + 1));
  return str(vars);
}

LaurentPoly one_minus_monomial(const Expo& e) {
  LaurentPoly p = LaurentPoly::one((long)e.size());
  p.add_term(e, -1);
  return p;
}

LaurentPoly monomial_minus_one(const Expo& e) {
  LaurentPoly p = LaurentPoly::monomial(e, 1);
  p.add_term(Expo(e.size(), 0), -1);
  return p;
}

LaurentPoly pad_arity(const LaurentPoly& p, long new_arity) {
  if (new_arity < p.arity) throw math_error("pad_arity: cannot shrink arity");
  LaurentPoly r(new_arity);
  for (const auto& [e, c] : p.terms) {
    Expo f = e;
    f.resize(new_arity, 0);
    r.terms.emplace(std::move(f), c);
  }
  return r;
}

LaurentPoly substitute_monomials(const LaurentPoly& p, const std::vector<Expo>& image,
                                 long new_arity) {
  if ((long)image.size() != p.arity)
    throw math_error("substitute_monomials: wrong number of images");
  LaurentPoly r(new_arity);
  for (const auto& [e, c] : p.terms) {
    Expo f(new_arity, 0);
    for (long i = 0; i < p.arity; ++i) {
      if (e[i] == 0) continue;
      if ((long)image[i].size() != new_arity)
        throw math_error("substitute_monomials: image arity mismatch");
      for (long j = 0; j < new_arity; ++j) f[j] += e[i] * image[i][j];
    }
    r.add_term(f, c);
  }
  return r;
}

std::string coef_tag_name(CoefTag t) {
  switch (t) {
    case CoefTag::INTEGERS: return "INTEGERS";
    case CoefTag::GRADED_K_OF_FIELD: return "GRADED_K_OF_FIELD";
    case CoefTag::USER_RING: return "USER_RING";
    case CoefTag::RATIONAL: return "RATIONAL";
  }
  return "INTEGERS";
}

RingPresentation group_ring(const FgAbelianGroup& g) {
  RingPresentation p;
  p.tag = CoefTag::INTEGERS;
  long n = g.free_rank + (long)g.torsion.size();
  for (long i = 0; i < n; ++i) p.vars.push_back("x" + std::to_string(i + 1));
  for (long i = 0; i < g.free_rank; ++i)
    p.annotations.emplace_back(p.vars[i], "invertible generator for a free character");
  for (size_t j = 0; j < g.torsion.size(); ++j) {
    const Int& d = g.torsion[j];
    long i = g.free_rank + (long)j;
    Expo e(n, 0);
    if (!d.fits_slong_p()) throw math_error("group_ring: torsion order too large");
    e[i] = d.get_si();
    p.relations.push_back(monomial_minus_one(e));
    p.annotations.emplace_back(p.vars[i],
                               "generator for a torsion character of order " + d.get_str());
  }
  return p;
}

}  // namespace stackfan
