#pragma once

#include <map>

#include "malcev/ncpoly.hpp"
#include "malcev/sigterm.hpp"

namespace malcev {

/// Canonical image of a term in the free algebra F_U(x1, ..., xk, z):
///   sum_i coeffs[i] * xi + constant
/// where each coefficient lies in the free ring on r_1..r_n and the constant
/// lies in the free module on u_1..u_ell. z is the zero.
struct NormalForm {
  std::map<int, NCPoly> coeffs;  // no zero entries
  ModuleVec constant;

  explicit NormalForm(int ell = 0) : constant(ell) {}

  static NormalForm variable(int ell, int i);

  bool is_zero() const { return coeffs.empty() && constant.is_zero(); }
  const NCPoly& coeff(int i) const;
  /// Largest word length occurring anywhere, -1 for zero.
  int degree() const;

  NormalForm& operator+=(const NormalForm& other);
  NormalForm& operator-=(const NormalForm& other);
  friend NormalForm operator+(NormalForm a, const NormalForm& b) {
    return a += b;
  }
  friend NormalForm operator-(NormalForm a, const NormalForm& b) {
    return a -= b;
  }
  /// Left multiplication of every component.
  friend NormalForm operator*(const NCPoly& p, const NormalForm& nf);
  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

/// Structural recursion:
///   NF(xi) = xi, NF(z) = 0, NF(m(a,b,c)) = NF(a) - NF(b) + NF(c),
///   NF(r_i(a,b)) = r_i NF(a) + (1 - r_i) NF(b),
///   NF(u_i(a)) = r_i NF(a) + u_i.
/// Throws SignatureError if t uses symbols outside sig.
NormalForm normalize(const Term& t, const Signature& sig);

/// Canonical term realizing nf: monomials in deg-lex order, variables in
/// increasing index order, then the module constant slot by slot, all joined
/// by left-nested m-additions; integer multiples by binary doubling.
Term denormalize(const NormalForm& nf, const Signature& sig);
Term denormalize(const ModuleVec& v, const Signature& sig);

/// Validity of s = t in U, i.e. equality of normal forms.
bool nf_equal(const Term& s, const Term& t, const Signature& sig);

/// Normal form of the unary term v applied to x1 instead of z.
NormalForm shift_unary(const ModuleVec& v, const Signature& sig);

/// Term-level operations of the ring/module structure on F(x, z).
Term term_add(const Term& a, const Term& b);  // (m a z b)
Term term_neg(const Term& a);                 // (m z a z)
Term term_sub(const Term& a, const Term& b);  // (m a b z)
/// s . t := s(t(x1, z), z)
Term term_compose(const Term& s, const Term& t);

}  // namespace malcev
