#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "malcev/error.hpp"

namespace malcev {

/// A monomial of the free ring: a sequence of generator indices (1-based).
/// The empty word is the identity.
using Word = std::vector<int>;

/// Degree-lexicographic order: shorter words first, ties broken
/// lexicographically.
struct DegLex {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

std::string word_to_string(const Word& w);

/// Element of the free ring Z<r_1, r_2, ...>. No zero coefficient is ever
/// stored, so two polynomials are equal iff their term maps are equal.
class NCPoly {
 public:
  using Terms = std::map<Word, mpz_class, DegLex>;

  NCPoly() = default;

  static NCPoly constant(const mpz_class& c);
  static NCPoly one() { return constant(1); }
  static NCPoly generator(int i);
  static NCPoly monomial(Word w, const mpz_class& c = 1);

  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const;
  /// Smallest degree of a term, -1 for zero.
  int low_degree() const;
  bool is_homogeneous() const;
  int max_generator() const;

  const Terms& terms() const { return terms_; }
  mpz_class coeff(const Word& w) const;

  /// Adds c * w in place.
  void add_term(const Word& w, const mpz_class& c);

  NCPoly& operator+=(const NCPoly& other);
  NCPoly& operator-=(const NCPoly& other);

  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator-(const NCPoly& a);
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b);
  friend NCPoly operator*(const mpz_class& c, const NCPoly& p);
  friend bool operator==(const NCPoly& a, const NCPoly& b) {
    return a.terms_ == b.terms_;
  }

 private:
  Terms terms_;
};

NCPoly poly_add(const NCPoly& p, const NCPoly& q);
NCPoly poly_neg(const NCPoly& p);
NCPoly poly_mul(const NCPoly& p, const NCPoly& q);

/// Terms of p whose word has length exactly d.
NCPoly homogeneous_component(const NCPoly& p, int d);

/// Element of the free left module on u_1..u_ell. Slot k (0-based) holds the
/// coefficient of u_{k+1}.
class ModuleVec {
 public:
  ModuleVec() = default;
  explicit ModuleVec(int ell) : slots_(static_cast<std::size_t>(ell)) {}
  explicit ModuleVec(std::vector<NCPoly> slots) : slots_(std::move(slots)) {}

  /// The free generator u_i, 1 <= i <= ell.
  static ModuleVec generator(int ell, int i);

  int ell() const { return static_cast<int>(slots_.size()); }
  const std::vector<NCPoly>& slots() const { return slots_; }
  const NCPoly& operator[](std::size_t k) const { return slots_[k]; }
  NCPoly& operator[](std::size_t k) { return slots_[k]; }

  bool is_zero() const;
  int degree() const;
  bool is_homogeneous() const;
  int max_generator() const;

  ModuleVec& operator+=(const ModuleVec& other);
  ModuleVec& operator-=(const ModuleVec& other);
  friend ModuleVec operator+(ModuleVec a, const ModuleVec& b) {
    return a += b;
  }
  friend ModuleVec operator-(ModuleVec a, const ModuleVec& b) {
    return a -= b;
  }
  friend ModuleVec operator-(const ModuleVec& v);
  /// Left action of the ring, slotwise.
  friend ModuleVec operator*(const NCPoly& p, const ModuleVec& v);
  friend bool operator==(const ModuleVec& a, const ModuleVec& b) = default;

 private:
  void check_same(const ModuleVec& other) const;

  std::vector<NCPoly> slots_;
};

ModuleVec mod_add(const ModuleVec& v, const ModuleVec& w);
ModuleVec mod_scale(const NCPoly& p, const ModuleVec& v);

/// A binary term split into its idempotent part and its unary part.
struct RMPair {
  NCPoly ring;
  ModuleVec mod;
  friend bool operator==(const RMPair&, const RMPair&) = default;
};

/// Text syntax, e.g. "2*r1*r2^3*r1 - r1 + 1"; module vectors additionally
/// end each monomial with exactly one generator "u<i>", e.g. "r1*u2 - u1".
NCPoly parse_poly(std::string_view text);
ModuleVec parse_module_vec(std::string_view text, int ell);
std::string print_poly(const NCPoly& p);
std::string print_module_vec(const ModuleVec& v);

}  // namespace malcev
