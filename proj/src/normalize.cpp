#include "malcev/normalize.hpp"

#include <algorithm>
#include <optional>

namespace malcev {

NormalForm NormalForm::variable(int ell, int i) {
  NormalForm nf(ell);
  nf.coeffs.emplace(i, NCPoly::one());
  return nf;
}

const NCPoly& NormalForm::coeff(int i) const {
  static const NCPoly zero;
  auto it = coeffs.find(i);
  return it == coeffs.end() ? zero : it->second;
}

int NormalForm::degree() const {
  int d = constant.degree();
  for (const auto& [i, p] : coeffs) d = std::max(d, p.degree());
  return d;
}

NormalForm& NormalForm::operator+=(const NormalForm& other) {
  if (&other == this) return *this += NormalForm(other);
  for (const auto& [i, p] : other.coeffs) {
    auto& slot = coeffs[i];
    slot += p;
    if (slot.is_zero()) coeffs.erase(i);
  }
  constant += other.constant;
  return *this;
}

NormalForm& NormalForm::operator-=(const NormalForm& other) {
  if (&other == this) return *this = NormalForm(constant.ell());
  for (const auto& [i, p] : other.coeffs) {
    auto& slot = coeffs[i];
    slot -= p;
    if (slot.is_zero()) coeffs.erase(i);
  }
  constant -= other.constant;
  return *this;
}

NormalForm operator*(const NCPoly& p, const NormalForm& nf) {
  NormalForm r(nf.constant.ell());
  for (const auto& [i, c] : nf.coeffs) {
    NCPoly prod = p * c;
    if (!prod.is_zero()) r.coeffs.emplace(i, std::move(prod));
  }
  r.constant = p * nf.constant;
  return r;
}

namespace {

NormalForm normalize_rec(const Term& t, const Signature& sig) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return NormalForm::variable(sig.ell, t.index());
    case Term::Kind::Z:
      return NormalForm(sig.ell);
    case Term::Kind::M: {
      NormalForm nf = normalize_rec(t.arg(0), sig);
      nf -= normalize_rec(t.arg(1), sig);
      nf += normalize_rec(t.arg(2), sig);
      return nf;
    }
    case Term::Kind::R: {
      NCPoly r = NCPoly::generator(t.index());
      NormalForm a = normalize_rec(t.arg(0), sig);
      NormalForm b = normalize_rec(t.arg(1), sig);
      // r a + (1 - r) b = b + r (a - b)
      a -= b;
      b += r * a;
      return b;
    }
    case Term::Kind::U: {
      NormalForm nf =
          NCPoly::generator(t.index()) * normalize_rec(t.arg(0), sig);
      nf.constant[static_cast<std::size_t>(t.index() - 1)].add_term({}, 1);
      return nf;
    }
  }
  return NormalForm(sig.ell);
}

void check_sig(const Term& t, const Signature& sig) {
  if (!t.fits(sig))
    throw SignatureError("term " + print_term(t) +
                         " uses symbols outside signature l=" +
                         std::to_string(sig.ell) +
                         " n=" + std::to_string(sig.n));
}

/// r_{w1}(r_{w2}(... r_{wd}(base, z) ...), z)
Term realize_word(const Word& w, Term base) {
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    base = Term::r(*it, std::move(base), Term::z());
  return base;
}

/// c * a for c >= 1 by binary doubling.
Term positive_multiple(const Term& a, mpz_class c) {
  if (c == 1) return a;
  mpz_class half = c / 2;
  Term h = positive_multiple(a, half);
  Term doubled = term_add(h, h);
  if (c % 2 != 0) return term_add(doubled, a);
  return doubled;
}

Term multiple(const Term& a, const mpz_class& c) {
  if (c == 0) return Term::z();
  if (c < 0) return term_neg(positive_multiple(a, -c));
  return positive_multiple(a, c);
}

void append_sum(std::optional<Term>& acc, Term next) {
  acc = acc ? term_add(*acc, next) : std::move(next);
}

void check_poly(const NCPoly& p, const Signature& sig) {
  if (p.max_generator() > sig.n)
    throw SignatureError("polynomial " + print_poly(p) +
                         " uses generators beyond n=" + std::to_string(sig.n));
}

void append_module(std::optional<Term>& acc, const ModuleVec& v,
                   const Signature& sig) {
  if (v.ell() != sig.ell)
    throw SignatureError("module vector has " + std::to_string(v.ell()) +
                         " slots, signature has l=" + std::to_string(sig.ell));
  for (std::size_t k = 0; k < v.slots().size(); ++k) {
    check_poly(v[k], sig);
    Term gen = Term::u(static_cast<int>(k + 1), Term::z());
    for (const auto& [w, c] : v[k].terms())
      append_sum(acc, multiple(realize_word(w, gen), c));
  }
}

}  // namespace

NormalForm normalize(const Term& t, const Signature& sig) {
  check_sig(t, sig);
  return normalize_rec(t, sig);
}

Term denormalize(const NormalForm& nf, const Signature& sig) {
  std::optional<Term> acc;
  for (const auto& [i, p] : nf.coeffs) {
    check_poly(p, sig);
    Term x = Term::var(i);
    for (const auto& [w, c] : p.terms())
      append_sum(acc, multiple(realize_word(w, x), c));
  }
  append_module(acc, nf.constant, sig);
  return acc ? *acc : Term::z();
}

Term denormalize(const ModuleVec& v, const Signature& sig) {
  std::optional<Term> acc;
  append_module(acc, v, sig);
  return acc ? *acc : Term::z();
}

bool nf_equal(const Term& s, const Term& t, const Signature& sig) {
  return normalize(s, sig) == normalize(t, sig);
}

NormalForm shift_unary(const ModuleVec& v, const Signature& sig) {
  Term f = denormalize(v, sig);
  return normalize(substitute(f, {}, Term::var(1)), sig);
}

Term term_add(const Term& a, const Term& b) { return Term::m(a, Term::z(), b); }
Term term_neg(const Term& a) { return Term::m(Term::z(), a, Term::z()); }
Term term_sub(const Term& a, const Term& b) { return Term::m(a, b, Term::z()); }

Term term_compose(const Term& s, const Term& t) {
  return substitute(s, {{1, t}}, Term::z());
}

}  // namespace malcev
