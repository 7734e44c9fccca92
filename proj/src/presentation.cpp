#include "malcev/presentation.hpp"

#include <algorithm>

namespace malcev {

namespace {

template <class T>
void push_unique(std::vector<T>& out, T value) {
  if (value.is_zero()) return;
  if (std::find(out.begin(), out.end(), value) == out.end())
    out.push_back(std::move(value));
}

void check_ids(const VarietyPresentation& vp) {
  for (const auto& id : vp.ids)
    if (!id.lhs.fits(vp.sig) || !id.rhs.fits(vp.sig))
      throw SignatureError("identity " + print_identity(id) +
                           " uses symbols outside the signature");
}

}  // namespace

std::vector<Identity> ambient_axioms(const Signature& sig) {
  auto x = [](int i) { return Term::var(i); };
  std::vector<Identity> out;
  out.push_back({Term::m(x(1), x(2), x(2)), x(1)});
  out.push_back({Term::m(x(2), x(2), x(1)), x(1)});
  out.push_back({Term::m(Term::m(x(1), x(2), x(3)), Term::m(x(4), x(5), x(6)),
                         Term::m(x(7), x(8), x(9))),
                 Term::m(Term::m(x(1), x(4), x(7)), Term::m(x(2), x(5), x(8)),
                         Term::m(x(3), x(6), x(9)))});
  for (int i = 1; i <= sig.n; ++i) {
    out.push_back({Term::r(i, x(1), x(1)), x(1)});
    out.push_back({Term::r(i, Term::m(x(1), x(2), x(3)), Term::m(x(4), x(5), x(6))),
                   Term::m(Term::r(i, x(1), x(4)), Term::r(i, x(2), x(5)),
                           Term::r(i, x(3), x(6)))});
  }
  for (int i = 1; i <= sig.ell; ++i) {
    out.push_back({Term::u(i, Term::m(x(1), x(2), x(3))),
                   Term::m(Term::u(i, x(1)), Term::u(i, x(2)), Term::u(i, x(3)))});
    out.push_back({Term::m(Term::u(i, x(1)), Term::u(i, x(2)), x(2)),
                   Term::r(i, x(1), x(2))});
  }
  return out;
}

std::vector<Identity> slice_identity(const Identity& id) {
  const int k = id.max_var();
  std::vector<Identity> out;
  out.reserve(static_cast<std::size_t>(k + 1));
  for (int i = 0; i <= k; ++i)
    out.push_back({slice(id.lhs, i, k), slice(id.rhs, i, k)});
  return out;
}

NCPoly unary_defect(const ModuleVec& v, const Signature& sig) {
  NormalForm shifted = shift_unary(v, sig);
  return shifted.coeff(1) - NCPoly::one();
}

CongruenceData extract_congruence(const VarietyPresentation& vp) {
  check_ids(vp);
  CongruenceData cd;
  for (const auto& id : vp.ids) {
    for (const auto& s : slice_identity(id)) {
      NormalForm d = normalize(s.lhs, vp.sig) - normalize(s.rhs, vp.sig);
      push_unique(cd.ideal_gens, NCPoly(d.coeff(1)));
      push_unique(cd.submodule_gens, d.constant);
    }
  }
  for (const auto& v : cd.submodule_gens)
    push_unique(cd.ideal_gens, unary_defect(v, vp.sig));
  return cd;
}

RingPresentation present_ring(const VarietyPresentation& vp) {
  return {vp.sig.n, extract_congruence(vp).ideal_gens};
}

ModulePresentation present_module(const VarietyPresentation& vp) {
  CongruenceData cd = extract_congruence(vp);
  return {vp.sig.ell, cd.submodule_gens, {vp.sig.n, cd.ideal_gens}};
}

VarietyPresentation synthesize_basis(const RingPresentation& rp,
                                     const ModulePresentation& mp) {
  if (!(mp.over == rp))
    throw Error("module presentation is over a different ring presentation");
  VarietyPresentation vp{Signature::make(mp.ell, rp.n), {}};
  for (const auto& p : rp.relations) {
    NormalForm nf(mp.ell);
    if (!p.is_zero()) nf.coeffs.emplace(1, p);
    vp.ids.push_back({denormalize(nf, vp.sig), Term::z()});
  }
  for (const auto& v : mp.relations) {
    if (v.ell() != mp.ell)
      throw SignatureError("module relation has the wrong number of slots");
    vp.ids.push_back({denormalize(v, vp.sig), Term::z()});
  }
  return vp;
}

CongruenceData congruence_of(const RingPresentation& rp,
                             const ModulePresentation& mp) {
  const Signature sig = Signature::make(mp.ell, rp.n);
  CongruenceData cd;
  for (const auto& p : rp.relations) push_unique(cd.ideal_gens, NCPoly(p));
  for (const auto& v : mp.relations) push_unique(cd.submodule_gens, ModuleVec(v));
  for (const auto& v : cd.submodule_gens)
    push_unique(cd.ideal_gens, unary_defect(v, sig));
  return cd;
}

bool FicReport::all_yes() const {
  return ideal && submodule && zero_class && ideal_times_module &&
         std::all_of(unary_shift.begin(), unary_shift.end(),
                     [](const DefectCheck& c) {
                       return c.result.verdict == Verdict::Yes;
                     });
}

int default_fic_bound(const CongruenceData& cd, const Signature& sig) {
  int d = 0;
  for (const auto& p : cd.ideal_gens) d = std::max(d, p.degree());
  for (const auto& v : cd.submodule_gens) {
    d = std::max(d, v.degree());
    d = std::max(d, unary_defect(v, sig).degree());
  }
  return 2 * d + 2;
}

FicReport check_fic_conditions(const CongruenceData& cd, const Signature& sig,
                               int bound) {
  FicReport report;
  report.bound = bound;
  for (std::size_t i = 0; i < cd.submodule_gens.size(); ++i) {
    DefectCheck check;
    check.generator = static_cast<int>(i);
    check.defect = unary_defect(cd.submodule_gens[i], sig);
    int b = std::max(bound, check.defect.degree());
    check.result = ideal_member(check.defect, cd.ideal_gens, b);
    report.unary_shift.push_back(std::move(check));
  }
  return report;
}

}  // namespace malcev
