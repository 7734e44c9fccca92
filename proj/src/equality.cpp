#include "malcev/equality.hpp"

#include <algorithm>

namespace malcev {

std::string to_string(EqualityResult::Kind k) {
  switch (k) {
    case EqualityResult::Kind::Valid:
      return "Valid";
    case EqualityResult::Kind::Invalid:
      return "Invalid";
    case EqualityResult::Kind::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

EqualityResult equal_in_variety(const Term& s, const Term& t,
                                const VarietyPresentation& vp, int bound,
                                const SearchParams& params) {
  if (!s.fits(vp.sig) || !t.fits(vp.sig))
    throw SignatureError("terms use symbols outside the signature");
  const CongruenceData cd = extract_congruence(vp);
  EqualityResult out;
  out.bound = bound;
  bool all_yes = true;
  for (const auto& sl : slice_identity({s, t})) {
    SliceCheck check;
    check.slice = static_cast<int>(out.slices.size());
    NormalForm d = normalize(sl.lhs, vp.sig) - normalize(sl.rhs, vp.sig);
    check.ring_part = d.coeff(1);
    check.module_part = d.constant;
    if (!check.ring_part.is_zero()) {
      int b = std::max(bound, check.ring_part.degree());
      check.ring = ideal_member(check.ring_part, cd.ideal_gens, b);
    }
    if (!check.module_part.is_zero()) {
      int b = std::max(bound, check.module_part.degree());
      check.module =
          submodule_member(check.module_part, cd.submodule_gens, cd.ideal_gens, b);
    }
    for (const auto* r : {&check.ring, &check.module}) {
      if (!*r) continue;
      all_yes = all_yes && (*r)->verdict == Verdict::Yes;
      if ((*r)->verdict == Verdict::NoHomogeneous) out.homogeneous_refutation = true;
    }
    out.slices.push_back(std::move(check));
  }
  if (all_yes) {
    out.kind = EqualityResult::Kind::Valid;
    return out;
  }
  out.separation = find_separating_model(s, t, vp, params);
  if (out.separation || out.homogeneous_refutation)
    out.kind = EqualityResult::Kind::Invalid;
  return out;
}

}  // namespace malcev
