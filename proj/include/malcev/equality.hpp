#pragma once

#include <optional>
#include <string>
#include <vector>

#include "malcev/membership.hpp"
#include "malcev/models.hpp"
#include "malcev/presentation.hpp"

namespace malcev {

struct SliceCheck {
  int slice = 0;
  NCPoly ring_part;       // empty for slice 0
  ModuleVec module_part;
  std::optional<MembershipResult> ring;
  std::optional<MembershipResult> module;
};

struct EqualityResult {
  enum class Kind { Valid, Invalid, Unknown };
  Kind kind = Kind::Unknown;
  std::vector<SliceCheck> slices;
  /// Present for Invalid when a model was found.
  std::optional<Separation> separation;
  /// Invalid without a model: some slice was refuted by an exact
  /// homogeneous argument.
  bool homogeneous_refutation = false;
  int bound = 0;
};

std::string to_string(EqualityResult::Kind k);

/// s = t holds in the subvariety iff every slice difference lies in I + N.
/// Valid when every membership query says Yes; Invalid when a model of vp
/// separates s and t or some query is refuted exactly; Unknown otherwise.
/// Queries whose target exceeds `bound` run at the target's degree.
EqualityResult equal_in_variety(const Term& s, const Term& t,
                                const VarietyPresentation& vp, int bound,
                                const SearchParams& params = {});

}  // namespace malcev
