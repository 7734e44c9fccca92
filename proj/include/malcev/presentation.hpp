#pragma once

#include <vector>

#include "malcev/membership.hpp"
#include "malcev/ncpoly.hpp"
#include "malcev/normalize.hpp"
#include "malcev/sigterm.hpp"

namespace malcev {

/// A subvariety of the canonical variety, given by identities beyond the
/// ambient axioms (which are never stored).
struct VarietyPresentation {
  Signature sig;
  std::vector<Identity> ids;
};

/// Generators of the ideal I and of the submodule N. N always implicitly
/// contains I * M.
struct CongruenceData {
  std::vector<NCPoly> ideal_gens;
  std::vector<ModuleVec> submodule_gens;

  friend bool operator==(const CongruenceData&, const CongruenceData&) = default;
};

struct RingPresentation {
  int n = 0;
  std::vector<NCPoly> relations;
  friend bool operator==(const RingPresentation&, const RingPresentation&) = default;
};

struct ModulePresentation {
  int ell = 0;
  std::vector<ModuleVec> relations;
  RingPresentation over;
  friend bool operator==(const ModulePresentation&,
                         const ModulePresentation&) = default;
};

/// The defining axioms of the canonical variety for sig, in the variables
/// x1, x2, ... only: the Mal'cev laws, the medial law, idempotence of every
/// r_i, m commuting with every r_i and u_i, and m(u_i(x), u_i(y), y) = r_i(x, y).
std::vector<Identity> ambient_axioms(const Signature& sig);

/// Slices 0..k of both sides, k the largest variable index of the identity.
std::vector<Identity> slice_identity(const Identity& id);

/// Ring part sum_i q_i (r_i - 1) of v(x) - v(z) - x for v = sum_i q_i u_i.
NCPoly unary_defect(const ModuleVec& v, const Signature& sig);

/// Slice differences of every identity, split into ring and module parts.
/// The ideal is closed under unary substitution: for each module generator v
/// the defect unary_defect(v) is added as well, since v(z) = z entails
/// v(x) = x. Zero and repeated generators are dropped.
CongruenceData extract_congruence(const VarietyPresentation& vp);

RingPresentation present_ring(const VarietyPresentation& vp);
ModulePresentation present_module(const VarietyPresentation& vp);

/// One identity p(x1, z) = z per ring relation and v(z) = z per module
/// relation. Throws Error if mp.over != rp, SignatureError if ell > n.
VarietyPresentation synthesize_basis(const RingPresentation& rp,
                                     const ModulePresentation& mp);

/// Congruence generated by the relations of (rp, mp): ring relations plus
/// the defects of the module relations, and the module relations.
CongruenceData congruence_of(const RingPresentation& rp,
                             const ModulePresentation& mp);

struct DefectCheck {
  int generator = 0;  // index into submodule_gens
  NCPoly defect;
  MembershipResult result;
};

struct FicReport {
  bool ideal = true;            // (a) by construction
  bool submodule = true;        // (b) by construction
  bool zero_class = true;       // (c) by construction
  bool ideal_times_module = true;  // (d) by construction
  std::vector<DefectCheck> unary_shift;  // (e), one per submodule generator
  int bound = 0;

  bool all_yes() const;
};

/// (a)-(d) hold by the representation; (e) asks unary_defect(v) in I for
/// every submodule generator v. A bound below a defect's degree is raised to
/// that degree.
FicReport check_fic_conditions(const CongruenceData& cd, const Signature& sig,
                               int bound);
/// Bound 2 * max degree + 2 over all generators and defects.
int default_fic_bound(const CongruenceData& cd, const Signature& sig);

}  // namespace malcev
