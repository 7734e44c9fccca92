#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "malcev/presentation.hpp"

namespace malcev {

enum class Conclusion { FinitelyBased, NotFinitelyBased, Inconclusive };
std::string to_string(Conclusion c);

struct FBReport {
  bool finite_type = true;
  RingPresentation ring;
  ModulePresentation module;
  FicReport fic;
  Conclusion conclusion = Conclusion::Inconclusive;
  std::string details;
};

/// A finite basis yields finite presentations of the ring and the module.
/// The conclusion is FinitelyBased unless the unary-shift condition fails
/// for some extracted generator, which would indicate an inconsistent
/// extraction and is reported as Inconclusive.
FBReport check_finite_basis(const VarietyPresentation& vp,
                            std::optional<int> bound = std::nullopt);

struct TypeVerdict {
  bool finite = true;
  std::string reason;
};

/// A signature with an infinite symbol family cannot be finitely based.
TypeVerdict check_infinite_type(const GeneralSignature& gs);

/// Member k of an indexed relation family, k >= 1.
using RelationSchema = std::function<NCPoly(int)>;

/// r1 r2^k r1, r1^k and the constant r1.
std::optional<RelationSchema> builtin_schema(const std::string& name);
/// Family given as an explicit list; member k is list[k-1].
RelationSchema list_schema(std::vector<NCPoly> members);

struct ChainStep {
  int k = 0;  // relation k+1 tested against relations 1..k
  NCPoly relation;
  MembershipResult result;
  bool skipped = false;  // bound below the relation's degree
};

struct ChainReport {
  std::vector<ChainStep> steps;
  /// Every step refuted exactly: no finite subfamily up to k_max suffices.
  bool strict = false;
  /// Index of the first relation found inside the ideal of its predecessors.
  std::optional<int> collapse_at;
  std::string summary;
};

/// For k = 0..k_max, decides whether relation k+1 lies in the ideal of
/// relations 1..k at the given bound.
ChainReport witness_ascending_chain(const RelationSchema& schema, int k_max,
                                    int bound);

}  // namespace malcev
