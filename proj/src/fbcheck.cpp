#include "malcev/fbcheck.hpp"

#include <algorithm>

namespace malcev {

std::string to_string(Conclusion c) {
  switch (c) {
    case Conclusion::FinitelyBased:
      return "FinitelyBased";
    case Conclusion::NotFinitelyBased:
      return "NotFinitelyBased";
    case Conclusion::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

FBReport check_finite_basis(const VarietyPresentation& vp,
                            std::optional<int> bound) {
  FBReport report;
  CongruenceData cd = extract_congruence(vp);
  report.ring = {vp.sig.n, cd.ideal_gens};
  report.module = {vp.sig.ell, cd.submodule_gens, report.ring};
  report.fic = check_fic_conditions(cd, vp.sig,
                                    bound ? *bound : default_fic_bound(cd, vp.sig));
  if (report.fic.all_yes()) {
    report.conclusion = Conclusion::FinitelyBased;
    report.details = "finite basis of " + std::to_string(vp.ids.size()) +
                     " identities gives a ring presentation with " +
                     std::to_string(report.ring.relations.size()) +
                     " relations and a module presentation with " +
                     std::to_string(report.module.relations.size()) + " relations";
  } else {
    report.conclusion = Conclusion::Inconclusive;
    report.details = "unary-shift condition not confirmed at bound " +
                     std::to_string(report.fic.bound);
  }
  return report;
}

TypeVerdict check_infinite_type(const GeneralSignature& gs) {
  for (const auto& s : gs.symbols())
    if (s.family)
      return {false, "infinite type: symbol family " + s.name + "_i of arity " +
                         std::to_string(s.arity)};
  return {true, "finite type, proceed to check-fb"};
}

std::optional<RelationSchema> builtin_schema(const std::string& name) {
  if (name == "xyx")
    return RelationSchema([](int k) {
      Word w{1};
      w.insert(w.end(), static_cast<std::size_t>(k), 2);
      w.push_back(1);
      return NCPoly::monomial(std::move(w));
    });
  if (name == "pow")
    return RelationSchema([](int k) {
      return NCPoly::monomial(Word(static_cast<std::size_t>(k), 1));
    });
  if (name == "const")
    return RelationSchema([](int) { return NCPoly::generator(1); });
  return std::nullopt;
}

RelationSchema list_schema(std::vector<NCPoly> members) {
  return [members = std::move(members)](int k) {
    if (k < 1 || k > static_cast<int>(members.size()))
      throw Error("relation family has no member " + std::to_string(k));
    return members[static_cast<std::size_t>(k - 1)];
  };
}

ChainReport witness_ascending_chain(const RelationSchema& schema, int k_max,
                                    int bound) {
  if (k_max < 0) throw Error("k_max must be non-negative");
  ChainReport report;
  std::vector<NCPoly> prefix;
  bool strict = true;
  for (int k = 0; k <= k_max; ++k) {
    ChainStep step;
    step.k = k;
    step.relation = schema(k + 1);
    if (step.relation.degree() > bound) {
      step.skipped = true;
      step.result.verdict = Verdict::NotAtBound;
      step.result.degree_used = bound;
    } else {
      step.result = ideal_member(step.relation, prefix, bound);
    }
    if (step.result.verdict == Verdict::Yes && !report.collapse_at)
      report.collapse_at = k + 1;
    strict = strict && step.result.verdict == Verdict::NoHomogeneous;
    prefix.push_back(step.relation);
    report.steps.push_back(std::move(step));
  }
  report.strict = strict;
  if (strict)
    report.summary = "strict chain: no finite subfamily suffices up to k_max = " +
                     std::to_string(k_max) +
                     " (evidence for, not proof of, non-finite generation)";
  else if (report.collapse_at)
    report.summary = "chain collapses: relation " + std::to_string(*report.collapse_at) +
                     " lies in the ideal of its predecessors";
  else
    report.summary = "inconclusive: some steps not refuted exactly at bound " +
                     std::to_string(bound);
  return report;
}

}  // namespace malcev
