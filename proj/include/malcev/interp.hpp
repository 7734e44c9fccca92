#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "malcev/models.hpp"
#include "malcev/presentation.hpp"

namespace malcev {

/// Term over a GeneralSignature in the variables x1, x2, ...
struct GeneralTerm {
  std::string op;  // empty for variables
  int var = 0;
  std::vector<GeneralTerm> args;

  static GeneralTerm variable(int i);
  static GeneralTerm apply(std::string op, std::vector<GeneralTerm> args = {});
  bool is_var() const { return op.empty(); }
  int max_var() const;

  friend bool operator==(const GeneralTerm&, const GeneralTerm&) = default;
};

/// "x3", "(f t1 ... tk)"; a 0-ary symbol may be written bare or as "(c)".
/// Throws ParseError, or SignatureError for unknown symbols and arity
/// mismatches.
GeneralTerm parse_general_term(std::string_view text, const GeneralSignature& gs);
/// 0-ary symbols are printed bare.
std::string print_general_term(const GeneralTerm& t);
/// Replaces xi by bindings[i-1]. Throws Error for unbound variables.
GeneralTerm substitute(const GeneralTerm& t, const std::vector<GeneralTerm>& bindings);

struct GeneralIdentity {
  GeneralTerm lhs;
  GeneralTerm rhs;
};

struct GeneralPresentation {
  GeneralSignature gsig;
  GeneralTerm malcev_term;  // in x1, x2, x3
  std::vector<GeneralIdentity> ids;
};

/// Line-oriented format:
///   op <name> <arity>        one per symbol
///   family <name> <arity>    an infinite schema name_0, name_1, ...
///   malcev <term>
///   <term> = <term>
/// '#' starts a comment line. Symbol lines must precede terms.
GeneralPresentation parse_general_presentation(std::string_view text);
std::string print_general_presentation(const GeneralPresentation& gp);

/// Decomposition of one general symbol f of arity k:
///   D(f) = m(...m(m(t_1, t_0, t_2), t_0, t_3)..., t_0, t_k)
/// with t_0 = u_b(z) and t_i = m(r_{a_i}(x_i, z), z, u_b(z)).
struct SymbolImage {
  std::string name;
  int arity = 0;
  int unary = 0;            // b
  std::vector<int> binary;  // a_1..a_k
};

struct InterpretationMap {
  Signature sig;
  GeneralTerm malcev_term;
  std::vector<SymbolImage> symbols;
  /// E(u_j) as a term in x1.
  std::vector<GeneralTerm> unary_terms;
  /// E(r_j) as a term in x1 (the argument) and x2 (the base point).
  std::vector<GeneralTerm> binary_terms;

  const SymbolImage* find(std::string_view name) const;
};

struct Canonicalization {
  InterpretationMap map;
  VarietyPresentation vp;
};

/// Allocates u_j per distinct diagonal f(x, ..., x) and r_j per distinct
/// idempotent slice m(f(z..x..z), f(z..z), z), the first ell binary symbols
/// being the partners m(u_j(x), u_j(z), z) of the unary ones. Emits the
/// translated user identities, the translated Mal'cev laws, sigma = D(E(sigma))
/// for every canonical symbol and m = D(malcev term).
/// Throws Error for infinite types.
Canonicalization canonicalize(const GeneralPresentation& gp);

/// Homomorphic replacement of every general symbol by its decomposition.
/// Throws Error on unknown symbols.
Term translate_term(const InterpretationMap& im, const GeneralTerm& t);

/// Finite algebra of the general type. ops[f] lists f(a_1..a_k) in
/// lexicographic order of (a_1..a_k), a_1 most significant.
struct TableModel {
  int size = 0;
  std::map<std::string, std::vector<int>> ops;
};

/// Z_q with +, unary minus and 0 under the given names.
TableModel cyclic_group_model(int q, const std::string& plus = "+",
                              const std::string& minus = "-",
                              const std::string& zero = "0");

int eval_general(const TableModel& a, const GeneralSignature& gs,
                 const GeneralTerm& t, const std::vector<int>& env);

struct EquivalenceCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct EquivalenceReport {
  std::vector<EquivalenceCheck> checks;
  /// Affine models of the canonical basis found by the search.
  std::size_t affine_models = 0;
  bool all_passed() const;
};

/// Desk-scale semantic checks. On affine models of vp found by the search:
/// every translated identity holds. On each table model A of gp: the
/// Mal'cev laws, m commuting with every operation, the identities of gp,
/// every canonical axiom and identity of vp in A^E, and A^{ED} = A.
/// Assignments are enumerated when at most 10^6, otherwise sampled.
EquivalenceReport verify_equivalence(const InterpretationMap& im,
                                     const GeneralPresentation& gp,
                                     const VarietyPresentation& vp,
                                     const SearchParams& params,
                                     const std::vector<TableModel>& tables);

}  // namespace malcev
