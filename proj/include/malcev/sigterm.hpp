#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "malcev/error.hpp"

namespace malcev {

/// The canonical type: unary u_1..u_ell, binary r_1..r_n and the ternary m.
/// Every u_i is paired with r_i, so ell <= n.
struct Signature {
  int ell = 0;
  int n = 0;

  /// Throws SignatureError unless 0 <= ell <= n.
  static Signature make(int ell, int n);

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Immutable term over the canonical type in the variables x1, x2, ... and z.
///
/// Terms share structure; copies are cheap and equality is structural.
class Term {
 public:
  enum class Kind : std::uint8_t { Var, Z, U, R, M };

  static Term var(int index);
  static Term z();
  static Term u(int symbol, Term arg);
  static Term r(int symbol, Term first, Term second);
  static Term m(Term a, Term b, Term c);

  Kind kind() const { return node_->kind; }
  /// Variable index for Var, symbol index for U and R, 0 otherwise.
  int index() const { return node_->index; }
  std::size_t arity() const { return node_->args.size(); }
  const Term& arg(std::size_t i) const { return node_->args[i]; }

  /// Largest xi index occurring in the term, 0 if there is none.
  int max_var() const { return node_->max_var; }
  /// Atoms have depth 1.
  int depth() const { return node_->depth; }
  std::size_t size() const { return node_->size; }
  std::size_t hash() const { return node_->hash; }

  /// Largest u resp. r symbol index used, 0 if none.
  int max_unary() const { return node_->max_unary; }
  int max_binary() const { return node_->max_binary; }

  bool fits(const Signature& sig) const {
    return max_unary() <= sig.ell && max_binary() <= sig.n;
  }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    Kind kind;
    int index;
    std::vector<Term> args;
    int max_var;
    int depth;
    std::size_t size;
    std::size_t hash;
    int max_unary;
    int max_binary;
  };

  Term(Kind kind, int index, std::vector<Term> args);

  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

struct Identity {
  Term lhs;
  Term rhs;

  int max_var() const;
  friend bool operator==(const Identity&, const Identity&) = default;
};

/// One operation symbol of an arbitrary finite type. `family` marks a schema
/// f_0, f_1, ... standing for infinitely many symbols of the given arity.
struct GeneralSymbol {
  std::string name;
  int arity = 0;
  bool family = false;

  friend bool operator==(const GeneralSymbol&, const GeneralSymbol&) = default;
};

class GeneralSignature {
 public:
  GeneralSignature() = default;
  /// Throws SignatureError on duplicate names or negative arities.
  explicit GeneralSignature(std::vector<GeneralSymbol> symbols);

  const std::vector<GeneralSymbol>& symbols() const { return symbols_; }
  const GeneralSymbol* find(std::string_view name) const;
  bool is_finite() const;

 private:
  std::vector<GeneralSymbol> symbols_;
};

/// Parses the S-expression grammar
///   term := "z" | "x"INT | "(u" INT term ")" | "(r" INT term term ")"
///         | "(m" term term term ")"
/// Throws ParseError (with offset) or SignatureError (index out of bounds).
Term parse_term(std::string_view text, const Signature& sig);

std::string print_term(const Term& t);

/// Simultaneous replacement of every xi by bindings[i] and of z by z_image.
/// Throws Error if some variable of t has no binding.
Term substitute(const Term& t, const std::map<int, Term>& bindings,
                const Term& z_image);

/// Slice i of a term in x1..xk, z: i = 0 sends every variable to z; i >= 1
/// keeps xi (renamed x1) and sends every other variable to z.
/// Throws Error if i > k or k < t.max_var().
Term slice(const Term& t, int i, int k);
inline Term slice(const Term& t, int i) { return slice(t, i, t.max_var()); }

struct IdentityFile {
  Signature sig;
  std::vector<Identity> ids;
};

/// Identity file: a header line "sig l=<int> n=<int>" followed by lines
/// "<term> = <term>". Blank lines and lines starting with '#' are skipped.
IdentityFile parse_identity_file(std::string_view text);
std::string print_identity_file(const IdentityFile& file);

Identity parse_identity(std::string_view line, const Signature& sig);
std::string print_identity(const Identity& id);

}  // namespace malcev
