#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "malcev/ncpoly.hpp"

namespace malcev {

enum class Verdict {
  Yes,
  /// Exact refutation: target and all generators are homogeneous, so the
  /// single-degree integer system decides membership.
  NoHomogeneous,
  /// No representation with cofactors inside the degree bound.
  NotAtBound,
};

std::string to_string(Verdict v);

/// One summand multiplier * left * g * right of a membership certificate.
/// For ring membership `slot` is 0 and `generator` indexes the ideal
/// generators. For submodule membership, kind Module means
/// multiplier * left * mod_gens[generator] (right is empty) and kind Ideal
/// means (multiplier * left * ideal_gens[generator] * right) * u_slot.
struct CertificateEntry {
  enum class Kind { Ideal, Module };
  Kind kind = Kind::Ideal;
  Word left;
  int generator = 0;
  Word right;
  int slot = 0;
  mpz_class multiplier;

  friend bool operator==(const CertificateEntry&,
                         const CertificateEntry&) = default;
};

struct MembershipResult {
  Verdict verdict = Verdict::NotAtBound;
  std::vector<CertificateEntry> certificate;  // nonempty only for Yes
  int degree_used = 0;
  /// Number of cofactor products in the last linear system solved.
  std::size_t products = 0;
};

struct MembershipOptions {
  /// Abort a single degree level when the pruned product set grows beyond
  /// this many elements; the verdict is then NotAtBound.
  std::size_t max_products = 400000;
};

/// Bounded two-sided ideal membership in Z<r_1..r_n>.
///
/// Searches target = sum c * (left * g * right) with
/// |left| + |right| + deg(g) <= bound, c integral. Levels are tried from
/// deg(target) up to bound and the first success is returned. Only products
/// connected to the target's monomials (through shared monomials) are
/// generated; any integral solution restricts to that set.
/// Throws Error if bound < deg(target).
MembershipResult ideal_member(const NCPoly& target, std::span<const NCPoly> gens,
                              int bound, const MembershipOptions& opts = {});

/// Bounded membership of target in N = R * mod_gens + I * M, where I is the
/// ideal generated by ideal_gens and M the free module of dimension
/// target.ell(). Same verdict semantics as ideal_member.
MembershipResult submodule_member(const ModuleVec& target,
                                  std::span<const ModuleVec> mod_gens,
                                  std::span<const NCPoly> ideal_gens, int bound,
                                  const MembershipOptions& opts = {});

/// Re-expands a certificate through ring arithmetic.
NCPoly expand_certificate(std::span<const CertificateEntry> cert,
                          std::span<const NCPoly> gens);
ModuleVec expand_certificate(std::span<const CertificateEntry> cert,
                             std::span<const ModuleVec> mod_gens,
                             std::span<const NCPoly> ideal_gens, int ell);

/// 2 * (largest degree among the inputs) + 2.
int default_bound(const NCPoly& target, std::span<const NCPoly> gens);
int default_bound(const ModuleVec& target, std::span<const ModuleVec> mod_gens,
                  std::span<const NCPoly> ideal_gens);

}  // namespace malcev
