#pragma once

#include <json.hpp>

#include "malcev/equality.hpp"
#include "malcev/fbcheck.hpp"
#include "malcev/interp.hpp"

namespace malcev {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Integers that fit in 64 bits are numbers, larger ones decimal strings.
Json integer_to_json(const mpz_class& v);
mpz_class integer_from_json(const Json& j);

/// [{"word":[...], "coeff":...}, ...] in deg-lex order.
Json to_json(const NCPoly& p);
NCPoly poly_from_json(const Json& j);
/// One polynomial list per slot.
Json to_json(const ModuleVec& v);
ModuleVec module_vec_from_json(const Json& j, int ell);

Json to_json(const NormalForm& nf);
Json to_json(const RingPresentation& rp);
Json to_json(const ModulePresentation& mp);
RingPresentation ring_presentation_from_json(const Json& j);
/// The "over" field is optional and defaults to `over`.
ModulePresentation module_presentation_from_json(const Json& j,
                                                 const RingPresentation& over);

Json to_json(const CertificateEntry& e);
Json to_json(const MembershipResult& r);
Json to_json(const CongruenceData& cd);
Json to_json(const FicReport& r);
Json to_json(const FBReport& r);
Json to_json(const ChainReport& r);

/// {"q":..., "d":..., "r":[matrices], "u":[[matrix, vector], ...]}, matrices
/// as lists of rows.
Json to_json(const AffineModel& m);
AffineModel affine_model_from_json(const Json& j);
Json to_json(const Assignment& a);
Json to_json(const EqualityResult& r);

Json to_json(const InterpretationMap& im);
Json to_json(const EquivalenceReport& r);
/// {"size":N, "ops":{"name":[values...]}}
TableModel table_model_from_json(const Json& j);

}  // namespace malcev
