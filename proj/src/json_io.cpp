#include "malcev/json_io.hpp"

#include <limits>

namespace malcev {

Json integer_to_json(const mpz_class& v) {
  if (mpz_cmp_si(v.get_mpz_t(), std::numeric_limits<long>::min()) >= 0 &&
      mpz_cmp_si(v.get_mpz_t(), std::numeric_limits<long>::max()) <= 0)
    return static_cast<std::int64_t>(v.get_si());
  return v.get_str();
}

mpz_class integer_from_json(const Json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    mpz_class v;
    if (v.set_str(j.get<std::string>(), 10) != 0)
      throw Error("invalid integer string '" + j.get<std::string>() + "'");
    return v;
  }
  throw Error("expected an integer");
}

Json to_json(const NCPoly& p) {
  Json out = Json::array();
  for (const auto& [w, c] : p.terms())
    out.push_back(Json{{"word", w}, {"coeff", integer_to_json(c)}});
  return out;
}

NCPoly poly_from_json(const Json& j) {
  if (!j.is_array()) throw Error("polynomial must be a JSON list of terms");
  NCPoly p;
  for (const auto& t : j) {
    Word w = t.at("word").get<Word>();
    for (int g : w)
      if (g < 1) throw Error("generator indices must be >= 1");
    p.add_term(w, integer_from_json(t.at("coeff")));
  }
  return p;
}

Json to_json(const ModuleVec& v) {
  Json out = Json::array();
  for (const auto& s : v.slots()) out.push_back(to_json(s));
  return out;
}

ModuleVec module_vec_from_json(const Json& j, int ell) {
  if (!j.is_array() || static_cast<int>(j.size()) != ell)
    throw SignatureError("module vector must list exactly " + std::to_string(ell) +
                         " slots");
  std::vector<NCPoly> slots;
  for (const auto& s : j) slots.push_back(poly_from_json(s));
  return ModuleVec(std::move(slots));
}

Json to_json(const NormalForm& nf) {
  Json coeffs = Json::object();
  for (const auto& [i, p] : nf.coeffs) coeffs["x" + std::to_string(i)] = to_json(p);
  return Json{{"coeffs", coeffs},
              {"coeffs_text", [&] {
                 Json t = Json::object();
                 for (const auto& [i, p] : nf.coeffs)
                   t["x" + std::to_string(i)] = print_poly(p);
                 return t;
               }()},
              {"constant", to_json(nf.constant)},
              {"constant_text", print_module_vec(nf.constant)}};
}

namespace {

Json texts(const std::vector<NCPoly>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(print_poly(p));
  return out;
}

Json texts(const std::vector<ModuleVec>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(print_module_vec(v));
  return out;
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.dim; ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.dim; ++k) row.push_back(m.at(i, k));
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, int d) {
  if (!j.is_array() || static_cast<int>(j.size()) != d)
    throw Error("matrix must have " + std::to_string(d) + " rows");
  Matrix m = Matrix::zero(d);
  for (int i = 0; i < d; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != d)
      throw Error("matrix row must have " + std::to_string(d) + " entries");
    for (int k = 0; k < d; ++k) m.at(i, k) = row[static_cast<std::size_t>(k)].get<std::int64_t>();
  }
  return m;
}

}  // namespace

Json to_json(const RingPresentation& rp) {
  Json rels = Json::array();
  for (const auto& p : rp.relations) rels.push_back(to_json(p));
  return Json{{"n", rp.n}, {"relations", rels}, {"relations_text", texts(rp.relations)}};
}

Json to_json(const ModulePresentation& mp) {
  Json rels = Json::array();
  for (const auto& v : mp.relations) rels.push_back(to_json(v));
  return Json{{"ell", mp.ell},
              {"relations", rels},
              {"relations_text", texts(mp.relations)},
              {"over", to_json(mp.over)}};
}

RingPresentation ring_presentation_from_json(const Json& j) {
  RingPresentation rp;
  rp.n = j.at("n").get<int>();
  if (rp.n < 0) throw SignatureError("n must be non-negative");
  for (const auto& r : j.at("relations")) {
    NCPoly p = poly_from_json(r);
    if (p.max_generator() > rp.n)
      throw SignatureError("ring relation uses a generator beyond n");
    rp.relations.push_back(std::move(p));
  }
  return rp;
}

ModulePresentation module_presentation_from_json(const Json& j,
                                                 const RingPresentation& over) {
  ModulePresentation mp;
  mp.ell = j.at("ell").get<int>();
  if (mp.ell < 0) throw SignatureError("ell must be non-negative");
  mp.over = j.contains("over") ? ring_presentation_from_json(j.at("over")) : over;
  for (const auto& r : j.at("relations")) {
    ModuleVec v = module_vec_from_json(r, mp.ell);
    if (v.max_generator() > over.n)
      throw SignatureError("module relation uses a ring generator beyond n");
    mp.relations.push_back(std::move(v));
  }
  return mp;
}

Json to_json(const CertificateEntry& e) {
  return Json{{"kind", e.kind == CertificateEntry::Kind::Ideal ? "ideal" : "module"},
              {"left", e.left},
              {"generator", e.generator},
              {"right", e.right},
              {"slot", e.slot},
              {"multiplier", integer_to_json(e.multiplier)}};
}

Json to_json(const MembershipResult& r) {
  Json cert = Json::array();
  for (const auto& e : r.certificate) cert.push_back(to_json(e));
  return Json{{"verdict", to_string(r.verdict)},
              {"degree_used", r.degree_used},
              {"products", r.products},
              {"certificate", cert}};
}

Json to_json(const CongruenceData& cd) {
  Json ideal = Json::array();
  for (const auto& p : cd.ideal_gens) ideal.push_back(to_json(p));
  Json sub = Json::array();
  for (const auto& v : cd.submodule_gens) sub.push_back(to_json(v));
  return Json{{"ideal_gens", ideal},
              {"ideal_gens_text", texts(cd.ideal_gens)},
              {"submodule_gens", sub},
              {"submodule_gens_text", texts(cd.submodule_gens)}};
}

Json to_json(const FicReport& r) {
  Json shifts = Json::array();
  for (const auto& c : r.unary_shift)
    shifts.push_back(Json{{"generator", c.generator},
                          {"defect", print_poly(c.defect)},
                          {"verdict", to_string(c.result.verdict)},
                          {"degree_used", c.result.degree_used}});
  return Json{{"bound", r.bound},
              {"a_ideal", r.ideal ? "Yes (by construction)" : "No"},
              {"b_submodule", r.submodule ? "Yes (by construction)" : "No"},
              {"c_zero_class", r.zero_class ? "Yes (by construction)" : "No"},
              {"d_ideal_times_module", r.ideal_times_module ? "Yes (by construction)" : "No"},
              {"e_unary_shift", shifts}};
}

Json to_json(const FBReport& r) {
  return Json{{"finite_type", r.finite_type},
              {"conclusion", to_string(r.conclusion)},
              {"details", r.details},
              {"ring_presentation", to_json(r.ring)},
              {"module_presentation", to_json(r.module)},
              {"fic_conditions", to_json(r.fic)}};
}

Json to_json(const ChainReport& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps) {
    Json step{{"k", s.k},
              {"relation", print_poly(s.relation)},
              {"verdict", to_string(s.result.verdict)},
              {"degree_used", s.result.degree_used},
              {"skipped", s.skipped}};
    steps.push_back(std::move(step));
  }
  return Json{{"strict", r.strict},
              {"collapse_at", r.collapse_at ? Json(*r.collapse_at) : Json(nullptr)},
              {"summary", r.summary},
              {"steps", steps}};
}

Json to_json(const AffineModel& m) {
  Json r = Json::array();
  for (const auto& a : m.r_mats()) r.push_back(matrix_json(a));
  Json u = Json::array();
  for (int i = 1; i <= static_cast<int>(m.u_shifts().size()); ++i)
    u.push_back(Json::array(
        {matrix_json(m.u_matrix(i)), m.u_shifts()[static_cast<std::size_t>(i - 1)]}));
  return Json{{"q", m.q()}, {"d", m.dim()}, {"r", r}, {"u", u}};
}

AffineModel affine_model_from_json(const Json& j) {
  const std::int64_t q = j.at("q").get<std::int64_t>();
  const int d = j.at("d").get<int>();
  if (d < 1) throw Error("model dimension must be >= 1");
  std::vector<Matrix> mats;
  for (const auto& m : j.at("r")) mats.push_back(matrix_from_json(m, d));
  std::vector<Vec> shifts;
  std::size_t i = 0;
  for (const auto& pair : j.value("u", Json::array())) {
    if (!pair.is_array() || pair.size() != 2)
      throw Error("each u entry must be [matrix, vector]");
    if (i >= mats.size()) throw SignatureError("more u maps than r matrices");
    AffineModel probe(q, d, {matrix_from_json(pair[0], d)}, {});
    if (!(probe.r_mats()[0] == AffineModel(q, d, {mats[i]}, {}).r_mats()[0]))
      throw Error("matrix of u" + std::to_string(i + 1) + " must equal that of r" +
                  std::to_string(i + 1));
    shifts.push_back(pair[1].get<Vec>());
    ++i;
  }
  return AffineModel(q, d, std::move(mats), std::move(shifts));
}

Json to_json(const Assignment& a) {
  Json vars = Json::object();
  for (const auto& [i, v] : a.vars) vars["x" + std::to_string(i)] = v;
  return Json{{"z", a.z}, {"vars", vars}};
}

Json to_json(const EqualityResult& r) {
  Json slices = Json::array();
  for (const auto& s : r.slices) {
    Json j{{"slice", s.slice},
           {"ring_part", print_poly(s.ring_part)},
           {"module_part", print_module_vec(s.module_part)}};
    if (s.ring) j["ring_membership"] = to_json(*s.ring);
    if (s.module) j["module_membership"] = to_json(*s.module);
    slices.push_back(std::move(j));
  }
  Json out{{"verdict", to_string(r.kind)}, {"bound", r.bound}, {"slices", slices}};
  out["homogeneous_refutation"] = r.homogeneous_refutation;
  if (r.separation)
    out["separating_model"] =
        Json{{"model", to_json(r.separation->model)},
             {"assignment", to_json(r.separation->assignment)}};
  return out;
}

Json to_json(const InterpretationMap& im) {
  Json symbols = Json::array();
  for (const auto& s : im.symbols)
    symbols.push_back(
        Json{{"name", s.name}, {"arity", s.arity}, {"unary", s.unary}, {"binary", s.binary}});
  Json unary = Json::array();
  for (std::size_t j = 0; j < im.unary_terms.size(); ++j)
    unary.push_back(Json{{"symbol", "u" + std::to_string(j + 1)},
                         {"term", print_general_term(im.unary_terms[j])}});
  Json binary = Json::array();
  for (std::size_t j = 0; j < im.binary_terms.size(); ++j)
    binary.push_back(Json{{"symbol", "r" + std::to_string(j + 1)},
                          {"term", print_general_term(im.binary_terms[j])}});
  return Json{{"signature", Json{{"l", im.sig.ell}, {"n", im.sig.n}}},
              {"malcev_term", print_general_term(im.malcev_term)},
              {"symbols", symbols},
              {"unary_terms", unary},
              {"binary_terms", binary}};
}

Json to_json(const EquivalenceReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back(Json{{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return Json{{"all_passed", r.all_passed()},
              {"affine_models", r.affine_models},
              {"checks", checks}};
}

TableModel table_model_from_json(const Json& j) {
  TableModel a;
  a.size = j.at("size").get<int>();
  if (a.size < 1) throw Error("table model size must be >= 1");
  for (const auto& [name, values] : j.at("ops").items()) {
    std::vector<int> v = values.get<std::vector<int>>();
    for (int x : v)
      if (x < 0 || x >= a.size) throw Error("table entry out of range for '" + name + "'");
    a.ops.emplace(name, std::move(v));
  }
  return a;
}

}  // namespace malcev
